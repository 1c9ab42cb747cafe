#pragma once
// Cochains hom(V^k, V) and hom(Lambda^k V, V), arity-indexed families of them,
// the Gerstenhaber and exterior brackets, the modified bracket and the
// differential induced by a structure map.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infalg/graded.hpp"
#include "infalg/linear.hpp"
#include "infalg/scalar.hpp"

namespace infalg {

enum class Flavor { tensor, exterior };

inline std::string to_string(Flavor f) { return f == Flavor::tensor ? "tensor" : "exterior"; }

/// Basis tuples on which a cochain of the given flavor and arity is determined.
inline std::vector<std::vector<int>> domain_tuples(const GradedSpace& space, Flavor flavor, int arity) {
  return flavor == Flavor::tensor ? tensor_tuples(space.dim(), arity) : exterior_tuples(space, arity);
}

/// A homogeneous multilinear map, stored on basis tuples (canonical tuples for
/// the exterior flavor). The zero cochain has an empty table.
template <Field K>
class Cochain {
 public:
  using Table = std::map<std::vector<int>, SparseVec<K>>;

  Cochain() = default;
  Cochain(SpacePtr space, Flavor flavor, int arity, Parity parity)
      : space_(std::move(space)), flavor_(flavor), arity_(arity), parity_(parity) {
    if (!space_) throw std::invalid_argument("cochain without a space");
    if (arity_ < 1) throw std::invalid_argument("cochain arity must be >= 1");
  }

  [[nodiscard]] const SpacePtr& space() const { return space_; }
  [[nodiscard]] Flavor flavor() const { return flavor_; }
  [[nodiscard]] int arity() const { return arity_; }
  [[nodiscard]] Parity parity() const { return parity_; }
  [[nodiscard]] Bidegree bidegree() const { return {parity_, arity_ - 1}; }
  [[nodiscard]] Parity good_parity() const { return bidegree().total(); }
  [[nodiscard]] const Table& table() const { return table_; }
  [[nodiscard]] bool is_zero() const { return table_.empty(); }

  /// Adds coeff * e_out at args. Exterior args are canonicalized (sign folded in).
  void add(const std::vector<int>& args, int out, const K& coeff) {
    if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("cochain: arity mismatch");
    if (out < 0 || out >= space_->dim()) throw std::out_of_range("cochain: output index out of range");
    if (coeff.is_zero()) return;
    if (space_->parity(out) != parity_ + space_->parity_of(args))
      throw std::invalid_argument("cochain: value parity violates homogeneity");
    std::vector<int> key = args;
    K c = coeff;
    if (flavor_ == Flavor::exterior) {
      auto w = canonicalize_exterior(*space_, args);
      if (!w) return;
      key = std::move(w->tuple);
      if (w->sign < 0) c = -c;
    }
    auto& slot = table_[key];
    add_to(slot, out, c);
    if (slot.empty()) table_.erase(key);
  }

  void add(const std::vector<int>& args, const SparseVec<K>& value, const K& scale = K(1)) {
    for (const auto& [o, c] : value) add(args, o, c * scale);
  }

  /// Stores a value at an already-canonical tuple, skipping sign folding.
  void set_canonical(const std::vector<int>& args, SparseVec<K> value) {
    if (value.empty()) {
      table_.erase(args);
      return;
    }
    table_[args] = std::move(value);
  }

  /// Value on a tuple of basis indices.
  [[nodiscard]] SparseVec<K> eval_basis(const std::vector<int>& args) const {
    if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("cochain: arity mismatch in evaluation");
    if (flavor_ == Flavor::tensor) {
      auto it = table_.find(args);
      return it == table_.end() ? SparseVec<K>{} : it->second;
    }
    auto w = canonicalize_exterior(*space_, args);
    if (!w) return {};
    auto it = table_.find(w->tuple);
    if (it == table_.end()) return {};
    return w->sign < 0 ? scaled(it->second, K(-1)) : it->second;
  }

  /// Multilinear evaluation on sparse arguments (scalars are even, so no signs).
  [[nodiscard]] SparseVec<K> eval(const std::vector<SparseVec<K>>& args) const {
    if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("cochain: arity mismatch in evaluation");
    SparseVec<K> out;
    std::vector<int> idx(arity_);
    auto rec = [&](auto&& self, int pos, const K& coeff) -> void {
      if (pos == arity_) {
        axpy(out, coeff, eval_basis(idx));
        return;
      }
      for (const auto& [i, c] : args[pos]) {
        idx[pos] = i;
        self(self, pos + 1, coeff * c);
      }
    };
    rec(rec, 0, K(1));
    return out;
  }

  Cochain& operator+=(const Cochain& o) {
    require_compatible(o);
    for (const auto& [args, v] : o.table_) {
      auto& slot = table_[args];
      axpy(slot, K(1), v);
      if (slot.empty()) table_.erase(args);
    }
    return *this;
  }
  Cochain& operator-=(const Cochain& o) { return *this += o * K(-1); }
  Cochain& operator*=(const K& s) {
    if (s.is_zero()) table_.clear();
    for (auto& [args, v] : table_)
      for (auto& [o, c] : v) c *= s;
    return *this;
  }
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(Cochain a, const K& s) { return a *= s; }
  friend Cochain operator*(const K& s, Cochain a) { return a *= s; }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.flavor_ == b.flavor_ && a.arity_ == b.arity_ && a.parity_ == b.parity_ && a.table_ == b.table_;
  }

  [[nodiscard]] bool same_shape(const Cochain& o) const {
    return flavor_ == o.flavor_ && arity_ == o.arity_ && parity_ == o.parity_;
  }

 private:
  void require_compatible(const Cochain& o) const {
    if (!same_shape(o)) throw std::invalid_argument("cochain arithmetic on differently shaped cochains");
  }

  SpacePtr space_;
  Flavor flavor_ = Flavor::tensor;
  int arity_ = 1;
  Parity parity_;
  Table table_;
};

/// An arity-indexed family of cochains (one component per arity, each of its own
/// internal parity). Structure maps, deformation orders and alpha values are families.
template <Field K>
class CochainFamily {
 public:
  CochainFamily() = default;
  CochainFamily(SpacePtr space, Flavor flavor) : space_(std::move(space)), flavor_(flavor) {}

  [[nodiscard]] const SpacePtr& space() const { return space_; }
  [[nodiscard]] Flavor flavor() const { return flavor_; }
  [[nodiscard]] const std::map<int, Cochain<K>>& components() const { return components_; }

  void set(Cochain<K> c) {
    if (c.flavor() != flavor_) throw std::invalid_argument("family: flavor mismatch");
    int k = c.arity();
    components_.insert_or_assign(k, std::move(c));
  }
  /// Adds c into the component of its arity.
  void accumulate(const Cochain<K>& c) {
    if (c.flavor() != flavor_) throw std::invalid_argument("family: flavor mismatch");
    auto it = components_.find(c.arity());
    if (it == components_.end()) components_.emplace(c.arity(), c);
    else it->second += c;
  }
  [[nodiscard]] const Cochain<K>* find(int arity) const {
    auto it = components_.find(arity);
    return it == components_.end() ? nullptr : &it->second;
  }
  [[nodiscard]] int max_arity() const { return components_.empty() ? 0 : components_.rbegin()->first; }
  [[nodiscard]] bool is_zero() const {
    for (const auto& [k, c] : components_)
      if (!c.is_zero()) return false;
    return true;
  }
  /// Drops components whose table is empty.
  [[nodiscard]] CochainFamily pruned() const {
    CochainFamily out(space_, flavor_);
    for (const auto& [k, c] : components_)
      if (!c.is_zero()) out.components_.emplace(k, c);
    return out;
  }
  [[nodiscard]] CochainFamily truncated(int cap) const {
    CochainFamily out(space_, flavor_);
    for (const auto& [k, c] : components_)
      if (k <= cap) out.components_.emplace(k, c);
    return out;
  }

  CochainFamily& operator+=(const CochainFamily& o) {
    for (const auto& [k, c] : o.components_) accumulate(c);
    return *this;
  }
  CochainFamily& operator*=(const K& s) {
    for (auto& [k, c] : components_) c *= s;
    return *this;
  }
  friend CochainFamily operator+(CochainFamily a, const CochainFamily& b) { return a += b; }
  friend CochainFamily operator*(CochainFamily a, const K& s) { return a *= s; }
  friend CochainFamily operator-(CochainFamily a, const CochainFamily& b) { return a += b * K(-1); }

  /// Equality ignoring zero components.
  friend bool operator==(const CochainFamily& a, const CochainFamily& b) {
    auto pa = a.pruned(), pb = b.pruned();
    return pa.flavor_ == pb.flavor_ && pa.components_ == pb.components_;
  }

 private:
  SpacePtr space_;
  Flavor flavor_ = Flavor::tensor;
  std::map<int, Cochain<K>> components_;
};

template <Field K>
using StructureMap = CochainFamily<K>;

/// Every component odd in the good grading: e(d_k) + k - 1 odd.
template <Field K>
bool is_odd_structure(const StructureMap<K>& d) {
  for (const auto& [k, c] : d.components())
    if (!c.good_parity().odd()) return false;
  return true;
}

template <Field K>
Cochain<K> zero_like(const Cochain<K>& c) {
  return Cochain<K>(c.space(), c.flavor(), c.arity(), c.parity());
}

/// Multilinear evaluation on homogeneous Vectors.
template <Field K>
Vector<K> eval_cochain(const Cochain<K>& phi, const std::vector<Vector<K>>& args) {
  if (static_cast<int>(args.size()) != phi.arity()) throw std::invalid_argument("eval_cochain: arity mismatch");
  std::vector<SparseVec<K>> raw;
  raw.reserve(args.size());
  for (const auto& a : args) {
    if (!a.homogeneous_parity()) throw std::invalid_argument("eval_cochain: non-homogeneous argument");
    raw.push_back(a.coeffs);
  }
  return Vector<K>{phi.space(), phi.eval(raw)};
}

namespace detail {

template <Field K>
std::vector<SparseVec<K>> unit_args(const std::vector<int>& idx) {
  std::vector<SparseVec<K>> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(SparseVec<K>{{i, K(1)}});
  return out;
}

// outer(v_0..v_{j-1}, inner(v_j..v_{j+l-1}), v_{j+l}..) on basis indices.
template <Field K>
SparseVec<K> insert_at(const Cochain<K>& outer, const Cochain<K>& inner, int j, const std::vector<int>& v) {
  const int l = inner.arity();
  std::vector<int> inner_args(v.begin() + j, v.begin() + j + l);
  SparseVec<K> mid = inner.eval_basis(inner_args);
  if (mid.empty()) return {};
  std::vector<SparseVec<K>> args;
  args.reserve(outer.arity());
  for (int i = 0; i < j; ++i) args.push_back(SparseVec<K>{{v[i], K(1)}});
  args.push_back(std::move(mid));
  for (std::size_t i = j + l; i < v.size(); ++i) args.push_back(SparseVec<K>{{v[i], K(1)}});
  return outer.eval(args);
}

// Sum over sigma in sh(l, n-l) of (-1)^sigma eps(sigma) outer(inner(v_sigma(first l)), v_sigma(rest)).
template <Field K>
SparseVec<K> shuffle_insert(const Cochain<K>& outer, const Cochain<K>& inner, const std::vector<int>& v) {
  const GradedSpace& sp = *outer.space();
  const int n = static_cast<int>(v.size());
  const int l = inner.arity();
  std::vector<Parity> par(n);
  for (int i = 0; i < n; ++i) par[i] = sp.parity(v[i]);
  SparseVec<K> out;
  std::vector<int> perm(n);
  for (const auto& s : unshuffles(l, n - l)) {
    for (int i = 0; i < n; ++i) perm[i] = v[s[i]];
    SparseVec<K> term = insert_at(outer, inner, 0, perm);
    axpy(out, K(exterior_sign(s, par)), term);
  }
  return out;
}

template <Field K>
void require_same_flavor(const Cochain<K>& a, const Cochain<K>& b) {
  if (a.flavor() != b.flavor()) throw std::invalid_argument("bracket: flavor mismatch");
  if (a.space() != b.space() && !(*a.space() == *b.space())) throw std::invalid_argument("bracket: space mismatch");
}

}  // namespace detail

/// Gerstenhaber bracket on hom(T(V), V).
template <Field K>
Cochain<K> bracket_tensor(const Cochain<K>& phi, const Cochain<K>& psi) {
  detail::require_same_flavor(phi, psi);
  if (phi.flavor() != Flavor::tensor) throw std::invalid_argument("bracket_tensor: exterior cochain");
  const int k = phi.arity(), l = psi.arity(), n = k + l - 1;
  const int ep = phi.parity().value(), eq = psi.parity().value();
  const GradedSpace& sp = *phi.space();
  Cochain<K> out(phi.space(), Flavor::tensor, n, phi.parity() + psi.parity());
  if (phi.is_zero() || psi.is_zero()) return out;
  const K second = sign_of<K>(1 + ep * eq + (k - 1) * (l - 1));
  for (const auto& v : tensor_tuples(sp.dim(), n)) {
    SparseVec<K> val;
    int prefix = 0;  // parity of v_1 + ... + v_j
    for (int j = 0; j < k; ++j) {
      axpy(val, sign_of<K>(eq * prefix + j * (l - 1)), detail::insert_at(phi, psi, j, v));
      prefix += sp.parity(v[j]).value();
    }
    prefix = 0;
    for (int j = 0; j < l; ++j) {
      axpy(val, second * sign_of<K>(ep * prefix + j * (k - 1)), detail::insert_at(psi, phi, j, v));
      prefix += sp.parity(v[j]).value();
    }
    out.set_canonical(v, std::move(val));
  }
  return out;
}

/// Bracket on hom(Lambda V, V) of coderivations in the usual grading.
template <Field K>
Cochain<K> bracket_exterior(const Cochain<K>& phi, const Cochain<K>& psi) {
  detail::require_same_flavor(phi, psi);
  if (phi.flavor() != Flavor::exterior) throw std::invalid_argument("bracket_exterior: tensor cochain");
  const int k = phi.arity(), l = psi.arity(), n = k + l - 1;
  const int ep = phi.parity().value(), eq = psi.parity().value();
  Cochain<K> out(phi.space(), Flavor::exterior, n, phi.parity() + psi.parity());
  if (phi.is_zero() || psi.is_zero()) return out;
  const K second = sign_of<K>(1 + ep * eq + (k - 1) * (l - 1));
  for (const auto& v : exterior_tuples(*phi.space(), n)) {
    SparseVec<K> val = detail::shuffle_insert(phi, psi, v);
    axpy(val, second, detail::shuffle_insert(psi, phi, v));
    out.set_canonical(v, std::move(val));
  }
  return out;
}

template <Field K>
Cochain<K> bracket(const Cochain<K>& phi, const Cochain<K>& psi) {
  return phi.flavor() == Flavor::tensor ? bracket_tensor(phi, psi) : bracket_exterior(phi, psi);
}

/// {phi, psi} = (-1)^{(k-1) e(psi)} [phi, psi].
template <Field K>
Cochain<K> modified_bracket(const Cochain<K>& phi, const Cochain<K>& psi) {
  Cochain<K> b = bracket(phi, psi);
  if (((phi.arity() - 1) * psi.parity().value()) % 2) b *= K(-1);
  return b;
}

/// Sum of {a_k, b_l} over all component pairs with k + l - 1 <= cap.
template <Field K>
CochainFamily<K> modified_bracket(const CochainFamily<K>& a, const CochainFamily<K>& b, int cap) {
  CochainFamily<K> out(a.space(), a.flavor());
  for (const auto& [k, x] : a.components())
    for (const auto& [l, y] : b.components())
      if (k + l - 1 <= cap) out.accumulate(modified_bracket(x, y));
  return out;
}

/// delta(phi) = {d, phi} = sum_k {d_k, phi}, one component per output arity <= cap.
template <Field K>
CochainFamily<K> differential(const StructureMap<K>& d, const Cochain<K>& phi, int cap) {
  if (d.flavor() != phi.flavor()) throw std::invalid_argument("differential: flavor mismatch");
  CochainFamily<K> out(phi.space(), phi.flavor());
  for (const auto& [k, dk] : d.components())
    if (k + phi.arity() - 1 <= cap) out.accumulate(modified_bracket(dk, phi));
  return out;
}

template <Field K>
CochainFamily<K> differential(const StructureMap<K>& d, const CochainFamily<K>& phi, int cap) {
  CochainFamily<K> out(phi.space(), phi.flavor());
  for (const auto& [l, c] : phi.components()) out += differential(d, c, cap);
  return out;
}

}  // namespace infalg

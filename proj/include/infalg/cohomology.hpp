#pragma once
// Cohomology of (C(V), delta) on finite, arity-truncated slices of the
// cochain complex, and coboundary solving.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "infalg/cochain.hpp"
#include "infalg/linear.hpp"

namespace infalg {

/// A homogeneous piece of C(V): cochains of one internal parity and one arity.
struct Slot {
  Parity parity;
  int arity = 1;

  [[nodiscard]] Parity good_parity() const { return parity + Parity(arity - 1); }
  friend bool operator==(const Slot&, const Slot&) = default;
};

inline std::string to_string(const Slot& s) {
  return std::string(s.parity.odd() ? "odd" : "even") + "/arity " + std::to_string(s.arity);
}

/// Slot of fixed good parity g at arity k.
inline Slot slot_with_good_parity(Parity g, int arity) { return {g + Parity(arity - 1), arity}; }

/// Coordinates for a direct sum of slots. The basis of one slot is the list of
/// elementary cochains (canonical args -> one output basis vector), ordered by
/// args and then by output index.
class ChainSpace {
 public:
  struct Elementary {
    std::vector<int> args;
    int out;
  };

  ChainSpace(SpacePtr space, Flavor flavor, std::vector<Slot> slots)
      : space_(std::move(space)), flavor_(flavor), slots_(std::move(slots)) {
    for (const auto& s : slots_) {
      for (const auto& t : slots_)
        if (&s != &t && s.arity == t.arity) throw std::invalid_argument("chain space: two slots share an arity");
      offsets_.push_back(dim_);
      std::vector<Elementary> b;
      for (const auto& args : domain_tuples(*space_, flavor_, s.arity))
        for (int o = 0; o < space_->dim(); ++o)
          if (space_->parity(o) == s.parity + space_->parity_of(args)) b.push_back({args, o});
      dim_ += static_cast<int>(b.size());
      bases_.push_back(std::move(b));
    }
  }

  [[nodiscard]] const SpacePtr& space() const { return space_; }
  [[nodiscard]] Flavor flavor() const { return flavor_; }
  [[nodiscard]] const std::vector<Slot>& slots() const { return slots_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int slot_dim(std::size_t i) const { return static_cast<int>(bases_.at(i).size()); }
  [[nodiscard]] const std::vector<Elementary>& basis(std::size_t i) const { return bases_.at(i); }

  [[nodiscard]] std::optional<std::size_t> slot_index(int arity) const {
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (slots_[i].arity == arity) return i;
    return std::nullopt;
  }

  /// Coordinates of c, which must lie in one of the slots (or be zero).
  template <Field K>
  void encode_into(const Cochain<K>& c, std::vector<K>& out) const {
    if (c.is_zero()) return;
    auto i = slot_index(c.arity());
    if (!i || slots_[*i].parity != c.parity())
      throw std::invalid_argument("chain space: cochain outside the slots (" + to_string(Slot{c.parity(), c.arity()}) + ")");
    const auto& b = bases_[*i];
    for (const auto& [args, v] : c.table())
      for (const auto& [o, coeff] : v) {
        auto it = std::lower_bound(b.begin(), b.end(), std::make_pair(args, o), [](const Elementary& e, const auto& key) {
          return std::tie(e.args, e.out) < std::tie(key.first, key.second);
        });
        out[offsets_[*i] + (it - b.begin())] += coeff;
      }
  }

  template <Field K>
  [[nodiscard]] std::vector<K> encode(const CochainFamily<K>& f) const {
    std::vector<K> out(dim_, K(0));
    for (const auto& [k, c] : f.components()) encode_into(c, out);
    return out;
  }
  template <Field K>
  [[nodiscard]] std::vector<K> encode(const Cochain<K>& c) const {
    std::vector<K> out(dim_, K(0));
    encode_into(c, out);
    return out;
  }

  template <Field K>
  [[nodiscard]] CochainFamily<K> decode(const std::vector<K>& x) const {
    if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("chain space: coordinate length mismatch");
    CochainFamily<K> f(space_, flavor_);
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      Cochain<K> c(space_, flavor_, slots_[i].arity, slots_[i].parity);
      for (std::size_t j = 0; j < bases_[i].size(); ++j) {
        const K& v = x[offsets_[i] + j];
        if (!v.is_zero()) c.add(bases_[i][j].args, bases_[i][j].out, v);
      }
      f.set(std::move(c));
    }
    return f.pruned();
  }

  /// The unit cochain for coordinate index j.
  template <Field K>
  [[nodiscard]] Cochain<K> elementary(int j) const {
    for (std::size_t i = slots_.size(); i-- > 0;)
      if (j >= offsets_[i]) {
        const auto& e = bases_[i].at(j - offsets_[i]);
        Cochain<K> c(space_, flavor_, slots_[i].arity, slots_[i].parity);
        c.add(e.args, e.out, K(1));
        return c;
      }
    throw std::out_of_range("chain space: coordinate out of range");
  }

 private:
  SpacePtr space_;
  Flavor flavor_;
  std::vector<Slot> slots_;
  std::vector<std::vector<Elementary>> bases_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

/// All slots of good parity g with arity 1..cap.
inline ChainSpace total_space(SpacePtr space, Flavor flavor, Parity g, int cap) {
  std::vector<Slot> s;
  for (int k = 1; k <= cap; ++k) s.push_back(slot_with_good_parity(g, k));
  return ChainSpace(std::move(space), flavor, std::move(s));
}

/// Matrix of delta from src into tgt, truncated at the arity cap.
template <Field K>
Matrix<K> delta_matrix(const StructureMap<K>& d, const ChainSpace& src, const ChainSpace& tgt, int cap) {
  Matrix<K> m(tgt.dim(), src.dim());
  for (int j = 0; j < src.dim(); ++j) {
    auto col = tgt.encode(differential(d, src.elementary<K>(j), cap));
    for (int i = 0; i < tgt.dim(); ++i)
      if (!col[i].is_zero()) m.set(i, j, col[i]);
  }
  return m;
}

/// Slots that delta can reach from `slot` within the cap.
template <Field K>
ChainSpace delta_target(const StructureMap<K>& d, const Slot& slot, int cap) {
  std::vector<Slot> t;
  for (const auto& [k, dk] : d.components()) {
    Slot s{slot.parity + dk.parity(), slot.arity + k - 1};
    if (s.arity <= cap && std::find(t.begin(), t.end(), s) == t.end()) t.push_back(s);
  }
  std::sort(t.begin(), t.end(), [](const Slot& a, const Slot& b) { return a.arity < b.arity; });
  return ChainSpace(d.space(), d.flavor(), std::move(t));
}

template <Field K>
Matrix<K> delta_matrix(const StructureMap<K>& d, const Slot& slot, int cap) {
  if (slot.arity < 1 || slot.arity > cap) throw std::invalid_argument("delta_matrix: slot arity exceeds the arity cap");
  return delta_matrix(d, ChainSpace(d.space(), d.flavor(), {slot}), delta_target(d, slot, cap), cap);
}

/// Slots closer to the cap than (max component arity - 1): delta of a cochain
/// there loses components above the cap, so cocycle tests are truncation artifacts.
template <Field K>
bool boundary_unreliable(const StructureMap<K>& d, int arity, int cap) {
  int m = 0;
  for (const auto& [k, dk] : d.components())
    if (!dk.is_zero()) m = std::max(m, k);
  return m > 1 && arity + m - 1 > cap;
}

template <Field K>
struct CohomologyBasis {
  std::vector<Slot> slots;
  std::vector<CochainFamily<K>> representatives;
  std::vector<CochainFamily<K>> coboundaries;
  int cocycle_dim = 0;
  std::vector<Slot> unreliable;

  [[nodiscard]] int dim() const { return static_cast<int>(representatives.size()); }
  [[nodiscard]] bool boundary_unreliable() const { return !unreliable.empty(); }
};

namespace detail {

/// Row-reduced basis of the span of vectors (as the nonzero rows of an rref).
template <Field K>
std::vector<std::vector<K>> span_basis(const std::vector<std::vector<K>>& vecs, int dim) {
  if (vecs.empty()) return {};
  auto e = rref(Matrix<K>::from_rows(vecs));
  std::vector<std::vector<K>> out;
  for (const auto& row : e.rows) {
    if (row.empty()) continue;
    std::vector<K> v(dim, K(0));
    for (const auto& [c, x] : row) v[c] = x;
    out.push_back(std::move(v));
  }
  return out;
}

template <Field K>
std::vector<std::vector<K>> columns_times(const Matrix<K>& a, const std::vector<std::vector<K>>& xs) {
  std::vector<std::vector<K>> out;
  for (const auto& x : xs) out.push_back(a.apply(x));
  return out;
}

/// Embeds coordinates of `sub` into `super` (slots matched by arity).
inline std::vector<int> embedding(const ChainSpace& sub, const ChainSpace& super) {
  std::vector<int> map;
  for (std::size_t i = 0; i < sub.slots().size(); ++i) {
    auto j = super.slot_index(sub.slots()[i].arity);
    if (!j || super.slots()[*j].parity != sub.slots()[i].parity)
      throw std::invalid_argument("chain space embedding: slot missing");
    int off = 0;
    for (std::size_t t = 0; t < *j; ++t) off += super.slot_dim(t);
    for (int x = 0; x < sub.slot_dim(i); ++x) map.push_back(off + x);
  }
  return map;
}

}  // namespace detail

/// A cohomology computation: the domain D (slots of one good parity) and the
/// source S of coboundaries (slots of the opposite good parity). H = Z_D / (im delta|_S ∩ span D),
/// with delta truncated at the cap. Coordinates are kept for class extraction.
template <Field K>
class CohomologyComputation {
 public:
  CohomologyComputation(const StructureMap<K>& d, ChainSpace domain, ChainSpace source, int cap)
      : domain_(std::move(domain)), source_(std::move(source)) {
    Parity g = domain_.slots().empty() ? Parity(0) : domain_.slots().front().good_parity();
    for (const auto& s : domain_.slots())
      if (s.good_parity() != g) throw std::invalid_argument("cohomology: domain mixes good parities");
    for (const auto& s : source_.slots())
      if (s.good_parity() == g) throw std::invalid_argument("cohomology: source must have the opposite good parity");

    ChainSpace full = total_space(d.space(), d.flavor(), g, cap);
    ChainSpace next = total_space(d.space(), d.flavor(), g + Parity(1), cap);
    auto emb = detail::embedding(domain_, full);

    // cocycles
    auto z = kernel_basis(delta_matrix(d, domain_, next, cap));

    // coboundaries landing in span D: images B x with no component outside D
    auto b = delta_matrix(d, source_, full, cap);
    std::vector<bool> inside(full.dim(), false);
    for (int i : emb) inside[i] = true;
    Matrix<K> outside(full.dim(), source_.dim());
    for (const auto& [rc, v] : b.entries())
      if (!inside[rc.first]) outside.set(rc.first, rc.second, v);
    std::vector<std::vector<K>> bvecs;
    for (const auto& x : kernel_basis(outside)) {
      auto y = b.apply(x);
      std::vector<K> r(domain_.dim(), K(0));
      for (std::size_t i = 0; i < emb.size(); ++i) r[i] = y[emb[i]];
      bvecs.push_back(std::move(r));
    }
    bnd_ = detail::span_basis(bvecs, domain_.dim());

    // representatives: cocycle basis vectors independent of B, in order
    cocycle_dim_ = static_cast<int>(z.size());
    auto acc = bnd_;
    int r0 = static_cast<int>(acc.size());
    for (const auto& v : z) {
      acc.push_back(v);
      int r = acc.empty() ? 0 : rank(Matrix<K>::from_rows(acc));
      if (r > r0) {
        reps_.push_back(v);
        r0 = r;
      } else {
        acc.pop_back();
      }
    }
    for (const auto& s : domain_.slots())
      if (boundary_unreliable(d, s.arity, cap)) unreliable_.push_back(s);
  }

  [[nodiscard]] const ChainSpace& domain() const { return domain_; }
  [[nodiscard]] const ChainSpace& source() const { return source_; }

  [[nodiscard]] CohomologyBasis<K> basis() const {
    CohomologyBasis<K> out;
    out.slots = domain_.slots();
    for (const auto& v : reps_) out.representatives.push_back(domain_.decode(v));
    for (const auto& v : bnd_) out.coboundaries.push_back(domain_.decode(v));
    out.cocycle_dim = cocycle_dim_;
    out.unreliable = unreliable_;
    return out;
  }

  /// Coordinates of the class of a cocycle z (in span D) against the representatives.
  [[nodiscard]] std::vector<K> class_coordinates(const CochainFamily<K>& z) const {
    auto v = domain_.encode(z);
    std::vector<std::vector<K>> cols = reps_;
    cols.insert(cols.end(), bnd_.begin(), bnd_.end());
    Matrix<K> a(domain_.dim(), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < domain_.dim(); ++i)
        if (!cols[j][i].is_zero()) a.set(i, static_cast<int>(j), cols[j][i]);
    auto r = solve_linear(a, v);
    if (!r.solvable()) throw std::logic_error("class_coordinates: argument is not a cocycle in the domain");
    return std::vector<K>(r.solution->begin(), r.solution->begin() + reps_.size());
  }

  /// Cocycle with the given class coordinates: sum c_i rep_i.
  [[nodiscard]] CochainFamily<K> from_class(const std::vector<K>& coords) const {
    if (coords.size() != reps_.size()) throw std::invalid_argument("from_class: expected " + std::to_string(reps_.size()) + " coordinates");
    std::vector<K> v(domain_.dim(), K(0));
    for (std::size_t i = 0; i < reps_.size(); ++i)
      for (int j = 0; j < domain_.dim(); ++j) v[j] += coords[i] * reps_[i][j];
    return domain_.decode(v);
  }

 private:
  ChainSpace domain_, source_;
  std::vector<std::vector<K>> reps_, bnd_;
  int cocycle_dim_ = 0;
  std::vector<Slot> unreliable_;
};

/// Source slots for coboundaries into a domain: every slot of the opposite good parity up to the cap.
template <Field K>
ChainSpace coboundary_source(const StructureMap<K>& d, Parity domain_good_parity, int cap) {
  return total_space(d.space(), d.flavor(), domain_good_parity + Parity(1), cap);
}

template <Field K>
CohomologyBasis<K> cohomology(const StructureMap<K>& d, const Slot& slot, int cap) {
  if (slot.arity < 1 || slot.arity > cap) throw std::invalid_argument("cohomology: slot arity exceeds the arity cap");
  CohomologyComputation<K> c(d, ChainSpace(d.space(), d.flavor(), {slot}), coboundary_source(d, slot.good_parity(), cap), cap);
  return c.basis();
}

template <Field K>
struct CoboundarySolution {
  std::optional<CochainFamily<K>> phi;
  std::vector<K> class_coordinates;               // set when phi is absent
  std::vector<CochainFamily<K>> class_basis;      // the representatives the coordinates refer to
  std::vector<Slot> unreliable;

  [[nodiscard]] bool solved() const { return phi.has_value(); }
};

/// Solves delta(phi) = psi with phi in `source`. The right-hand side must be
/// delta-closed within the cap. On failure, returns the coordinates of [psi]
/// against the representatives of the cohomology on psi's slots.
template <Field K>
CoboundarySolution<K> solve_coboundary(const StructureMap<K>& d, const CochainFamily<K>& psi, int cap,
                                       std::optional<ChainSpace> source = std::nullopt) {
  auto pp = psi.pruned();
  std::optional<Parity> g;
  std::vector<Slot> slots;
  for (const auto& [k, c] : pp.components()) {
    if (k > cap) throw std::invalid_argument("solve_coboundary: right-hand side exceeds the arity cap");
    if (g && *g != c.good_parity()) throw std::invalid_argument("solve_coboundary: right-hand side is not homogeneous");
    g = c.good_parity();
    slots.push_back({c.parity(), k});
  }
  CoboundarySolution<K> out;
  if (!g) {
    out.phi = CochainFamily<K>(d.space(), d.flavor());
    return out;
  }
  if (!differential(d, pp, cap).is_zero()) throw std::logic_error("solve_coboundary: right-hand side is not delta-closed");
  ChainSpace src = source ? *source : coboundary_source(d, *g, cap);
  ChainSpace full = total_space(d.space(), d.flavor(), *g, cap);
  auto r = solve_linear(delta_matrix(d, src, full, cap), full.encode(pp));
  for (const auto& s : slots)
    if (boundary_unreliable(d, s.arity, cap)) out.unreliable.push_back(s);
  if (r.solvable()) {
    out.phi = src.decode(*r.solution);
    return out;
  }
  CohomologyComputation<K> h(d, ChainSpace(d.space(), d.flavor(), slots), std::move(src), cap);
  out.class_coordinates = h.class_coordinates(pp);
  out.class_basis = h.basis().representatives;
  return out;
}

template <Field K>
CoboundarySolution<K> solve_coboundary(const StructureMap<K>& d, const Cochain<K>& psi, int cap,
                                       std::optional<ChainSpace> source = std::nullopt) {
  CochainFamily<K> f(psi.space(), psi.flavor());
  f.set(psi);
  return solve_coboundary(d, f, cap, std::move(source));
}

}  // namespace infalg

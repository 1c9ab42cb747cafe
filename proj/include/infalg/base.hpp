#pragma once
// Deformations with a finite-dimensional graded commutative base S = k·1 ⊕ m:
// the S-linear operator tau on V⊗S, its dictionary with maps alpha: m* -> C(V),
// the two residuals, and the termwise identities relating them.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infalg/coalgebra.hpp"
#include "infalg/cochain.hpp"
#include "infalg/deformation.hpp"
#include "infalg/massey.hpp"
#include "infalg/structure.hpp"

namespace infalg {

struct BaseReport {
  std::vector<std::string> violations;
  std::optional<int> nilpotency;  // least r with m^r = 0
  [[nodiscard]] bool passed() const { return violations.empty(); }
};

/// The maximal ideal m with basis m_i and products m_i m_j = sum c_ij^k m_k.
/// The unitized basis of S puts 1 at index 0 and m_i at index i + 1.
template <Field K>
class BaseAlgebra {
 public:
  BaseAlgebra() = default;
  explicit BaseAlgebra(std::vector<BasisElement> m) : m_(std::move(m)) {}

  [[nodiscard]] int dim() const { return m_.dim(); }
  [[nodiscard]] const GradedSpace& m() const { return m_; }
  [[nodiscard]] const std::string& name(int i) const { return m_.name(i); }
  [[nodiscard]] Parity parity(int i) const { return m_.parity(i); }
  [[nodiscard]] int index(const std::string& n) const { return m_.index(n); }

  void add_product(int i, int j, int k, const K& c) {
    if (i < 0 || j < 0 || k < 0 || i >= dim() || j >= dim() || k >= dim())
      throw std::out_of_range("base: product index out of range");
    add_to(c_[{i, j}], k, c);
  }
  void add_product(const std::string& i, const std::string& j, const std::string& k, const K& c) {
    add_product(index(i), index(j), index(k), c);
  }

  [[nodiscard]] SparseVec<K> product(int i, int j) const {
    auto it = c_.find({i, j});
    return it == c_.end() ? SparseVec<K>{} : it->second;
  }
  [[nodiscard]] K constant(int i, int j, int k) const {
    auto p = product(i, j);
    auto it = p.find(k);
    return it == p.end() ? K(0) : it->second;
  }
  [[nodiscard]] const std::map<std::pair<int, int>, SparseVec<K>>& constants() const { return c_; }

  [[nodiscard]] int s_dim() const { return dim() + 1; }
  [[nodiscard]] Parity s_parity(int a) const { return a == 0 ? Parity(0) : parity(a - 1); }
  [[nodiscard]] std::string s_name(int a) const { return a == 0 ? "1" : name(a - 1); }
  [[nodiscard]] SparseVec<K> s_product(int a, int b) const {
    if (a == 0) return {{b, K(1)}};
    if (b == 0) return {{a, K(1)}};
    SparseVec<K> out;
    for (const auto& [k, c] : product(a - 1, b - 1)) out.emplace(k + 1, c);
    return out;
  }
  [[nodiscard]] SparseVec<K> s_multiply(const SparseVec<K>& x, const SparseVec<K>& y) const {
    SparseVec<K> out;
    for (const auto& [a, ca] : x)
      for (const auto& [b, cb] : y) axpy(out, ca * cb, s_product(a, b));
    return out;
  }

  /// Graded commutativity, associativity and nilpotency of m.
  [[nodiscard]] BaseReport check() const {
    BaseReport rep;
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) {
        for (const auto& [k, c] : product(i, j))
          if (parity(k) != parity(i) + parity(j)) {
            rep.violations.push_back("degree: " + name(i) + "·" + name(j) + " has a term of the wrong parity");
            break;
          }
        if (product(i, j) != scaled(product(j, i), sign_of<K>((parity(i) * parity(j)).value())))
          rep.violations.push_back("graded commutativity fails for " + name(i) + ", " + name(j));
        for (int k = 0; k < dim(); ++k) {
          SparseVec<K> left, right;
          for (const auto& [a, c] : product(i, j)) axpy(left, c, product(a, k));
          for (const auto& [b, c] : product(j, k)) axpy(right, c, product(i, b));
          if (left != right) rep.violations.push_back("associativity fails for " + name(i) + ", " + name(j) + ", " + name(k));
        }
      }
    // m^r spanned by products of r basis elements; stop once it vanishes
    std::vector<SparseVec<K>> power;
    for (int i = 0; i < dim(); ++i) power.push_back({{i, K(1)}});
    for (int r = 1; r <= dim() + 1; ++r) {
      std::vector<int> piv;
      detail::gauss_jordan(power, dim(), piv);
      power.resize(piv.size());
      if (power.empty()) {
        rep.nilpotency = r;
        break;
      }
      std::vector<SparseVec<K>> next;
      for (const auto& x : power)
        for (int j = 0; j < dim(); ++j) {
          SparseVec<K> y;
          for (const auto& [a, c] : x) axpy(y, c, product(a, j));
          if (!y.empty()) next.push_back(std::move(y));
        }
      power = std::move(next);
    }
    if (!rep.nilpotency) rep.violations.push_back("m is not nilpotent");
    return rep;
  }

 private:
  GradedSpace m_;
  std::map<std::pair<int, int>, SparseVec<K>> c_;
};

struct BaseGenerator {
  std::string name;
  Parity parity;
  int nilpotency;  // g^nilpotency = 0; odd generators always square to zero
};

/// k[g_1..g_r]/(g_i^{n_i}) graded commutative; m spanned by the non-unit monomials,
/// named like "t^2*h". Moving an odd generator past another odd one costs a sign.
template <Field K>
BaseAlgebra<K> monomial_base(const std::vector<BaseGenerator>& gens) {
  std::vector<int> cap;
  for (const auto& g : gens) {
    if (g.nilpotency < 2) throw std::invalid_argument("monomial_base: nilpotency must be at least 2");
    cap.push_back(g.parity.odd() ? 2 : g.nilpotency);
  }
  std::vector<std::vector<int>> monos{{}};
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<std::vector<int>> next;
    for (const auto& m : monos)
      for (int e = 0; e < cap[g]; ++e) {
        auto x = m;
        x.push_back(e);
        next.push_back(std::move(x));
      }
    monos = std::move(next);
  }
  std::vector<std::vector<int>> basis;
  std::vector<BasisElement> elems;
  std::map<std::vector<int>, int> at;
  for (const auto& m : monos) {
    int deg = 0;
    Parity p;
    std::string nm;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      deg += m[g];
      if (m[g] == 0) continue;
      p += Parity(gens[g].parity.value() * m[g]);
      if (!nm.empty()) nm += "*";
      nm += gens[g].name + (m[g] > 1 ? "^" + std::to_string(m[g]) : "");
    }
    if (deg == 0) continue;
    at[m] = static_cast<int>(basis.size());
    basis.push_back(m);
    elems.push_back({nm, p});
  }
  BaseAlgebra<K> S(elems);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      std::vector<int> e(gens.size());
      int sign = 0;
      bool zero = false;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        e[g] = basis[i][g] + basis[j][g];
        if (e[g] >= cap[g]) zero = true;
        // g-part of the right factor passes the later generators of the left factor
        for (std::size_t h = g + 1; h < gens.size(); ++h)
          sign += basis[j][g] * basis[i][h] * (gens[g].parity * gens[h].parity).value();
      }
      if (!zero) S.add_product(static_cast<int>(i), static_cast<int>(j), at.at(e), sign_of<K>(sign));
    }
  return S;
}

/// tau_k(v⊗1, ...) = d_k(v) + sum_i beta_k^i(v) ⊗ m_i, stored in this normal form.
template <Field K>
struct TauMap {
  StructureMap<K> d;
  std::map<std::pair<int, int>, Cochain<K>> beta;  // (arity k, base index i)

  [[nodiscard]] const Cochain<K>* find(int k, int i) const {
    auto it = beta.find({k, i});
    return it == beta.end() ? nullptr : &it->second;
  }
  [[nodiscard]] int max_arity() const {
    int n = d.max_arity();
    for (const auto& [key, c] : beta) n = std::max(n, key.first);
    return n;
  }
};

namespace detail {

// (-1)^{m (k + 1 + |v|)} c(v) tuple by tuple: the sign relating beta_k^i and alpha_k^i.
template <Field K>
Cochain<K> base_twist(const Cochain<K>& c, Parity m) {
  if (!m.odd()) return c;
  Cochain<K> out(c.space(), c.flavor(), c.arity(), c.parity());
  for (const auto& [args, v] : c.table()) {
    const int s = c.arity() + 1 + c.space()->parity_of(args).value();
    out.set_canonical(args, scaled(v, sign_of<K>(s)));
  }
  return out;
}

template <Field K>
void require_beta_parity(const Cochain<K>& c, int k, Parity m, const std::string& where) {
  if (!c.is_zero() && c.parity() != Parity(k) + m)
    throw std::invalid_argument(where + ": arity-" + std::to_string(k) + " component has the wrong parity");
}

}  // namespace detail

/// Normalizes raw[k][b], the S-basis components (b = 0 is the unit) of tau_k on
/// V⊗1 tuples. The unit component must equal d_k.
template <Field K>
TauMap<K> tau_from_raw(const StructureMap<K>& d, const BaseAlgebra<K>& S, const std::map<int, std::vector<Cochain<K>>>& raw) {
  TauMap<K> t{d, {}};
  for (const auto& [k, comps] : raw) {
    if (static_cast<int>(comps.size()) != S.s_dim()) throw std::invalid_argument("tau: expected one component per basis element of S");
    const Cochain<K>* dk = d.find(k);
    bool ok = dk ? comps[0] == *dk || (comps[0].is_zero() && dk->is_zero()) : comps[0].is_zero();
    if (!ok) throw std::invalid_argument("tau: (1⊗eps) tau_" + std::to_string(k) + " differs from d_" + std::to_string(k));
    for (int i = 0; i < S.dim(); ++i) {
      if (comps[i + 1].is_zero()) continue;
      detail::require_beta_parity(comps[i + 1], k, S.parity(i), "tau");
      t.beta.emplace(std::make_pair(k, i), comps[i + 1]);
    }
  }
  for (const auto& [k, c] : d.components())
    if (!raw.count(k) && !c.is_zero()) throw std::invalid_argument("tau: missing component of arity " + std::to_string(k));
  return t;
}

/// alpha(m^i)_k = (1⊗m^i)(tau_k(v⊗1) - d_k(v)) = (-1)^{m_i(k+1+|v|)} beta_k^i.
template <Field K>
AlphaMap<K> alpha_from_tau(const TauMap<K>& tau, const BaseAlgebra<K>& S) {
  AlphaMap<K> a;
  for (int i = 0; i < S.dim(); ++i) a.emplace(S.name(i), CochainFamily<K>(tau.d.space(), tau.d.flavor()));
  for (const auto& [key, c] : tau.beta) a.at(S.name(key.second)).set(detail::base_twist(c, S.parity(key.second)));
  return a;
}

template <Field K>
TauMap<K> tau_from_alpha(const AlphaMap<K>& alpha, const StructureMap<K>& d, const BaseAlgebra<K>& S) {
  TauMap<K> t{d, {}};
  for (const auto& [n, fam] : alpha) {
    const int i = S.index(n);
    for (const auto& [k, c] : fam.components()) {
      if (c.is_zero()) continue;
      detail::require_beta_parity(c, k, S.parity(i), "alpha(" + n + ")");
      t.beta.emplace(std::make_pair(k, i), detail::base_twist(c, S.parity(i)));
    }
  }
  return t;
}

/// V⊗S with basis v_a⊗s_b at index a * dim S + b.
template <Field K>
SpacePtr tensor_with_base(const GradedSpace& V, const BaseAlgebra<K>& S) {
  std::vector<BasisElement> b;
  for (int a = 0; a < V.dim(); ++a)
    for (int s = 0; s < S.s_dim(); ++s) b.push_back({V.name(a) + "⊗" + S.s_name(s), V.parity(a) + S.s_parity(s)});
  return make_space(std::move(b));
}

/// The S-multilinear extension tau(v_1 s_1, ..., v_n s_n) = ±tau(v_1, ..., v_n) s_1...s_n,
/// the sign coming from moving each s_p right past v_{p+1}, ..., v_n.
template <Field K>
StructureMap<K> extend_over_base(const TauMap<K>& tau, const BaseAlgebra<K>& S, const SpacePtr& W) {
  const GradedSpace& V = *tau.d.space();
  const int sd = S.s_dim();
  StructureMap<K> out(W, tau.d.flavor());
  for (int k = 1; k <= tau.max_arity(); ++k) {
    const Cochain<K>* dk = tau.d.find(k);
    std::vector<std::pair<int, const Cochain<K>*>> parts;
    for (int i = 0; i < S.dim(); ++i)
      if (auto* b = tau.find(k, i)) parts.push_back({i, b});
    if (!dk && parts.empty()) continue;
    Cochain<K> c(W, tau.d.flavor(), k, Parity(k));
    for (const auto& w : domain_tuples(*W, tau.d.flavor(), k)) {
      std::vector<int> v(k);
      int sign = 0;
      SparseVec<K> s{{0, K(1)}};
      for (int p = 0; p < k; ++p) {
        v[p] = w[p] / sd;
        s = S.s_multiply(s, {{w[p] % sd, K(1)}});
      }
      for (int p = 0; p < k; ++p)
        for (int q = p + 1; q < k; ++q) sign += (S.s_parity(w[p] % sd) * V.parity(v[q])).value();
      if (s.empty()) continue;
      SparseVec<K> val;
      auto place = [&](const SparseVec<K>& x, const SparseVec<K>& sv) {
        for (const auto& [a, ca] : x)
          for (const auto& [b, cb] : sv) add_to(val, a * sd + b, ca * cb);
      };
      if (dk) place(dk->eval_basis(v), s);
      for (const auto& [i, b] : parts) {
        auto x = b->eval_basis(v);
        if (!x.empty()) place(x, S.s_multiply({{i + 1, K(1)}}, s));
      }
      if (!val.empty()) c.set_canonical(w, scaled(val, sign_of<K>(sign)));
    }
    out.set(std::move(c));
  }
  return out;
}

/// Per arity n, the single shuffle sum sum_{k+l=n+1} (±) tau_k(tau_l(...), ...) on V⊗1
/// tuples, i.e. half of {tau, tau}_n, split by S-basis component (index 0 is the unit).
template <Field K>
std::map<int, std::vector<Cochain<K>>> structure_residual_tau(const TauMap<K>& tau, const BaseAlgebra<K>& S, int cap) {
  const auto& V = tau.d.space();
  const int sd = S.s_dim();
  auto W = tensor_with_base(*V, S);
  auto tw = extend_over_base(tau, S, W);
  const K h = half<K>();
  std::map<int, std::vector<Cochain<K>>> out;
  for (int n = 1; n <= cap; ++n) {
    Cochain<K> full = self_bracket_component(tw, n);
    std::vector<Cochain<K>> parts;
    for (int b = 0; b < sd; ++b) parts.emplace_back(V, tau.d.flavor(), n, Parity(n - 1) + S.s_parity(b));
    for (const auto& v : domain_tuples(*V, tau.d.flavor(), n)) {
      std::vector<int> w(v);
      for (auto& a : w) a *= sd;
      std::vector<SparseVec<K>> split(sd);
      for (const auto& [x, c] : full.eval_basis(w)) add_to(split[x % sd], x / sd, c * h);
      for (int b = 0; b < sd; ++b)
        if (!split[b].empty()) parts[b].set_canonical(v, std::move(split[b]));
    }
    out.emplace(n, std::move(parts));
  }
  return out;
}

/// F = m* with Delta m^k = sum (-1)^{m_i m_j} c_ij^k m^i⊗m^j; F0 = ker Delta on the basis, F1 = F.
template <Field K>
FilteredCoalgebra<K> coalgebra_from_base(const BaseAlgebra<K>& S) {
  std::vector<CoalgebraElement> b;
  std::vector<bool> primitive(S.dim(), true);
  for (const auto& [ij, v] : S.constants())
    for (const auto& [k, c] : v) primitive[k] = false;
  for (int i = 0; i < S.dim(); ++i) b.push_back({S.name(i), {S.parity(i), 0}, primitive[i], true});
  FilteredCoalgebra<K> F(std::move(b));
  for (const auto& [ij, v] : S.constants())
    for (const auto& [k, c] : v)
      F.add_coproduct(k, ij.first, ij.second, (S.parity(ij.first) * S.parity(ij.second)).odd() ? -c : c);
  return F;
}

/// delta alpha + 1/2 mu (alpha⊗alpha) Delta, per m^i, up to the arity cap.
template <Field K>
std::map<std::string, CochainFamily<K>> mc_residual_base(const AlphaMap<K>& alpha, const StructureMap<K>& d,
                                                         const BaseAlgebra<K>& S, int cap) {
  MasseyProblem<K> pb{coalgebra_from_base(S), d, cap, {}, std::nullopt};
  return massey_residual(alpha, pb, Convention::mc);
}

namespace detail {

template <Field K>
const Cochain<K>* alpha_at(const AlphaMap<K>& a, const BaseAlgebra<K>& S, int i, int k) {
  auto it = a.find(S.name(i));
  return it == a.end() ? nullptr : it->second.find(k);
}

template <Field K>
SparseVec<K> compose_or_zero(const Cochain<K>* outer, const Cochain<K>* inner, int j, const std::vector<int>& v, bool shuffle) {
  if (!outer || !inner) return {};
  return shuffle ? shuffle_insert(*outer, *inner, v) : insert_at(*outer, *inner, j, v);
}

// Sum over k + l = n + 1 (and insertion positions j in the tensor flavor) of
// outer(k, l, prefix) * M_i^{k,l,j}(v), shuffled over sh(l, k-1) in the exterior flavor.
template <Field K, class Outer>
SparseVec<K> mi_sum(const AlphaMap<K>& alpha, const StructureMap<K>& d, const BaseAlgebra<K>& S, int i,
                    const std::vector<int>& v, Outer outer) {
  const GradedSpace& V = *d.space();
  const bool ext = d.flavor() == Flavor::exterior;
  const int n = static_cast<int>(v.size());
  const int mi = S.parity(i).value();
  SparseVec<K> total;
  for (int k = 1; k <= n; ++k) {
    const int l = n + 1 - k;
    const int positions = ext ? 1 : k;
    int prefix = 0;
    for (int j = 0; j < positions; ++j) {
      SparseVec<K> m;
      axpy(m, K(1), compose_or_zero(alpha_at(alpha, S, i, k), d.find(l), j, v, ext));
      const int s2 = ext ? k * mi : mi * (k + prefix);
      axpy(m, sign_of<K>(s2), compose_or_zero(d.find(k), alpha_at(alpha, S, i, l), j, v, ext));
      for (int r = 0; r < S.dim(); ++r)
        for (int s = 0; s < S.dim(); ++s) {
          K c = S.constant(r, s, i);
          if (c.is_zero()) continue;
          const int mr = S.parity(r).value(), ms = S.parity(s).value();
          const int s3 = ext ? mr * ms + k * ms : ms * (mr + k + prefix);
          axpy(m, c * sign_of<K>(s3), compose_or_zero(alpha_at(alpha, S, r, k), alpha_at(alpha, S, s, l), j, v, ext));
        }
      axpy(total, sign_of<K>(outer(k, l, j, prefix)), m);
      if (j < n) prefix += V.parity(v[j]).value();
    }
  }
  return total;
}

}  // namespace detail

/// The signed M_i sum of the structure equation: sum (-1)^{(k-1)l} (-1)^sigma eps M_i(v_sigma)
/// (exterior), sum (-1)^{(k-1)l + l(v_1+..+v_{j-1}) + (j-1)(l-1)} M_i (tensor).
template <Field K>
Cochain<K> mi_terms(const AlphaMap<K>& alpha, const StructureMap<K>& d, const BaseAlgebra<K>& S, int i, int n) {
  Cochain<K> out(d.space(), d.flavor(), n, Parity(n - 1) + S.parity(i));
  for (const auto& v : domain_tuples(*d.space(), d.flavor(), n)) {
    auto val = detail::mi_sum(alpha, d, S, i, v, [](int k, int l, int j, int prefix) {
      return (k - 1) * l + l * prefix + j * (l - 1);
    });
    if (!val.empty()) out.set_canonical(v, std::move(val));
  }
  return out;
}

namespace prop1 {

inline constexpr const char* unit_part = "structure residual: unit component vanishes";
inline constexpr const char* structure_identity = "structure residual m_i-component = (-1)^{m_i(n+|v|)} M_i sum";
inline constexpr const char* mc_identity = "Maurer-Cartan residual = (-1)^{m_i} M_i sum";
inline constexpr const char* mc_display = "Maurer-Cartan residual = final display";
inline constexpr const char* delta_display = "delta alpha expansion";
inline constexpr const char* mu_display = "1/2 mu(alpha⊗alpha)Delta expansion";

}  // namespace prop1

struct Prop1Failure {
  std::string element;  // m_i
  int arity = 0;
  std::vector<int> args;
  int output = 0;
  std::string lhs, rhs;
};

struct IdentityResult {
  std::string name;
  bool holds = true;
  long checked = 0;
  std::optional<Prop1Failure> first_failure;
};

struct Prop1Report {
  std::vector<IdentityResult> identities;
  bool codifferential = true;  // structure residual zero on every slot
  bool maurer_cartan = true;   // MC residual zero on every slot
  bool equivalent = true;      // both vanish together on every (m_i, arity) slot
  std::optional<std::pair<std::string, int>> first_disagreeing_slot;

  [[nodiscard]] const IdentityResult& identity(const std::string& n) const {
    for (const auto& r : identities)
      if (r.name == n) return r;
    throw std::out_of_range("prop1: no identity '" + n + "'");
  }
};

/// Computes the structure residual of tau_from_alpha(alpha) over V⊗S, the Maurer-Cartan
/// residual of alpha, and the M_i sums, and compares them tuple by tuple.
template <Field K>
Prop1Report verify_prop1(const StructureMap<K>& d, const BaseAlgebra<K>& S, const AlphaMap<K>& alpha, int cap) {
  const GradedSpace& V = *d.space();
  const bool ext = d.flavor() == Flavor::exterior;
  Prop1Report rep;
  for (const char* n : {prop1::unit_part, prop1::structure_identity, prop1::mc_identity, prop1::mc_display,
                        prop1::delta_display, prop1::mu_display})
    rep.identities.push_back(IdentityResult{n, true, 0, std::nullopt});
  auto slot = [&](const char* n) -> IdentityResult& {
    for (auto& r : rep.identities)
      if (r.name == n) return r;
    throw std::logic_error("prop1");
  };
  auto compare = [&](const char* name, const std::string& elem, const std::vector<int>& v, const SparseVec<K>& a,
                     const SparseVec<K>& b) {
    auto& r = slot(name);
    ++r.checked;
    if (a == b) return;
    if (r.holds) {
      int o = -1;
      for (const auto* src : {&a, &b})
        for (const auto& [x, c] : *src)
          if (o < 0 && (!a.count(x) || !b.count(x) || a.at(x) != b.at(x))) o = x;
      auto coef = [&](const SparseVec<K>& s) { return s.count(o) ? s.at(o).str() : std::string("0"); };
      r.first_failure = Prop1Failure{elem, static_cast<int>(v.size()), v, o, coef(a), coef(b)};
    }
    r.holds = false;
  };

  auto tau = tau_from_alpha(alpha, d, S);
  auto sres = structure_residual_tau(tau, S, cap);
  auto mres = mc_residual_base(alpha, d, S, cap);
  auto F = coalgebra_from_base(S);
  const K h = half<K>();

  for (int n = 1; n <= cap; ++n) {
    const auto tuples = domain_tuples(V, d.flavor(), n);
    for (const auto& v : tuples) compare(prop1::unit_part, "1", v, sres.at(n)[0].eval_basis(v), {});
    for (int i = 0; i < S.dim(); ++i) {
      const std::string& nm = S.name(i);
      const int mi = S.parity(i).value();
      const Cochain<K>* mc = mres.at(nm).find(n);
      const auto& family = alpha.count(nm) ? alpha.at(nm) : CochainFamily<K>(d.space(), d.flavor());
      auto dalpha = differential(d, family, cap);
      auto half_mu = mu_alpha_delta(F, d, alpha, i, cap) * h;
      bool s_zero = true, m_zero = true;
      for (const auto& v : tuples) {
        const int vpar = V.parity_of(v).value();
        auto A = sres.at(n)[i + 1].eval_basis(v);
        auto B = mc ? mc->eval_basis(v) : SparseVec<K>{};
        s_zero &= A.empty();
        m_zero &= B.empty();
        auto sm = detail::mi_sum(alpha, d, S, i, v, [](int k, int l, int j, int prefix) {
          return (k - 1) * l + l * prefix + j * (l - 1);
        });
        compare(prop1::structure_identity, nm, v, A, scaled(sm, sign_of<K>(mi * (n + vpar))));
        compare(prop1::mc_identity, nm, v, B, scaled(sm, sign_of<K>(mi)));
        auto literal = ext ? detail::mi_sum(alpha, d, S, i, v, [](int, int, int, int) { return 0; }) : sm;
        compare(prop1::mc_display, nm, v, B, literal);

        // the two expansions displayed for delta alpha and 1/2 mu(alpha⊗alpha)Delta
        SparseVec<K> dd, mm;
        for (int k = 1; k <= n; ++k) {
          const int l = n + 1 - k;
          if (ext) {
            axpy(dd, sign_of<K>((k - 1) * (l + mi)), detail::compose_or_zero(d.find(k), detail::alpha_at(alpha, S, i, l), 0, v, true));
            axpy(dd, sign_of<K>((l + 1) * k + mi), detail::compose_or_zero(detail::alpha_at(alpha, S, i, l), d.find(k), 0, v, true));
          } else {
            int prefix = 0;
            for (int j = 1; j <= k; ++j) {
              const int x = (l + mi) * (k + prefix) + j * (l - 1) + mi + 1;
              const int y = mi * (k + prefix);
              axpy(dd, sign_of<K>(x), detail::compose_or_zero(d.find(k), detail::alpha_at(alpha, S, i, l), j - 1, v, false));
              axpy(dd, sign_of<K>(y), detail::compose_or_zero(detail::alpha_at(alpha, S, i, k), d.find(l), j - 1, v, false));
              if (j - 1 < n) prefix += V.parity(v[j - 1]).value();
            }
          }
          for (int r = 0; r < S.dim(); ++r)
            for (int s = 0; s < S.dim(); ++s) {
              K c = S.constant(r, s, i);
              if (c.is_zero()) continue;
              const int mr = S.parity(r).value(), ms = S.parity(s).value();
              if (ext) {
                axpy(mm, c * sign_of<K>(mr * (ms + 1) + (k - 1) * (l + ms)),
                     detail::compose_or_zero(detail::alpha_at(alpha, S, r, k), detail::alpha_at(alpha, S, s, l), 0, v, true));
              } else {
                int prefix = 0;
                for (int j = 1; j <= k; ++j) {
                  const int x = mr * ms + k * (l + mr) + (l + ms) * prefix + j * (l - 1);
                  axpy(mm, c * sign_of<K>(x),
                       detail::compose_or_zero(detail::alpha_at(alpha, S, r, k), detail::alpha_at(alpha, S, s, l), j - 1, v, false));
                  if (j - 1 < n) prefix += V.parity(v[j - 1]).value();
                }
              }
            }
        }
        const Cochain<K>* dn = dalpha.find(n);
        const Cochain<K>* hn = half_mu.find(n);
        compare(prop1::delta_display, nm, v, dn ? dn->eval_basis(v) : SparseVec<K>{}, dd);
        compare(prop1::mu_display, nm, v, hn ? hn->eval_basis(v) : SparseVec<K>{}, mm);
      }
      rep.codifferential &= s_zero;
      rep.maurer_cartan &= m_zero;
      if (s_zero != m_zero) {
        rep.equivalent = false;
        if (!rep.first_disagreeing_slot) rep.first_disagreeing_slot = {nm, n};
      }
    }
  }
  // the unit part belongs to the codifferential condition as well
  rep.codifferential &= rep.identity(prop1::unit_part).holds;
  return rep;
}

/// S = k[t, h]/(t^{P+1}, h^2) with t even and h odd, the base of order-P deformations.
template <Field K>
BaseAlgebra<K> series_base(int order) {
  return monomial_base<K>({{"t", Parity(0), order + 1}, {"h", Parity(1), 2}});
}

namespace detail {

inline std::string t_power(int p) { return p == 1 ? "t" : "t^" + std::to_string(p); }

}  // namespace detail

/// alpha((t^p)*) = gamma_p, alpha((t^p h)*) = beta_p on series_base(order).
template <Field K>
AlphaMap<K> alpha_from_deformation(const DeformationSeries<K>& s) {
  const auto& sp = s.gamma.at(0).space();
  AlphaMap<K> a;
  a.emplace("h", s.beta.size() > 0 ? s.beta[0] : CochainFamily<K>(sp, s.flavor));
  for (int p = 1; p <= s.order; ++p) {
    a.emplace(detail::t_power(p), s.gamma.at(p));
    a.emplace(detail::t_power(p) + "*h", s.beta.at(p));
  }
  return a;
}

/// Inverse of alpha_from_deformation; gamma_0 = d.
template <Field K>
DeformationSeries<K> deformation_from_alpha(const AlphaMap<K>& a, const StructureMap<K>& d, int order) {
  DeformationSeries<K> s;
  s.order = order;
  s.flavor = d.flavor();
  s.gamma.push_back(d);
  s.beta.push_back(a.count("h") ? a.at("h") : CochainFamily<K>(d.space(), d.flavor()));
  for (int p = 1; p <= order; ++p) {
    auto get = [&](const std::string& n) { return a.count(n) ? a.at(n) : CochainFamily<K>(d.space(), d.flavor()); };
    s.gamma.push_back(get(detail::t_power(p)));
    s.beta.push_back(get(detail::t_power(p) + "*h"));
  }
  return s;
}

}  // namespace infalg

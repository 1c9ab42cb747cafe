#pragma once
// Order-by-order prolongation of formal deformations
//   d_t = sum_p t^p (gamma_p + theta beta_p),  gamma_0 = d, beta_0 = 0,
// with t even and theta odd (theta^2 = 0).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infalg/cohomology.hpp"
#include "infalg/structure.hpp"

namespace infalg {

enum class Target { gamma, beta };

inline std::string to_string(Target t) { return t == Target::gamma ? "gamma" : "beta"; }

template <Field K>
struct DeformationSeries {
  int order = 0;
  Flavor flavor = Flavor::exterior;
  std::vector<CochainFamily<K>> gamma;  // gamma[0] = d
  std::vector<CochainFamily<K>> beta;   // beta[0] = 0
  std::vector<Slot> unreliable;         // slots whose solutions depend on the arity cap

  /// phi_{p,q} (or psi_{p,q}): the arity-q component of gamma_p (beta_p).
  [[nodiscard]] const Cochain<K>* component(Target t, int p, int q) const {
    const auto& v = t == Target::gamma ? gamma : beta;
    return p < static_cast<int>(v.size()) ? v[p].find(q) : nullptr;
  }
};

template <Field K>
struct ObstructionReport {
  int order = 0;
  Target target = Target::gamma;
  std::optional<int> arity;  // the q of the (p, q) slot in the restricted solver
  CochainFamily<K> rhs;
  std::vector<K> class_coordinates;
  std::vector<CochainFamily<K>> class_basis;
  bool internal_error = false;  // right-hand side failed to be delta-closed
  std::string message;
};

template <Field K>
struct DeformationOutcome {
  std::optional<DeformationSeries<K>> series;
  std::optional<ObstructionReport<K>> obstruction;

  [[nodiscard]] bool succeeded() const { return series.has_value(); }
};

namespace detail {

template <Field K>
CochainFamily<K> single(const Cochain<K>& c) {
  CochainFamily<K> f(c.space(), c.flavor());
  f.set(c);
  return f;
}

template <Field K>
void require_good_parity(const CochainFamily<K>& f, Parity g, const char* what) {
  for (const auto& [k, c] : f.components())
    if (!c.is_zero() && c.good_parity() != g)
      throw std::invalid_argument(std::string(what) + ": component of arity " + std::to_string(k) + " has the wrong parity");
}

/// Solves delta x = rhs on `source`. Fills `out` on failure and returns nullopt.
/// sign flips the right-hand side before solving (plain vs modified delta);
/// obstruction coordinates are always those of the unflipped rhs.
template <Field K>
std::optional<CochainFamily<K>> solve_step(const StructureMap<K>& d, const CochainFamily<K>& rhs, int cap,
                                           const ChainSpace& source, const K& sign, ObstructionReport<K>& out,
                                           std::vector<Slot>& unreliable) {
  if (!differential(d, rhs, cap).is_zero()) {
    out.rhs = rhs;
    out.internal_error = true;
    out.message = "right-hand side is not delta-closed";
    return std::nullopt;
  }
  auto r = solve_coboundary(d, rhs * sign, cap, source);
  for (const auto& s : r.unreliable)
    if (std::find(unreliable.begin(), unreliable.end(), s) == unreliable.end()) unreliable.push_back(s);
  if (r.solved()) return *r.phi;
  out.rhs = rhs;
  out.class_coordinates = r.class_coordinates;
  out.class_basis = r.class_basis;
  for (auto& c : out.class_coordinates) c *= sign;
  out.message = "right-hand side is not a coboundary";
  return std::nullopt;
}

template <Field K>
bool is_cocycle(const StructureMap<K>& d, const CochainFamily<K>& f, int cap) {
  return differential(d, f, cap).is_zero();
}

}  // namespace detail

/// Deformation of a graded Lie (or associative) algebra l2 through its plain bracket:
///   delta gamma_p = -1/2 sum [gamma_i, gamma_{p-i}],
///   delta beta_p  = -1/2 sum ([beta_i, gamma_{p-i}] + [gamma_i, beta_{p-i}]),
/// with delta = [l2, -]. gamma_p lives in the even arity-2 slot, beta_p in the odd one.
template <Field K>
DeformationOutcome<K> prolong_lie(const StructureMap<K>& l2, const Cochain<K>& gamma1, const Cochain<K>& beta1,
                                  int order) {
  for (const auto& [k, c] : l2.components())
    if (k != 2 && !c.is_zero()) throw std::invalid_argument("prolong_lie: the structure must be a single arity-2 map");
  if (!check_structure(l2, 3).passed) throw std::invalid_argument("prolong_lie: l2 fails its structure check");
  const Slot gslot{Parity(0), 2}, bslot{Parity(1), 2};
  if (gamma1.arity() != 2 || gamma1.parity() != gslot.parity) throw std::invalid_argument("prolong_lie: gamma1 must be even of arity 2");
  if (beta1.arity() != 2 || beta1.parity() != bslot.parity) throw std::invalid_argument("prolong_lie: beta1 must be odd of arity 2");
  const int cap = 4;
  if (!detail::is_cocycle(l2, detail::single(gamma1), cap)) throw std::invalid_argument("prolong_lie: gamma1 is not a cocycle");
  if (!detail::is_cocycle(l2, detail::single(beta1), cap)) throw std::invalid_argument("prolong_lie: beta1 is not a cocycle");

  const auto& sp = l2.space();
  const Flavor f = l2.flavor();
  std::vector<Cochain<K>> g{l2.find(2) ? *l2.find(2) : Cochain<K>(sp, f, 2, gslot.parity), gamma1}, b{Cochain<K>(sp, f, 2, bslot.parity), beta1};
  DeformationSeries<K> s;
  s.order = order;
  s.flavor = f;
  const K minus_half = -half<K>();
  for (int p = 2; p <= order; ++p) {
    Cochain<K> rg(sp, f, 3, Parity(0)), rb(sp, f, 3, Parity(1));
    for (int i = 1; i < p; ++i) {
      rg += bracket(g[i], g[p - i]);
      rb += bracket(b[i], g[p - i]) + bracket(g[i], b[p - i]);
    }
    rg *= minus_half;
    rb *= minus_half;
    // plain delta = (-1)^{e} modified delta on arity-2 structures
    const std::pair<Target, Cochain<K>*> steps[] = {{Target::gamma, &rg}, {Target::beta, &rb}};
    for (const auto& [t, rhs] : steps) {
      ObstructionReport<K> ob;
      ob.order = p;
      ob.target = t;
      const Slot& slot = t == Target::gamma ? gslot : bslot;
      auto x = detail::solve_step(l2, detail::single(*rhs), cap, ChainSpace(sp, f, {slot}),
                                  t == Target::gamma ? K(1) : K(-1), ob, s.unreliable);
      if (!x) return {std::nullopt, ob};
      Cochain<K> c(sp, f, 2, slot.parity);
      if (const auto* y = x->find(2)) c = *y;
      (t == Target::gamma ? g : b).push_back(c);
    }
  }
  for (int p = 0; p <= order; ++p) {
    s.gamma.push_back(p < static_cast<int>(g.size()) ? detail::single(g[p]) : CochainFamily<K>(sp, f));
    s.beta.push_back(p == 0 || p >= static_cast<int>(b.size()) ? CochainFamily<K>(sp, f) : detail::single(b[p]));
  }
  return {s, std::nullopt};
}

/// Deformation of an infinity algebra through the modified bracket:
///   delta gamma_p = -1/2 sum {gamma_i, gamma_{p-i}},
///   delta beta_p  =  1/2 sum ({beta_i, gamma_{p-i}} - {gamma_i, beta_{p-i}}),
/// everything truncated at the arity cap.
template <Field K>
DeformationOutcome<K> prolong_infinity(const StructureMap<K>& d, const CochainFamily<K>& gamma1,
                                       const CochainFamily<K>& beta1, int order, int cap) {
  if (!is_odd_structure(d)) throw std::invalid_argument("prolong_infinity: d is not odd in the good grading");
  detail::require_good_parity(gamma1, Parity(1), "prolong_infinity: gamma1");
  detail::require_good_parity(beta1, Parity(0), "prolong_infinity: beta1");
  if (!detail::is_cocycle(d, gamma1, cap)) throw std::invalid_argument("prolong_infinity: gamma1 is not a cocycle");
  if (!detail::is_cocycle(d, beta1, cap)) throw std::invalid_argument("prolong_infinity: beta1 is not a cocycle");

  const auto& sp = d.space();
  const Flavor f = d.flavor();
  DeformationSeries<K> s;
  s.order = order;
  s.flavor = f;
  s.gamma = {d.truncated(cap), gamma1.truncated(cap)};
  s.beta = {CochainFamily<K>(sp, f), beta1.truncated(cap)};
  const ChainSpace odd = total_space(sp, f, Parity(1), cap), even = total_space(sp, f, Parity(0), cap);
  const K h = half<K>();
  for (int p = 2; p <= order; ++p) {
    CochainFamily<K> rg(sp, f), rb(sp, f);
    for (int i = 1; i < p; ++i) {
      rg += modified_bracket(s.gamma[i], s.gamma[p - i], cap);
      rb += modified_bracket(s.beta[i], s.gamma[p - i], cap) - modified_bracket(s.gamma[i], s.beta[p - i], cap);
    }
    rg *= -h;
    rb *= h;
    ObstructionReport<K> ob;
    ob.order = p;
    ob.target = Target::gamma;
    auto x = detail::solve_step(d, rg, cap, odd, K(1), ob, s.unreliable);
    if (!x) return {std::nullopt, ob};
    s.gamma.push_back(*x);
    ob.target = Target::beta;
    auto y = detail::solve_step(d, rb, cap, even, K(1), ob, s.unreliable);
    if (!y) return {std::nullopt, ob};
    s.beta.push_back(*y);
  }
  while (static_cast<int>(s.gamma.size()) <= order) {
    s.gamma.emplace_back(sp, f);
    s.beta.emplace_back(sp, f);
  }
  return {s, std::nullopt};
}

/// Lie-to-L-infinity (associative-to-A-infinity) deformation solved slot by slot:
///   delta phi_{p,q} = -1/2 sum_{i<p} sum_{j=1}^{q+1} {phi_{i,j}, phi_{p-i,q+2-j}},
///   delta psi_{p,q} =  1/2 sum ({psi_{i,j}, phi_{p-i,q+2-j}} - {phi_{i,j}, psi_{p-i,q+2-j}}),
/// where phi_{p,q} has internal parity q and arity q, psi_{p,q} parity q-1 and arity q.
/// The inputs are the order-1 representatives, indexed by arity. Solutions of
/// arity cap are never constrained (their equations live in arity cap+1) and are
/// set to zero for p >= 2; the slots that depend on them are flagged unreliable.
template <Field K>
DeformationOutcome<K> prolong_restricted(const StructureMap<K>& d2, const std::map<int, Cochain<K>>& phi1,
                                         const std::map<int, Cochain<K>>& psi1, int order, int cap) {
  for (const auto& [k, c] : d2.components())
    if (k != 2 && !c.is_zero()) throw std::invalid_argument("prolong_restricted: the structure must be a single arity-2 map");
  if (!check_structure(d2, cap).passed) throw std::invalid_argument("prolong_restricted: d2 fails its structure check");
  const auto& sp = d2.space();
  const Flavor f = d2.flavor();
  auto phi_slot = [](int q) { return Slot{Parity(q), q}; };
  auto psi_slot = [](int q) { return Slot{Parity(q - 1), q}; };

  DeformationSeries<K> s;
  s.order = order;
  s.flavor = f;
  s.gamma = {d2, CochainFamily<K>(sp, f)};
  s.beta = {CochainFamily<K>(sp, f), CochainFamily<K>(sp, f)};
  auto load = [&](const std::map<int, Cochain<K>>& in, auto slot_of, CochainFamily<K>& dst, const char* what) {
    for (const auto& [q, c] : in) {
      if (q < 1 || q > cap) throw std::invalid_argument(std::string(what) + ": arity outside 1..cap");
      if (c.arity() != q || c.parity() != slot_of(q).parity)
        throw std::invalid_argument(std::string(what) + ": representative of arity " + std::to_string(q) + " is in the wrong slot");
      if (!detail::is_cocycle(d2, detail::single(c), cap))
        throw std::invalid_argument(std::string(what) + ": representative of arity " + std::to_string(q) + " is not a cocycle");
      if (boundary_unreliable(d2, q, cap)) s.unreliable.push_back(slot_of(q));
      dst.set(c);
    }
  };
  load(phi1, phi_slot, s.gamma[1], "prolong_restricted: c");
  load(psi1, psi_slot, s.beta[1], "prolong_restricted: b");

  auto comp = [&](const std::vector<CochainFamily<K>>& v, int p, int q, Slot slot) {
    if (const auto* c = v[p].find(q)) return *c;
    return Cochain<K>(sp, f, q, slot.parity);
  };
  const K h = half<K>();
  for (int p = 2; p <= order; ++p) {
    s.gamma.emplace_back(sp, f);
    s.beta.emplace_back(sp, f);
    for (int q = 0; q < cap; ++q) {
      Slot rg_slot{Parity(q), q + 1}, rb_slot{Parity(q - 1), q + 1};  // delta of phi_{p,q}/psi_{p,q}
      Cochain<K> rg(sp, f, q + 1, rg_slot.parity), rb(sp, f, q + 1, rb_slot.parity);
      bool touches_cap = false;
      for (int i = 1; i < p; ++i)
        for (int j = 1; j <= q + 1; ++j) {
          const int l = q + 2 - j;
          if (j > cap || l > cap) continue;
          if ((j == cap && i >= 2) || (l == cap && p - i >= 2)) touches_cap = true;
          auto a = comp(s.gamma, i, j, phi_slot(j)), b = comp(s.gamma, p - i, l, phi_slot(l));
          rg += modified_bracket(a, b);
          rb += modified_bracket(comp(s.beta, i, j, psi_slot(j)), b) - modified_bracket(a, comp(s.beta, p - i, l, psi_slot(l)));
        }
      rg *= -h;
      rb *= h;
      ObstructionReport<K> ob;
      ob.order = p;
      ob.arity = q;
      for (Target t : {Target::gamma, Target::beta}) {
        ob.target = t;
        std::vector<Slot> src;
        if (q >= 1) src.push_back(t == Target::gamma ? phi_slot(q) : psi_slot(q));
        auto x = detail::solve_step(d2, detail::single(t == Target::gamma ? rg : rb), cap, ChainSpace(sp, f, src),
                                    K(1), ob, s.unreliable);
        if (!x) return {std::nullopt, ob};
        if (q == 0) continue;
        if (const auto* c = x->find(q)) (t == Target::gamma ? s.gamma : s.beta)[p].set(*c);
        if (touches_cap) s.unreliable.push_back(t == Target::gamma ? phi_slot(q) : psi_slot(q));
      }
    }
    if (cap >= 1) {
      s.unreliable.push_back(phi_slot(cap));
      s.unreliable.push_back(psi_slot(cap));
    }
  }
  auto& u = s.unreliable;
  std::vector<Slot> uniq;
  for (const auto& x : u)
    if (std::find(uniq.begin(), uniq.end(), x) == uniq.end()) uniq.push_back(x);
  u = uniq;
  while (static_cast<int>(s.gamma.size()) <= order) {
    s.gamma.emplace_back(sp, f);
    s.beta.emplace_back(sp, f);
  }
  return {s, std::nullopt};
}

/// Coefficients of {d_t, d_t} through order t^P, split as (t^p part, t^p theta part):
///   R_p = sum_{i+j=p} {gamma_i, gamma_j},  Rtheta_p = sum_{i+j=p} ({beta_i, gamma_j} - {gamma_i, beta_j}).
template <Field K>
std::vector<std::pair<CochainFamily<K>, CochainFamily<K>>> deformation_residual(const DeformationSeries<K>& s, int cap) {
  std::vector<std::pair<CochainFamily<K>, CochainFamily<K>>> out;
  const auto& sp = s.gamma.at(0).space();
  for (int p = 0; p <= s.order; ++p) {
    CochainFamily<K> r(sp, s.flavor), rt(sp, s.flavor);
    for (int i = 0; i <= p; ++i) {
      r += modified_bracket(s.gamma[i], s.gamma[p - i], cap);
      rt += modified_bracket(s.beta[i], s.gamma[p - i], cap) - modified_bracket(s.gamma[i], s.beta[p - i], cap);
    }
    out.emplace_back(r.pruned(), rt.pruned());
  }
  return out;
}

/// Same coefficients for the plain bracket of a graded Lie (associative) deformation:
///   sum [gamma_i, gamma_j] and sum ([beta_i, gamma_j] + [gamma_i, beta_j]).
template <Field K>
std::vector<std::pair<CochainFamily<K>, CochainFamily<K>>> lie_deformation_residual(const DeformationSeries<K>& s) {
  std::vector<std::pair<CochainFamily<K>, CochainFamily<K>>> out;
  const auto& sp = s.gamma.at(0).space();
  auto at = [&](const std::vector<CochainFamily<K>>& v, int p, Parity e) {
    if (const auto* c = v[p].find(2)) return *c;
    return Cochain<K>(sp, s.flavor, 2, e);
  };
  for (int p = 0; p <= s.order; ++p) {
    CochainFamily<K> r(sp, s.flavor), rt(sp, s.flavor);
    for (int i = 0; i <= p; ++i) {
      auto gi = at(s.gamma, i, Parity(0)), gj = at(s.gamma, p - i, Parity(0));
      auto bi = at(s.beta, i, Parity(1)), bj = at(s.beta, p - i, Parity(1));
      r.accumulate(bracket(gi, gj));
      rt.accumulate(bracket(bi, gj) + bracket(gi, bj));
    }
    out.emplace_back(r.pruned(), rt.pruned());
  }
  return out;
}

template <Field K>
bool residual_vanishes(const std::vector<std::pair<CochainFamily<K>, CochainFamily<K>>>& r) {
  for (const auto& [a, b] : r)
    if (!a.is_zero() || !b.is_zero()) return false;
  return true;
}

}  // namespace infalg

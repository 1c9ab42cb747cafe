#pragma once
// Massey F-products: the condition delta∘alpha = mu∘(alpha⊗alpha)∘Delta for a
// degree-1 map alpha: F1 -> C(V), with mu the modified bracket.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "infalg/coalgebra.hpp"
#include "infalg/cohomology.hpp"
#include "infalg/deformation.hpp"

namespace infalg {

enum class Convention { product, mc };

inline std::string to_string(Convention c) { return c == Convention::product ? "product" : "mc"; }

template <Field K>
using AlphaMap = std::map<std::string, CochainFamily<K>>;

template <Field K>
struct MasseyProblem {
  FilteredCoalgebra<K> F;
  StructureMap<K> d;
  int arity_cap = 4;
  std::map<std::string, CochainFamily<K>> a;                 // F0 -> class representatives
  std::optional<std::map<std::string, CochainFamily<K>>> b;  // F/F1 -> class representatives
};

/// Names of basis elements where alpha has the wrong degree (good parity of
/// alpha(x) must be that of x plus one).
template <Field K>
std::vector<std::string> alpha_degree_violations(const FilteredCoalgebra<K>& F, const AlphaMap<K>& alpha) {
  std::vector<std::string> bad;
  for (const auto& [n, fam] : alpha) {
    auto i = F.find(n);
    if (!i) {
      bad.push_back(n);
      continue;
    }
    Parity want = F.good_parity(*i) + Parity(1);
    for (const auto& [k, c] : fam.components())
      if (!c.is_zero() && c.good_parity() != want) {
        bad.push_back(n);
        break;
      }
  }
  return bad;
}

/// mu(alpha⊗alpha)(Delta x) = sum c (-1)^{|u|} {alpha(u), alpha(v)}, |u| the good parity of u.
template <Field K>
CochainFamily<K> mu_alpha_delta(const FilteredCoalgebra<K>& F, const StructureMap<K>& d, const AlphaMap<K>& alpha,
                                int x, int cap) {
  CochainFamily<K> out(d.space(), d.flavor());
  for (const auto& [uv, c] : F.coproduct(x)) {
    auto au = alpha.find(F.name(uv.first)), av = alpha.find(F.name(uv.second));
    if (au == alpha.end() || av == alpha.end())
      throw std::invalid_argument("massey: alpha is missing on '" + F.name(au == alpha.end() ? uv.first : uv.second) + "'");
    K s = F.good_parity(uv.first).odd() ? -c : c;
    out += modified_bracket(au->second, av->second, cap) * s;
  }
  return out.pruned();
}

/// product: delta alpha(x) - mu(alpha⊗alpha)Delta x;  mc: delta alpha(x) + 1/2 mu(alpha⊗alpha)Delta x.
template <Field K>
std::map<std::string, CochainFamily<K>> massey_residual(const AlphaMap<K>& alpha, const MasseyProblem<K>& pb,
                                                        Convention conv) {
  auto bad = alpha_degree_violations(pb.F, alpha);
  if (!bad.empty()) throw std::invalid_argument("massey: alpha has the wrong degree (or an unknown name) at '" + bad.front() + "'");
  const K coeff = conv == Convention::product ? K(-1) : half<K>();
  std::map<std::string, CochainFamily<K>> out;
  for (int x = 0; x < pb.F.dim(); ++x) {
    if (!pb.F.element(x).in_f1) continue;
    const auto& n = pb.F.name(x);
    auto it = alpha.find(n);
    if (it == alpha.end()) throw std::invalid_argument("massey: alpha is missing on '" + n + "'");
    auto r = differential(pb.d, it->second, pb.arity_cap) + mu_alpha_delta(pb.F, pb.d, alpha, x, pb.arity_cap) * coeff;
    out.emplace(n, r.pruned());
  }
  return out;
}

template <Field K>
struct MasseyVerdict {
  bool holds = false;
  std::string statement;
  std::vector<std::string> diagnostics;
  std::optional<std::string> first_failure;  // basis element named by the first failing check
};

/// (i) the product-convention residual vanishes on F1; (ii) alpha(x) and a(x) are
/// cohomologous on F0; (iii) when F1 != F, mu(alpha⊗alpha)Delta x is cohomologous to b(x)
/// for x outside F1.
template <Field K>
MasseyVerdict<K> massey_verify(const MasseyProblem<K>& pb, const AlphaMap<K>& alpha,
                               Convention conv = Convention::product) {
  MasseyVerdict<K> v;
  const bool trivial_form = pb.F.f1_is_everything();
  const std::string claim = trivial_form ? "a satisfies the condition of triviality"
                                         : "b is contained in the Massey F-product of a";
  auto fail = [&](const std::string& elem, const std::string& msg) {
    if (!v.first_failure) v.first_failure = elem;
    v.diagnostics.push_back(elem.empty() ? msg : elem + ": " + msg);
  };
  if (trivial_form && pb.b) throw std::invalid_argument("massey: b must be absent when F1 = F");
  auto rep = check_coalgebra(pb.F);
  for (const auto& x : rep.violations) fail(x.element, "coalgebra " + to_string(x.check) + ": " + x.detail);

  if (rep.passed()) {
    for (const auto& [n, r] : massey_residual(alpha, pb, conv))
      if (!r.is_zero()) fail(n, "residual of the Massey equation is nonzero");

    auto cohomologous = [&](const CochainFamily<K>& x, const CochainFamily<K>& y) {
      auto diff = (x - y).pruned();
      if (diff.is_zero()) return true;
      if (!differential(pb.d, diff, pb.arity_cap).is_zero()) return false;
      return solve_coboundary(pb.d, diff, pb.arity_cap).solved();
    };
    for (int x = 0; x < pb.F.dim(); ++x) {
      if (!pb.F.element(x).in_f0) continue;
      const auto& n = pb.F.name(x);
      auto ai = pb.a.find(n);
      auto al = alpha.find(n);
      if (ai == pb.a.end()) {
        fail(n, "a is not given");
        continue;
      }
      if (al == alpha.end() || !cohomologous(al->second, ai->second)) fail(n, "alpha(x) does not represent a(x)");
    }
    if (!trivial_form) {
      for (int x = 0; x < pb.F.dim(); ++x) {
        if (pb.F.element(x).in_f1) continue;
        const auto& n = pb.F.name(x);
        if (!pb.b || !pb.b->count(n)) {
          fail(n, "b is not given");
          continue;
        }
        auto m = mu_alpha_delta(pb.F, pb.d, alpha, x, pb.arity_cap);
        if (!cohomologous(m, pb.b->at(n))) fail(n, "mu(alpha⊗alpha)Delta(x) does not represent b(x)");
      }
    }
  }
  v.holds = v.diagnostics.empty();
  v.statement = v.holds ? claim : "not verified: " + claim;
  return v;
}

/// alpha(e^p) = s gamma_p, alpha(f^p) = s beta_p on build_F_lie(N), with s = 1 for the
/// product convention and s = -2 for the mc convention.
template <Field K>
AlphaMap<K> alpha_from_series(const DeformationSeries<K>& s, int N, Convention conv = Convention::product) {
  if (N > s.order) throw std::invalid_argument("alpha_from_series: series shorter than N");
  const K scale = conv == Convention::product ? K(1) : K(-2);
  AlphaMap<K> a;
  for (int p = 1; p <= N; ++p) {
    a.emplace("e" + std::to_string(p), s.gamma[p] * scale);
    a.emplace("f" + std::to_string(p), s.beta[p] * scale);
  }
  return a;
}

/// alpha(e^{i,j}) = s phi_{i,j}, alpha(f^{i,j}) = s psi_{i,j} on a build_F_restricted coalgebra.
template <Field K>
AlphaMap<K> alpha_from_restricted(const DeformationSeries<K>& s, const FilteredCoalgebra<K>& F,
                                  Convention conv = Convention::product) {
  const K scale = conv == Convention::product ? K(1) : K(-2);
  const auto& sp = s.gamma.at(0).space();
  AlphaMap<K> a;
  for (const auto& e : F.basis()) {
    const char letter = e.name.at(0);
    const auto us = e.name.find('_');
    const int i = std::stoi(e.name.substr(1, us - 1)), j = std::stoi(e.name.substr(us + 1));
    CochainFamily<K> fam(sp, s.flavor);
    if (const auto* c = s.component(letter == 'e' ? Target::gamma : Target::beta, i, j)) fam.set(*c * scale);
    a.emplace(e.name, fam);
  }
  return a;
}

}  // namespace infalg

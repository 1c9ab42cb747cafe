#pragma once
// Shared algebras and random generators for the test suites.

#include <random>
#include <string>
#include <vector>

#include "infalg/cochain.hpp"

namespace infalg::testing {

using Q = Rational;

inline SpacePtr even_space(int dim) {
  std::vector<BasisElement> b;
  const char* names[] = {"x", "y", "z", "w"};
  for (int i = 0; i < dim; ++i) b.push_back({names[i], Parity(0)});
  return make_space(b);
}

inline SpacePtr space_with(const std::vector<int>& parities) {
  std::vector<BasisElement> b;
  for (std::size_t i = 0; i < parities.size(); ++i) b.push_back({"v" + std::to_string(i), Parity(parities[i])});
  return make_space(b);
}

/// k[x]/x^2 with basis (1, x), both even.
template <Field K = Q>
StructureMap<K> dual_numbers(SpacePtr* out_space = nullptr, bool broken = false) {
  auto sp = make_space({{"1", Parity(0)}, {"x", Parity(0)}});
  Cochain<K> mu(sp, Flavor::tensor, 2, Parity(0));
  mu.add({0, 0}, 0, K(1));
  mu.add({0, 1}, 1, K(1));
  mu.add({1, 0}, 1, K(1));
  if (broken) mu.add({1, 1}, 0, K(1));
  StructureMap<K> d(sp, Flavor::tensor);
  d.set(mu);
  if (out_space) *out_space = sp;
  return d;
}

/// Basis (1, x) with 1*1 = 1, 1*x = x, x*1 = 2x: (x1)1 = 4x but x(11) = 2x.
template <Field K = Q>
StructureMap<K> lopsided_unit() {
  auto sp = make_space({{"1", Parity(0)}, {"x", Parity(0)}});
  Cochain<K> mu(sp, Flavor::tensor, 2, Parity(0));
  mu.add({0, 0}, 0, K(1));
  mu.add({0, 1}, 1, K(1));
  mu.add({1, 0}, 1, K(2));
  StructureMap<K> d(sp, Flavor::tensor);
  d.set(mu);
  return d;
}

/// span{x, y} even with l2(x, y) = y.
template <Field K = Q>
StructureMap<K> affine_lie() {
  auto sp = even_space(2);
  Cochain<K> l2(sp, Flavor::exterior, 2, Parity(0));
  l2.add({0, 1}, 1, K(1));
  StructureMap<K> d(sp, Flavor::exterior);
  d.set(l2);
  return d;
}

/// sl2-like: [x,y]=z, [y,z]=x, [z,x]=y.
template <Field K = Q>
StructureMap<K> so3_lie() {
  auto sp = even_space(3);
  Cochain<K> l2(sp, Flavor::exterior, 2, Parity(0));
  l2.add({0, 1}, 2, K(1));
  l2.add({1, 2}, 0, K(1));
  l2.add({2, 0}, 1, K(1));
  StructureMap<K> d(sp, Flavor::exterior);
  d.set(l2);
  return d;
}

template <Field K = Q>
StructureMap<K> abelian(int dim, Flavor flavor = Flavor::exterior) {
  return StructureMap<K>(even_space(dim), flavor);
}

/// Verified structures on dim <= 2 spaces (v0 even, v1 odd unless noted).
template <Field K = Q>
std::vector<StructureMap<K>> structure_catalog(Flavor flavor) {
  auto sp = space_with({0, 1});
  std::vector<StructureMap<K>> out;
  out.emplace_back(sp, flavor);
  {
    StructureMap<K> d(sp, flavor);
    Cochain<K> d1(sp, flavor, 1, Parity(1));
    d1.add({0}, 1, K(1));
    d.set(d1);
    out.push_back(d);
  }
  if (flavor == Flavor::tensor) {
    out.push_back(dual_numbers<K>());
    // k[e]/e^2 with e odd
    StructureMap<K> d(sp, flavor);
    Cochain<K> mu(sp, flavor, 2, Parity(0));
    mu.add({0, 0}, 0, K(1));
    mu.add({0, 1}, 1, K(1));
    mu.add({1, 0}, 1, K(1));
    d.set(mu);
    out.push_back(d);
  } else {
    out.push_back(affine_lie<K>());
    StructureMap<K> d(sp, flavor);
    Cochain<K> l2(sp, flavor, 2, Parity(0));
    l2.add({1, 1}, 0, K(1));  // [u, u] = x, x central
    d.set(l2);
    out.push_back(d);
  }
  return out;
}

/// Random homogeneous cochain with small integer coefficients.
template <Field K = Q>
Cochain<K> random_cochain(std::mt19937& rng, const SpacePtr& sp, Flavor flavor, int arity, Parity parity,
                          double density = 0.5, int range = 2) {
  Cochain<K> c(sp, flavor, arity, parity);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coef(-range, range);
  for (const auto& args : domain_tuples(*sp, flavor, arity)) {
    Parity target = parity + sp->parity_of(args);
    for (int o = 0; o < sp->dim(); ++o) {
      if (sp->parity(o) != target || u(rng) > density) continue;
      c.add(args, o, K(coef(rng)));
    }
  }
  return c;
}

}  // namespace infalg::testing

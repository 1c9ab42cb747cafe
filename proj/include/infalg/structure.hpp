#pragma once
// Verification of the infinity-algebra structure equation {d, d} = 0, both
// through the bracket and directly from the signed relation sums.
//
// The direct checker below deliberately re-derives its composition and sign
// logic instead of calling into cochain.hpp's bracket helpers, so the two
// verdicts are independent.

#include <optional>
#include <string>
#include <vector>

#include "infalg/cochain.hpp"
#include "infalg/graded.hpp"

namespace infalg {

template <Field K>
struct Witness {
  int arity = 0;
  std::vector<int> args;
  int output = 0;
  K coefficient;
};

template <Field K>
struct StructureReport {
  int arity_cap = 0;
  bool passed = true;
  std::vector<int> failing_arities;
  std::optional<Witness<K>> witness;  // first nonzero entry, lowest arity first
};

namespace detail {

template <Field K>
std::optional<Witness<K>> first_nonzero(const Cochain<K>& c) {
  for (const auto& [args, v] : c.table()) {
    if (v.empty()) continue;
    return Witness<K>{c.arity(), args, v.begin()->first, v.begin()->second};
  }
  return std::nullopt;
}

}  // namespace detail

/// Arity-n component of {d, d}.
template <Field K>
Cochain<K> self_bracket_component(const StructureMap<K>& d, int n) {
  std::optional<Cochain<K>> acc;
  for (const auto& [k, dk] : d.components()) {
    const int l = n + 1 - k;
    const Cochain<K>* dl = d.find(l);
    if (l < 1 || !dl) continue;
    Cochain<K> term = modified_bracket(dk, *dl);
    if (acc) *acc += term;
    else acc = std::move(term);
  }
  if (!acc) {
    // Empty sum: parity of a would-be {d,d} component (good-even).
    return Cochain<K>(d.space(), d.flavor(), n, Parity(n - 1));
  }
  return *acc;
}

/// {d, d} = 0 checked arity by arity up to the cap.
template <Field K>
StructureReport<K> check_structure(const StructureMap<K>& d, int arity_cap) {
  StructureReport<K> rep;
  rep.arity_cap = arity_cap;
  for (int n = 1; n <= arity_cap; ++n) {
    auto w = detail::first_nonzero(self_bracket_component(d, n));
    if (!w) continue;
    rep.passed = false;
    rep.failing_arities.push_back(n);
    if (!rep.witness) rep.witness = w;
  }
  return rep;
}

namespace direct {

// Sign (-1)^sigma eps(sigma) of moving the wedge v_0..v_{n-1} into the order
// given by `order`, computed by bubble-sorting `order` back to the identity.
inline int wedge_reorder_sign(const GradedSpace& sp, const std::vector<int>& v, std::vector<int> order) {
  int sign = 1;
  for (std::size_t pass = 0; pass < order.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      if (order[i] > order[i + 1]) {
        bool both_odd = sp.parity(v[order[i]]).odd() && sp.parity(v[order[i + 1]]).odd();
        if (!both_odd) sign = -sign;
        std::swap(order[i], order[i + 1]);
      }
    }
  }
  return sign;
}

template <Field K>
SparseVec<K> compose(const Cochain<K>& outer, int position, const Cochain<K>& inner, const std::vector<int>& args) {
  const int l = inner.arity();
  SparseVec<K> mid = inner.eval_basis(std::vector<int>(args.begin() + position, args.begin() + position + l));
  SparseVec<K> out;
  for (const auto& [w, c] : mid) {
    std::vector<int> full(args.begin(), args.begin() + position);
    full.push_back(w);
    full.insert(full.end(), args.begin() + position + l, args.end());
    axpy(out, c, outer.eval_basis(full));
  }
  return out;
}

/// Left side of the A-infinity relation at arity n on one basis tuple.
template <Field K>
SparseVec<K> ainf_relation(const StructureMap<K>& mu, const std::vector<int>& v) {
  const GradedSpace& sp = *mu.space();
  const int n = static_cast<int>(v.size());
  SparseVec<K> total;
  for (int k = 1; k <= n; ++k) {
    const int l = n + 1 - k;
    const Cochain<K>* mk = mu.find(k);
    const Cochain<K>* ml = mu.find(l);
    if (!mk || !ml) continue;
    int before = 0;
    for (int j = 0; j <= k - 1; ++j) {
      int r = l * before + j * (l - 1) + (k - 1) * l;
      axpy(total, (r % 2) ? K(-1) : K(1), compose(*mk, j, *ml, v));
      if (j < n) before += sp.parity(v[j]).value();
    }
  }
  return total;
}

/// Left side of the generalized Jacobi identity at arity n on one basis tuple.
template <Field K>
SparseVec<K> linf_relation(const StructureMap<K>& l_map, const std::vector<int>& v) {
  const GradedSpace& sp = *l_map.space();
  const int n = static_cast<int>(v.size());
  SparseVec<K> total;
  for (int k = 1; k <= n; ++k) {
    const int l = n + 1 - k;
    const Cochain<K>* lk = l_map.find(k);
    const Cochain<K>* ll = l_map.find(l);
    if (!lk || !ll) continue;
    // Enumerate k-subsets directly via bitmasks.
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != k) continue;
      std::vector<int> order;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) order.push_back(i);
      for (int i = 0; i < n; ++i)
        if (!(mask & (1u << i))) order.push_back(i);
      std::vector<int> permuted(n);
      for (int i = 0; i < n; ++i) permuted[i] = v[order[i]];
      int sign = wedge_reorder_sign(sp, v, order) * ((((k - 1) * l) % 2) ? -1 : 1);
      axpy(total, K(sign), compose(*ll, 0, *lk, permuted));
    }
  }
  return total;
}

}  // namespace direct

/// Evaluates the relation sums themselves on every basis tuple, arity by arity.
template <Field K>
StructureReport<K> check_structure_direct(const StructureMap<K>& d, int arity_cap) {
  StructureReport<K> rep;
  rep.arity_cap = arity_cap;
  for (int n = 1; n <= arity_cap; ++n) {
    bool failed = false;
    for (const auto& v : domain_tuples(*d.space(), d.flavor(), n)) {
      SparseVec<K> r = d.flavor() == Flavor::tensor ? direct::ainf_relation(d, v) : direct::linf_relation(d, v);
      if (r.empty()) continue;
      if (!failed) {
        failed = true;
        rep.failing_arities.push_back(n);
        if (!rep.witness) rep.witness = Witness<K>{n, v, r.begin()->first, r.begin()->second};
      }
      break;
    }
    if (failed) rep.passed = false;
  }
  return rep;
}

}  // namespace infalg

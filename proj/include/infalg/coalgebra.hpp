#pragma once
// Filtered graded coalgebras F with F0 ⊂ F1 ⊂ F, the two built-in families
// indexing formal deformations, and their dual algebras.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "infalg/graded.hpp"
#include "infalg/linear.hpp"

namespace infalg {

struct CoalgebraElement {
  std::string name;
  Bidegree bidegree;  // external degree may be negative here
  bool in_f0 = false;
  bool in_f1 = true;
};

template <Field K>
struct CoproductTerm {
  int left;
  int right;
  K coeff;
};

template <Field K>
class FilteredCoalgebra {
 public:
  using Tensor2 = std::map<std::pair<int, int>, K>;

  FilteredCoalgebra() = default;
  explicit FilteredCoalgebra(std::vector<CoalgebraElement> basis) : basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (basis_[i].name == basis_[j].name) throw std::invalid_argument("coalgebra: duplicate basis name '" + basis_[i].name + "'");
  }

  [[nodiscard]] int dim() const { return static_cast<int>(basis_.size()); }
  [[nodiscard]] const std::vector<CoalgebraElement>& basis() const { return basis_; }
  [[nodiscard]] const CoalgebraElement& element(int i) const { return basis_.at(i); }
  [[nodiscard]] const std::string& name(int i) const { return basis_.at(i).name; }
  [[nodiscard]] std::optional<int> find(const std::string& n) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].name == n) return static_cast<int>(i);
    return std::nullopt;
  }
  [[nodiscard]] int index(const std::string& n) const {
    auto i = find(n);
    if (!i) throw std::out_of_range("coalgebra: unknown basis element '" + n + "'");
    return *i;
  }
  [[nodiscard]] Parity good_parity(int i) const { return basis_.at(i).bidegree.total(); }

  void add_coproduct(int x, int left, int right, const K& c) {
    if (x < 0 || x >= dim() || left < 0 || left >= dim() || right < 0 || right >= dim())
      throw std::out_of_range("coalgebra: coproduct index out of range");
    if (c.is_zero()) return;
    delta_[x].push_back({left, right, c});
  }
  void add_coproduct(const std::string& x, const std::string& l, const std::string& r, const K& c) {
    add_coproduct(index(x), index(l), index(r), c);
  }

  [[nodiscard]] const std::vector<CoproductTerm<K>>& raw_coproduct(int x) const {
    static const std::vector<CoproductTerm<K>> empty;
    auto it = delta_.find(x);
    return it == delta_.end() ? empty : it->second;
  }

  /// Delta(x) with like terms combined.
  [[nodiscard]] Tensor2 coproduct(int x) const {
    Tensor2 out;
    for (const auto& t : raw_coproduct(x)) {
      auto [it, ins] = out.emplace(std::make_pair(t.left, t.right), t.coeff);
      if (!ins) {
        it->second += t.coeff;
        if (it->second.is_zero()) out.erase(it);
      }
    }
    return out;
  }

  [[nodiscard]] bool f1_is_everything() const {
    for (const auto& e : basis_)
      if (!e.in_f1) return false;
    return true;
  }

 private:
  std::vector<CoalgebraElement> basis_;
  std::map<int, std::vector<CoproductTerm<K>>> delta_;
};

enum class CoalgebraCheck { coassociativity, cocommutativity, filtration, primitive_f0, image_in_f1, degree };

inline std::string to_string(CoalgebraCheck c) {
  switch (c) {
    case CoalgebraCheck::coassociativity: return "coassociativity";
    case CoalgebraCheck::cocommutativity: return "cocommutativity";
    case CoalgebraCheck::filtration: return "F0 in F1";
    case CoalgebraCheck::primitive_f0: return "Delta(F0) = 0";
    case CoalgebraCheck::image_in_f1: return "Delta(F) in F1 x F1";
    case CoalgebraCheck::degree: return "degree";
  }
  return "?";
}

struct CoalgebraViolation {
  CoalgebraCheck check;
  std::string element;
  std::string detail;
};

struct CoalgebraReport {
  std::vector<CoalgebraViolation> violations;
  [[nodiscard]] bool passed() const { return violations.empty(); }
  [[nodiscard]] bool failed(CoalgebraCheck c) const {
    for (const auto& v : violations)
      if (v.check == c) return true;
    return false;
  }
};

/// Checks every structural condition and records one violation per (condition, element).
/// The symmetry is S(u⊗v) = (-1)^{<u,v>} v⊗u with the given pairing of bidegrees.
template <Field K>
CoalgebraReport check_coalgebra(const FilteredCoalgebra<K>& F, Pairing pairing = Pairing::good) {
  CoalgebraReport rep;
  auto pair_sign = [&](int u, int v) {
    return bidegree_pairing(F.element(u).bidegree, F.element(v).bidegree, pairing).odd() ? K(-1) : K(1);
  };
  auto fmt = [&](int a, int b) { return F.name(a) + "⊗" + F.name(b); };
  for (int x = 0; x < F.dim(); ++x) {
    const auto& name = F.name(x);
    auto dx = F.coproduct(x);

    std::map<std::tuple<int, int, int>, K> left, right;
    for (const auto& [uv, c] : dx) {
      for (const auto& [ab, c2] : F.coproduct(uv.first)) left[{ab.first, ab.second, uv.second}] += c * c2;
      for (const auto& [ab, c2] : F.coproduct(uv.second)) right[{uv.first, ab.first, ab.second}] += c * c2;
    }
    std::erase_if(left, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(right, [](const auto& kv) { return kv.second.is_zero(); });
    if (left != right) {
      std::string detail;
      for (const auto& [k, v] : left) {
        auto it = right.find(k);
        if (it == right.end() || it->second != v) {
          detail = "coefficient of " + F.name(std::get<0>(k)) + "⊗" + F.name(std::get<1>(k)) + "⊗" + F.name(std::get<2>(k)) + " differs";
          break;
        }
      }
      if (detail.empty()) detail = "(1⊗Delta)Delta has extra terms";
      rep.violations.push_back({CoalgebraCheck::coassociativity, name, detail});
    }

    typename FilteredCoalgebra<K>::Tensor2 swapped;
    for (const auto& [uv, c] : dx) {
      auto& slot = swapped[{uv.second, uv.first}];
      slot += c * pair_sign(uv.first, uv.second);
    }
    std::erase_if(swapped, [](const auto& kv) { return kv.second.is_zero(); });
    if (swapped != dx) {
      std::string detail;
      for (const auto& [uv, c] : dx) {
        auto it = swapped.find(uv);
        if (it == swapped.end() || it->second != c) {
          detail = "S(Delta " + name + ") disagrees at " + fmt(uv.first, uv.second);
          break;
        }
      }
      if (detail.empty()) detail = "S(Delta " + name + ") has extra terms";
      rep.violations.push_back({CoalgebraCheck::cocommutativity, name, detail});
    }

    const auto& e = F.element(x);
    if (e.in_f0 && !e.in_f1) rep.violations.push_back({CoalgebraCheck::filtration, name, "in F0 but not in F1"});
    if (e.in_f0 && !dx.empty()) rep.violations.push_back({CoalgebraCheck::primitive_f0, name, "element of F0 with nonzero coproduct"});
    for (const auto& [uv, c] : dx)
      if (!F.element(uv.first).in_f1 || !F.element(uv.second).in_f1) {
        rep.violations.push_back({CoalgebraCheck::image_in_f1, name, "term " + fmt(uv.first, uv.second) + " leaves F1⊗F1"});
        break;
      }
    for (const auto& [uv, c] : dx) {
      const auto &a = F.element(uv.first).bidegree, &b = F.element(uv.second).bidegree;
      if (a.internal + b.internal != e.bidegree.internal || a.external + b.external != e.bidegree.external) {
        rep.violations.push_back({CoalgebraCheck::degree, name, "term " + fmt(uv.first, uv.second) + " has the wrong bidegree"});
        break;
      }
    }
  }
  return rep;
}

/// e^1..e^N (bidegree (0,0)), f^1..f^N (bidegree (1,0)) with
/// Delta e^k = -1/2 sum e^i⊗e^{k-i}, Delta f^k = -1/2 sum (f^i⊗e^{k-i} + e^i⊗f^{k-i}).
/// F0 = span{e^1, f^1}, F1 = F. No summand leaves the truncation.
template <Field K>
FilteredCoalgebra<K> build_F_lie(int N) {
  if (N < 1) throw std::invalid_argument("build_F_lie: N must be >= 1");
  std::vector<CoalgebraElement> b;
  for (int k = 1; k <= N; ++k) b.push_back({"e" + std::to_string(k), {Parity(0), 0}, k == 1, true});
  for (int k = 1; k <= N; ++k) b.push_back({"f" + std::to_string(k), {Parity(1), 0}, k == 1, true});
  FilteredCoalgebra<K> F(std::move(b));
  auto e = [](int k) { return k - 1; };
  auto f = [N](int k) { return N + k - 1; };
  const K c = -half<K>();
  for (int k = 2; k <= N; ++k)
    for (int i = 1; i < k; ++i) {
      F.add_coproduct(e(k), e(i), e(k - i), c);
      F.add_coproduct(f(k), f(i), e(k - i), c);
      F.add_coproduct(f(k), e(i), f(k - i), c);
    }
  return F;
}

inline std::string restricted_name(char letter, int i, int j) {
  return std::string(1, letter) + std::to_string(i) + "_" + std::to_string(j);
}

/// e^{i,j} (bidegree (j, j-2)), f^{i,j} (bidegree (j-1, j-2)) for i >= 1, i+j >= 2, with
/// Delta e^{p,q} = -1/2 sum e^{i,j}⊗e^{p-i,q+2-j} and the f analogue, summed over every
/// split whose two factors are basis elements. Elements with j <= 0 are kept: e^{2,0}
/// already receives e^{1,1}⊗e^{1,1}, and dropping them breaks coassociativity.
/// The weight i+j-2 is additive under Delta, so the truncation 1 <= i <= N,
/// i+j-1 <= Q is a subcoalgebra. F0 is the i = 1 span, F1 = F.
template <Field K>
FilteredCoalgebra<K> build_F_restricted(int N, int Q) {
  if (N < 1 || Q < 2) throw std::invalid_argument("build_F_restricted: need N >= 1 and Q >= 2");
  std::vector<CoalgebraElement> b;
  std::map<std::tuple<char, int, int>, int> idx;
  auto in_range = [](int i, int j) { return i >= 1 && i + j >= 2; };
  auto valid = [&](int i, int j) { return in_range(i, j) && i <= N && i + j - 1 <= Q; };
  for (char letter : {'e', 'f'})
    for (int i = 1; i <= N; ++i)
      for (int j = 2 - i; i + j - 1 <= Q; ++j) {
        idx[{letter, i, j}] = static_cast<int>(b.size());
        Parity internal = letter == 'e' ? Parity(j) : Parity(j - 1);
        b.push_back({restricted_name(letter, i, j), {internal, j - 2}, i == 1, true});
      }
  FilteredCoalgebra<K> F(std::move(b));
  const K c = -half<K>();
  for (const auto& [key, x] : idx) {
    auto [letter, p, q] = key;
    for (int i = 1; i < p; ++i)
      for (int j = 2 - i; j <= q + p - i; ++j) {
        const int l = q + 2 - j;
        if (!in_range(i, j) || !in_range(p - i, l)) continue;
        if (!valid(i, j) || !valid(p - i, l)) throw std::logic_error("build_F_restricted: summand outside the truncation");
        if (letter == 'e') {
          F.add_coproduct(x, idx.at({'e', i, j}), idx.at({'e', p - i, l}), c);
        } else {
          F.add_coproduct(x, idx.at({'f', i, j}), idx.at({'e', p - i, l}), c);
          F.add_coproduct(x, idx.at({'e', i, j}), idx.at({'f', p - i, l}), c);
        }
      }
  }
  return F;
}

/// The dual algebra G = F*: u* v* = sum over Delta x ∋ c u⊗v of c (-1)^{<v,u>} x*.
template <Field K>
struct DualAlgebra {
  std::vector<std::string> names;  // dual basis, same order as F
  std::map<std::pair<int, int>, SparseVec<K>> table;
  std::vector<std::string> violations;  // graded commutativity / associativity failures

  [[nodiscard]] SparseVec<K> multiply(int a, int b) const {
    auto it = table.find({a, b});
    return it == table.end() ? SparseVec<K>{} : it->second;
  }
  [[nodiscard]] SparseVec<K> multiply(const SparseVec<K>& a, const SparseVec<K>& b) const {
    SparseVec<K> out;
    for (const auto& [i, x] : a)
      for (const auto& [j, y] : b) axpy(out, x * y, multiply(i, j));
    return out;
  }
  [[nodiscard]] bool passed() const { return violations.empty(); }
};

template <Field K>
DualAlgebra<K> dual_algebra(const FilteredCoalgebra<K>& F, Pairing pairing = Pairing::good) {
  DualAlgebra<K> G;
  auto sign = [&](int u, int v) {
    return bidegree_pairing(F.element(u).bidegree, F.element(v).bidegree, pairing).odd() ? K(-1) : K(1);
  };
  for (int x = 0; x < F.dim(); ++x) {
    G.names.push_back(F.name(x));
    for (const auto& [uv, c] : F.coproduct(x)) {
      auto& slot = G.table[uv];
      add_to(slot, x, c * sign(uv.second, uv.first));
      if (slot.empty()) G.table.erase(uv);
    }
  }
  for (int a = 0; a < F.dim(); ++a)
    for (int b = 0; b < F.dim(); ++b) {
      auto ab = G.multiply(a, b), ba = scaled(G.multiply(b, a), sign(a, b));
      if (ab != ba) G.violations.push_back("graded commutativity fails for " + F.name(a) + ", " + F.name(b));
      for (int c = 0; c < F.dim(); ++c) {
        auto l = G.multiply(ab, SparseVec<K>{{c, K(1)}});
        auto r = G.multiply(SparseVec<K>{{a, K(1)}}, G.multiply(b, c));
        if (l != r) G.violations.push_back("associativity fails for " + F.name(a) + ", " + F.name(b) + ", " + F.name(c));
      }
    }
  return G;
}

}  // namespace infalg

#pragma once
// Z2-graded vector spaces, Z2 x Z bidegrees, Koszul signs, unshuffles and the
// canonical form of graded exterior tuples.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "infalg/linear.hpp"
#include "infalg/scalar.hpp"

namespace infalg {

/// Element of Z2.
class Parity {
 public:
  constexpr Parity() = default;
  constexpr explicit Parity(int v) : v_(static_cast<std::uint8_t>(((v % 2) + 2) % 2)) {}
  [[nodiscard]] constexpr int value() const { return v_; }
  [[nodiscard]] constexpr bool odd() const { return v_ != 0; }
  constexpr Parity& operator+=(Parity o) { v_ ^= o.v_; return *this; }
  friend constexpr Parity operator+(Parity a, Parity b) { return a += b; }
  friend constexpr Parity operator*(Parity a, Parity b) { return Parity(a.v_ & b.v_); }
  friend constexpr bool operator==(Parity, Parity) = default;

 private:
  std::uint8_t v_ = 0;
};

enum class Pairing { usual, good };

/// (internal Z2 part, external Z part).
struct Bidegree {
  Parity internal;
  int external = 0;

  /// Parity in the good grading: k + m mod 2.
  [[nodiscard]] constexpr Parity total() const { return internal + Parity(external); }
  friend constexpr bool operator==(const Bidegree&, const Bidegree&) = default;
};

/// usual: kl + mn; good: (k+m)(l+n); both mod 2.
constexpr Parity bidegree_pairing(const Bidegree& x, const Bidegree& y, Pairing kind) {
  if (kind == Pairing::usual) return x.internal * y.internal + Parity(x.external) * Parity(y.external);
  return x.total() * y.total();
}

struct BasisElement {
  std::string name;
  Parity parity;
};

/// Finite-dimensional Z2-graded space with an ordered, named homogeneous basis.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<BasisElement> basis) : basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].name.empty()) throw std::invalid_argument("empty basis name");
      if (!index_.emplace(basis_[i].name, static_cast<int>(i)).second)
        throw std::invalid_argument("duplicate basis name '" + basis_[i].name + "'");
    }
  }

  [[nodiscard]] int dim() const { return static_cast<int>(basis_.size()); }
  [[nodiscard]] const std::vector<BasisElement>& basis() const { return basis_; }
  [[nodiscard]] const std::string& name(int i) const { return basis_.at(i).name; }
  [[nodiscard]] Parity parity(int i) const { return basis_.at(i).parity; }
  [[nodiscard]] std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] int index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw std::out_of_range("unknown basis name '" + name + "'");
    return *i;
  }
  [[nodiscard]] Parity parity_of(const std::vector<int>& args) const {
    Parity p;
    for (int a : args) p += parity(a);
    return p;
  }

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    if (a.basis_.size() != b.basis_.size()) return false;
    for (std::size_t i = 0; i < a.basis_.size(); ++i)
      if (a.basis_[i].name != b.basis_[i].name || a.basis_[i].parity != b.basis_[i].parity) return false;
    return true;
  }

 private:
  std::vector<BasisElement> basis_;
  std::unordered_map<std::string, int> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

inline SpacePtr make_space(std::vector<BasisElement> basis) {
  return std::make_shared<const GradedSpace>(std::move(basis));
}

/// Vector in a graded space, as sparse coefficients on basis indices.
template <Field K>
struct Vector {
  SpacePtr space;
  SparseVec<K> coeffs;

  [[nodiscard]] bool is_zero() const { return coeffs.empty(); }
  /// Parity if homogeneous (zero counts as homogeneous of any parity: returns nullopt-free even).
  [[nodiscard]] std::optional<Parity> homogeneous_parity() const {
    std::optional<Parity> p;
    for (const auto& [i, c] : coeffs) {
      Parity q = space->parity(i);
      if (p && *p != q) return std::nullopt;
      p = q;
    }
    return p ? p : std::optional<Parity>(Parity(0));
  }
};

template <Field K>
Vector<K> basis_vector(const SpacePtr& space, const std::string& name) {
  return Vector<K>{space, SparseVec<K>{{space->index(name), K(1)}}};
}

/// A permutation in one-line notation: sigma[i] is the (0-based) original
/// position placed at position i, i.e. the reordered list is v[sigma[0]], v[sigma[1]], ...
using Permutation = std::vector<int>;

inline bool is_permutation(const Permutation& s) {
  std::vector<int> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i)) return false;
  return true;
}

/// (-1)^sigma.
inline int permutation_sign(const Permutation& s) {
  int inv = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (s[a] > s[b]) ++inv;
  return (inv % 2) ? -1 : 1;
}

/// Koszul sign epsilon(sigma; v_1..v_n): product of (-1)^{|v_a||v_b|} over
/// pairs whose relative order sigma reverses. Excludes (-1)^sigma.
inline int koszul_sign(const Permutation& s, const std::vector<Parity>& parities) {
  if (s.size() != parities.size()) throw std::invalid_argument("koszul_sign: length mismatch");
  if (!is_permutation(s)) throw std::invalid_argument("koszul_sign: not a permutation");
  int e = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (s[a] > s[b]) e += (parities[s[a]] * parities[s[b]]).value();
  return (e % 2) ? -1 : 1;
}

/// (-1)^sigma * epsilon(sigma): the sign relating v_1^...^v_n to the reordered wedge.
inline int exterior_sign(const Permutation& s, const std::vector<Parity>& parities) {
  return permutation_sign(s) * koszul_sign(s, parities);
}

/// All (k,l)-unshuffles in lexicographic order: the first k positions receive an
/// increasing subset of {0..k+l-1}, the last l the increasing complement.
inline std::vector<Permutation> unshuffles(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("unshuffles: negative size");
  const int n = k + l;
  std::vector<Permutation> out;
  std::vector<bool> choose(n, false);
  std::fill(choose.begin(), choose.begin() + k, true);
  // prev_permutation on a true-first mask enumerates subsets lexicographically.
  do {
    Permutation s;
    s.reserve(n);
    for (int i = 0; i < n; ++i)
      if (choose[i]) s.push_back(i);
    for (int i = 0; i < n; ++i)
      if (!choose[i]) s.push_back(i);
    out.push_back(std::move(s));
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return out;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Canonical representative of a graded wedge of basis elements.
struct CanonicalWedge {
  std::vector<int> tuple;  // sorted by basis index
  int sign = 1;            // args = sign * tuple in the graded exterior algebra
};

/// Sorts a tuple of basis indices, accumulating (-1)^sigma epsilon(sigma).
/// Returns nullopt when an even basis element repeats (the wedge vanishes).
inline std::optional<CanonicalWedge> canonicalize_exterior(const GradedSpace& space, const std::vector<int>& args) {
  const int n = static_cast<int>(args.size());
  for (int a : args)
    if (a < 0 || a >= space.dim()) throw std::out_of_range("canonicalize_exterior: unknown basis index");
  int e = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (args[a] > args[b]) e += 1 + (space.parity(args[a]) * space.parity(args[b])).value();
  CanonicalWedge w{args, (e % 2) ? -1 : 1};
  std::sort(w.tuple.begin(), w.tuple.end());
  for (int i = 0; i + 1 < n; ++i)
    if (w.tuple[i] == w.tuple[i + 1] && !space.parity(w.tuple[i]).odd()) return std::nullopt;
  return w;
}

inline std::optional<CanonicalWedge> canonicalize_exterior(const GradedSpace& space, const std::vector<std::string>& names) {
  std::vector<int> idx;
  idx.reserve(names.size());
  for (const auto& n : names) idx.push_back(space.index(n));
  return canonicalize_exterior(space, idx);
}

/// Every k-tuple of basis indices in lexicographic order.
inline std::vector<std::vector<int>> tensor_tuples(int dim, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0) return out;
  std::vector<int> t(k, 0);
  if (dim == 0) return k == 0 ? std::vector<std::vector<int>>{{}} : out;
  while (true) {
    out.push_back(t);
    int i = k - 1;
    while (i >= 0 && ++t[i] == dim) t[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

/// Canonical exterior k-tuples: nondecreasing, even elements not repeated.
inline std::vector<std::vector<int>> exterior_tuples(const GradedSpace& space, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> t;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(t.size()) == k) {
      out.push_back(t);
      return;
    }
    for (int i = start; i < space.dim(); ++i) {
      t.push_back(i);
      self(self, space.parity(i).odd() ? i : i + 1);
      t.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace infalg

#pragma once
// Exact linear algebra over a Field: sparse matrices, Gauss-Jordan elimination
// with lowest-index pivoting, kernels, solving with inconsistency certificates.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "infalg/scalar.hpp"

namespace infalg {

template <Field K>
using SparseVec = std::map<int, K>;

template <Field K>
void add_to(SparseVec<K>& v, int index, const K& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.try_emplace(index, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

template <Field K>
void axpy(SparseVec<K>& y, const K& a, const SparseVec<K>& x) {
  if (a.is_zero()) return;
  for (const auto& [i, c] : x) add_to(y, i, a * c);
}

template <Field K>
SparseVec<K> scaled(const SparseVec<K>& x, const K& a) {
  SparseVec<K> out;
  if (a.is_zero()) return out;
  for (const auto& [i, c] : x) out.emplace(i, c * a);
  return out;
}

/// Sparse matrix; only nonzero entries are stored.
template <Field K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, K(1));
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<K>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged rows");
      for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }

  void set(int r, int c, const K& v) {
    check(r, c);
    if (v.is_zero()) entries_.erase({r, c});
    else entries_[{r, c}] = v;
  }
  void add(int r, int c, const K& v) {
    check(r, c);
    if (v.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace({r, c}, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }
  [[nodiscard]] K get(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? K(0) : it->second;
  }
  [[nodiscard]] const std::map<std::pair<int, int>, K>& entries() const { return entries_; }

  [[nodiscard]] std::vector<SparseVec<K>> row_maps() const {
    std::vector<SparseVec<K>> out(rows_);
    for (const auto& [rc, v] : entries_) out[rc.first].emplace(rc.second, v);
    return out;
  }

  [[nodiscard]] std::vector<K> apply(const std::vector<K>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("dimension mismatch in Matrix::apply");
    std::vector<K> y(rows_, K(0));
    for (const auto& [rc, v] : entries_) y[rc.first] += v * x[rc.second];
    return y;
  }
  [[nodiscard]] std::vector<K> apply_left(const std::vector<K>& y) const {
    if (static_cast<int>(y.size()) != rows_) throw std::invalid_argument("dimension mismatch in Matrix::apply_left");
    std::vector<K> x(cols_, K(0));
    for (const auto& [rc, v] : entries_) x[rc.second] += y[rc.first] * v;
    return x;
  }

 private:
  void check(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index out of range");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::map<std::pair<int, int>, K> entries_;
};

/// Reduced row echelon form. pivots[i] is the pivot column of rows[i].
template <Field K>
struct Echelon {
  std::vector<SparseVec<K>> rows;
  std::vector<int> pivots;
};

namespace detail {

// Gauss-Jordan on rows restricted to columns < ncols. Pivot columns are chosen
// left to right; within a column the lowest-index remaining row wins.
// Returns, for each input row, its final position (rows are permuted).
template <Field K>
std::vector<int> gauss_jordan(std::vector<SparseVec<K>>& rows, int ncols, std::vector<int>& pivots) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  int next = 0;
  pivots.clear();
  for (int col = 0; col < ncols && next < n; ++col) {
    int found = -1;
    for (int r = next; r < n; ++r) {
      if (rows[r].count(col)) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    std::swap(rows[next], rows[found]);
    std::swap(order[next], order[found]);
    K inv = K(1) / rows[next].at(col);
    for (auto& [c, v] : rows[next]) v *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == next) continue;
      auto it = rows[r].find(col);
      if (it == rows[r].end()) continue;
      K f = -it->second;
      axpy(rows[r], f, rows[next]);
    }
    pivots.push_back(col);
    ++next;
  }
  return order;
}

}  // namespace detail

template <Field K>
Echelon<K> rref(const Matrix<K>& a) {
  Echelon<K> e;
  e.rows = a.row_maps();
  detail::gauss_jordan(e.rows, a.cols(), e.pivots);
  e.rows.resize(e.pivots.size());
  return e;
}

template <Field K>
int rank(const Matrix<K>& a) {
  return static_cast<int>(rref(a).pivots.size());
}

/// Basis of ker A: one vector per free column, with that coordinate set to 1.
template <Field K>
std::vector<std::vector<K>> kernel_basis(const Matrix<K>& a) {
  Echelon<K> e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<K> v(a.cols(), K(0));
    v[f] = K(1);
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      auto it = e.rows[i].find(f);
      if (it != e.rows[i].end()) v[e.pivots[i]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Either a solution x (free variables zero) or a certificate y with yA = 0, yb != 0.
template <Field K>
struct SolveResult {
  std::optional<std::vector<K>> solution;
  std::optional<std::vector<K>> certificate;
  [[nodiscard]] bool solvable() const { return solution.has_value(); }
};

template <Field K>
SolveResult<K> solve_linear(const Matrix<K>& a, const std::vector<K>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  const int m = a.rows(), n = a.cols();
  // Augmented layout: [A | b | I_m]; the identity block records row operations.
  std::vector<SparseVec<K>> rows = a.row_maps();
  for (int r = 0; r < m; ++r) {
    add_to(rows[r], n, b[r]);
    rows[r].emplace(n + 1 + r, K(1));
  }
  std::vector<int> pivots;
  detail::gauss_jordan(rows, n, pivots);

  SolveResult<K> out;
  for (int r = static_cast<int>(pivots.size()); r < m; ++r) {
    auto it = rows[r].find(n);
    if (it == rows[r].end()) continue;
    std::vector<K> y(m, K(0));
    for (auto jt = rows[r].upper_bound(n); jt != rows[r].end(); ++jt) y[jt->first - n - 1] = jt->second;
    out.certificate = std::move(y);
    return out;
  }
  std::vector<K> x(n, K(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    auto it = rows[i].find(n);
    if (it != rows[i].end()) x[pivots[i]] = it->second;
  }
  out.solution = std::move(x);
  return out;
}

/// Decomposition v = w + c, with w in span(W) and c in the span of the standard
/// basis vectors at the non-pivot positions of W's echelon form.
template <Field K>
struct QuotientCoords {
  std::vector<int> complement_basis;  // standard basis indices spanning the complement
  std::vector<K> coords;              // coordinates of c against complement_basis
  std::vector<K> subspace_part;       // w, in ambient coordinates
};

template <Field K>
QuotientCoords<K> quotient_coords(const std::vector<std::vector<K>>& subspace, int ambient_dim, const std::vector<K>& v) {
  if (static_cast<int>(v.size()) != ambient_dim) throw std::invalid_argument("quotient_coords: vector dimension mismatch");
  Matrix<K> w(static_cast<int>(subspace.size()), ambient_dim);
  for (std::size_t i = 0; i < subspace.size(); ++i) {
    if (static_cast<int>(subspace[i].size()) != ambient_dim)
      throw std::invalid_argument("quotient_coords: subspace vector dimension mismatch");
    for (int j = 0; j < ambient_dim; ++j) w.set(static_cast<int>(i), j, subspace[i][j]);
  }
  Echelon<K> e = rref(w);
  std::vector<K> part(ambient_dim, K(0));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const K& c = v[e.pivots[i]];
    if (c.is_zero()) continue;
    for (const auto& [j, x] : e.rows[i]) part[j] += c * x;
  }
  QuotientCoords<K> out;
  std::vector<bool> is_pivot(ambient_dim, false);
  for (int p : e.pivots) is_pivot[p] = true;
  for (int j = 0; j < ambient_dim; ++j) {
    if (is_pivot[j]) continue;
    out.complement_basis.push_back(j);
    out.coords.push_back(v[j] - part[j]);
  }
  out.subspace_part = std::move(part);
  return out;
}

}  // namespace infalg

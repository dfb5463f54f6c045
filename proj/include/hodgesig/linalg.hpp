#pragma once

// Dense exact linear algebra over Q and Q(i): reduced row echelon form with
// transform tracking, subspace arithmetic (vectors are rows, subspaces are row
// spans), fraction-free determinants over Q[t], congruence diagonalization of
// hermitian forms, and a Smith-type elimination over the local ring Q[t]_(t)
// used by the Jantzen filtration.

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hodgesig/arith.hpp"

namespace hodgesig {

template <class K>
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<K>> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(r, std::vector<K>(c, K(0))) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = K(1);
    return m;
  }

  std::vector<K>& operator[](int i) { return a[i]; }
  const std::vector<K>& operator[](int i) const { return a[i]; }

  Matrix transpose() const {
    Matrix m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.a[j][i] = a[i][j];
    return m;
  }

  Matrix conj_transpose() const {
    Matrix m(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.a[j][i] = conj_of(a[i][j]);
    return m;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        if (hodgesig::is_zero(x.a[i][k])) continue;
        for (int j = 0; j < y.cols; ++j) m.a[i][j] += x.a[i][k] * y.a[k][j];
      }
    return m;
  }
  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix m = x;
    for (int i = 0; i < x.rows; ++i)
      for (int j = 0; j < x.cols; ++j) m.a[i][j] += y.a[i][j];
    return m;
  }
  friend Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix difference shape mismatch");
    Matrix m = x;
    for (int i = 0; i < x.rows; ++i)
      for (int j = 0; j < x.cols; ++j) m.a[i][j] -= y.a[i][j];
    return m;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  bool is_zero() const {
    for (const auto& row : a)
      for (const auto& x : row)
        if (!hodgesig::is_zero(x)) return false;
    return true;
  }
};

template <class K>
Matrix<K> stack_rows(const Matrix<K>& top, const Matrix<K>& bottom) {
  if (top.rows == 0) return bottom;
  if (bottom.rows == 0) return top;
  if (top.cols != bottom.cols) throw std::invalid_argument("stack_rows: column count mismatch");
  Matrix<K> m(top.rows + bottom.rows, top.cols);
  m.a = top.a;
  m.a.insert(m.a.end(), bottom.a.begin(), bottom.a.end());
  return m;
}

template <class K>
Matrix<K> from_rows(const std::vector<std::vector<K>>& rows, int cols) {
  Matrix<K> m(static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != cols) throw std::invalid_argument("from_rows: ragged input");
    m.a[i] = rows[i];
  }
  return m;
}

// --- reduced row echelon form -----------------------------------------------

template <class K>
struct Rref {
  Matrix<K> r;                  // the reduced matrix
  Matrix<K> transform;          // transform * input == r
  std::vector<int> pivot_cols;  // one per nonzero row of r
};

template <class K>
Rref<K> rref(const Matrix<K>& input) {
  Rref<K> out{input, Matrix<K>::identity(input.rows), {}};
  Matrix<K>& m = out.r;
  Matrix<K>& u = out.transform;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pivot = -1;
    for (int i = row; i < m.rows; ++i)
      if (!is_zero(m.a[i][col])) { pivot = i; break; }
    if (pivot < 0) continue;
    std::swap(m.a[pivot], m.a[row]);
    std::swap(u.a[pivot], u.a[row]);
    K inv = K(1) / m.a[row][col];
    for (int j = 0; j < m.cols; ++j) m.a[row][j] = m.a[row][j] * inv;
    for (int j = 0; j < u.cols; ++j) u.a[row][j] = u.a[row][j] * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row || is_zero(m.a[i][col])) continue;
      K f = m.a[i][col];
      for (int j = 0; j < m.cols; ++j) m.a[i][j] -= f * m.a[row][j];
      for (int j = 0; j < u.cols; ++j) u.a[i][j] -= f * u.a[row][j];
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

template <class K>
int rank(const Matrix<K>& m) {
  return static_cast<int>(rref(m).pivot_cols.size());
}

/// Basis (as rows) of { x : x * m^T == 0 }, i.e. vectors annihilated by every row of m.
template <class K>
Matrix<K> null_space(const Matrix<K>& m) {
  const int n = m.cols;
  Rref<K> red = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : red.pivot_cols) is_pivot[c] = true;
  Matrix<K> basis(0, n);
  for (int free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(n, K(0));
    v[free] = K(1);
    for (size_t r = 0; r < red.pivot_cols.size(); ++r)
      v[red.pivot_cols[r]] = -red.r.a[r][free];
    basis.a.push_back(std::move(v));
    ++basis.rows;
  }
  return basis;
}

/// Canonical basis of the row span (nonzero rows of the rref).
template <class K>
Matrix<K> row_space_basis(const Matrix<K>& m) {
  Rref<K> red = rref(m);
  Matrix<K> out(0, m.cols);
  for (size_t r = 0; r < red.pivot_cols.size(); ++r) {
    out.a.push_back(red.r.a[r]);
    ++out.rows;
  }
  out.rows = static_cast<int>(out.a.size());
  return out;
}

/// Coefficient matrix X with X * basis == vectors, if every row lies in the span.
template <class K>
std::optional<Matrix<K>> express_in_rows(const Matrix<K>& basis, const Matrix<K>& vectors) {
  if (basis.cols != vectors.cols) throw std::invalid_argument("express_in_rows: ambient dimension mismatch");
  Rref<K> red = rref(basis);
  Matrix<K> coeffs(vectors.rows, basis.rows);
  for (int i = 0; i < vectors.rows; ++i) {
    std::vector<K> v = vectors.a[i];
    std::vector<K> c(red.r.rows, K(0));
    for (size_t r = 0; r < red.pivot_cols.size(); ++r) {
      K f = v[red.pivot_cols[r]];
      if (is_zero(f)) continue;
      c[r] = f;
      for (int j = 0; j < basis.cols; ++j) v[j] -= f * red.r.a[r][j];
    }
    for (const K& x : v)
      if (!is_zero(x)) return std::nullopt;  // not in the span
    // map coefficients over rref rows back to coefficients over the input rows
    for (int j = 0; j < basis.rows; ++j) {
      K acc(0);
      for (size_t r = 0; r < red.pivot_cols.size(); ++r) acc += c[r] * red.transform.a[r][j];
      coeffs.a[i][j] = acc;
    }
  }
  return coeffs;
}

// --- subspace arithmetic (subspace == row span) ------------------------------

template <class K>
bool subspace_contains(const Matrix<K>& outer, const Matrix<K>& inner) {
  if (inner.rows == 0) return true;
  return rank(stack_rows(outer, inner)) == rank(outer);
}

template <class K>
bool subspace_equal(const Matrix<K>& x, const Matrix<K>& y) {
  return rank(x) == rank(y) && subspace_contains(x, y);
}

template <class K>
Matrix<K> subspace_sum(const Matrix<K>& x, const Matrix<K>& y) {
  return row_space_basis(stack_rows(x, y));
}

/// Basis of span(x) ∩ span(y).
template <class K>
Matrix<K> subspace_intersection(const Matrix<K>& x, const Matrix<K>& y) {
  if (x.cols != y.cols) throw std::invalid_argument("subspace_intersection: ambient dimension mismatch");
  if (x.rows == 0 || y.rows == 0) return Matrix<K>(0, x.cols);
  // Solve c*x - d*y = 0; the first block of each solution gives an intersection vector.
  Matrix<K> stacked = stack_rows(x, y);
  Matrix<K> comb = null_space(stacked.transpose());  // rows (c, d) with c*x == d*y
  Matrix<K> vecs(0, x.cols);
  for (int i = 0; i < comb.rows; ++i) {
    std::vector<K> v(x.cols, K(0));
    for (int r = 0; r < x.rows; ++r)
      for (int j = 0; j < x.cols; ++j) v[j] += comb.a[i][r] * x.a[r][j];
    vecs.a.push_back(std::move(v));
    ++vecs.rows;
  }
  return row_space_basis(vecs);
}

/// Image of a row-span under the linear map v -> v * t.
template <class K>
Matrix<K> apply_to_rows(const Matrix<K>& span, const Matrix<K>& t) {
  if (span.rows == 0) return Matrix<K>(0, t.cols);
  return span * t;
}

// --- determinants ------------------------------------------------------------

/// Determinant by Bareiss fraction-free elimination; valid over any integral
/// domain with exact division (Q, Q(i), Q[t]).
template <class K, class ExactDiv>
K det_bareiss(Matrix<K> m, ExactDiv divide) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant of a non-square matrix");
  const int n = m.rows;
  if (n == 0) return K(1);
  K prev(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (is_zero(m.a[k][k])) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (!is_zero(m.a[i][k])) { swap_row = i; break; }
      if (swap_row < 0) return K(0);
      std::swap(m.a[k], m.a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.a[i][j] = divide(m.a[k][k] * m.a[i][j] - m.a[i][k] * m.a[k][j], prev);
    prev = m.a[k][k];
  }
  K d = m.a[n - 1][n - 1];
  return sign < 0 ? K(0) - d : d;
}

inline Poly poly_exact_div(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly rem = num, quot;
  quot.c.assign(std::max<size_t>(num.c.size(), 1), Rat(0));
  while (!rem.is_zero() && rem.degree() >= den.degree()) {
    int shift = rem.degree() - den.degree();
    Rat f = rem.c.back() / den.c.back();
    quot.c[shift] += f;
    Poly sub;
    sub.c.assign(shift + den.c.size(), Rat(0));
    for (size_t j = 0; j < den.c.size(); ++j) sub.c[shift + j] = f * den.c[j];
    rem -= sub;
  }
  if (!rem.is_zero()) throw std::domain_error("polynomial division was not exact");
  quot.trim();
  return quot;
}

inline Rat det(const Matrix<Rat>& m) {
  return det_bareiss<Rat>(m, [](const Rat& x, const Rat& y) { return Rat(x / y); });
}
inline GaussRat det(const Matrix<GaussRat>& m) {
  return det_bareiss<GaussRat>(m, [](const GaussRat& x, const GaussRat& y) { return x / y; });
}
inline Poly det(const Matrix<Poly>& m) { return det_bareiss<Poly>(m, poly_exact_div); }

// --- hermitian forms ---------------------------------------------------------

// Convention: a hermitian pairing on row vectors is form(x, y) = x * G * conj(y)^T,
// with G equal to its own conjugate transpose.

template <class K>
bool is_hermitian(const Matrix<K>& g) {
  if (g.rows != g.cols) return false;
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j)
      if (g.a[i][j] != conj_of(g.a[j][i])) return false;
  return true;
}

template <class K>
K form_value(const Matrix<K>& g, const std::vector<K>& x, const std::vector<K>& y) {
  K acc(0);
  for (int i = 0; i < g.rows; ++i) {
    if (is_zero(x[i])) continue;
    for (int j = 0; j < g.cols; ++j) acc += x[i] * g.a[i][j] * conj_of(y[j]);
  }
  return acc;
}

inline int real_sign(const Rat& x) { return sgn(x); }
inline int real_sign(const GaussRat& z) {
  if (sgn(z.im) != 0) throw std::domain_error("expected a real scalar");
  return sgn(z.re);
}

template <class K>
struct SignatureResult {
  int n_plus = 0, n_minus = 0, n_zero = 0;
  Matrix<K> basis;             // rows diagonalize the form: form(b_i, b_j) = delta_ij * d_i
  std::vector<int> diag_sign;  // sign of d_i per basis row (+1 / -1 / 0)
};

/// Exact congruence diagonalization of a hermitian Gram matrix. Never touches
/// floating point; zero-diagonal blocks are handled by the b_i + c*b_j basis
/// substitution that makes form(b, b) = 2|c|^2 != 0.
template <class K>
SignatureResult<K> diagonalize_hermitian(const Matrix<K>& g) {
  if (!is_hermitian(g)) throw std::invalid_argument("Gram matrix is not hermitian");
  const int n = g.rows;
  SignatureResult<K> out;
  out.basis = Matrix<K>(0, n);
  std::vector<std::vector<K>> work;  // remaining candidate basis rows
  for (int i = 0; i < n; ++i) work.push_back(Matrix<K>::identity(n).a[i]);

  auto fv = [&](const std::vector<K>& x, const std::vector<K>& y) { return form_value(g, x, y); };

  while (!work.empty()) {
    int pick = -1;
    for (size_t i = 0; i < work.size(); ++i)
      if (!is_zero(fv(work[i], work[i]))) { pick = static_cast<int>(i); break; }
    if (pick < 0) {
      // all self-pairings vanish; look for a cross term to resurrect a pivot
      int pi = -1, pj = -1;
      for (size_t i = 0; i < work.size() && pi < 0; ++i)
        for (size_t j = i + 1; j < work.size(); ++j)
          if (!is_zero(fv(work[i], work[j]))) { pi = static_cast<int>(i); pj = static_cast<int>(j); break; }
      if (pi < 0) {
        // genuinely null block: everything left is radical
        for (auto& row : work) {
          out.basis.a.push_back(row);
          ++out.basis.rows;
          out.diag_sign.push_back(0);
          ++out.n_zero;
        }
        break;
      }
      K c = fv(work[pi], work[pj]);
      for (int col = 0; col < n; ++col) work[pi][col] += c * work[pj][col];
      pick = pi;  // now form(work[pi], work[pi]) == 2|c|^2 > 0
    }
    std::vector<K> b = work[pick];
    work.erase(work.begin() + pick);
    K d = fv(b, b);
    for (auto& row : work) {
      K f = fv(row, b) / d;
      if (is_zero(f)) continue;
      for (int col = 0; col < n; ++col) row[col] -= f * b[col];
    }
    int s = real_sign(d);
    out.basis.a.push_back(std::move(b));
    ++out.basis.rows;
    out.diag_sign.push_back(s);
    if (s > 0) ++out.n_plus;
    else if (s < 0) ++out.n_minus;
    else ++out.n_zero;  // unreachable: d was checked nonzero
  }
  return out;
}

template <class K>
bool is_positive_definite(const Matrix<K>& g) {
  SignatureResult<K> s = diagonalize_hermitian(g);
  return s.n_plus == g.rows;
}

/// Orthogonal complement of span(x) inside the ambient space, w.r.t. the
/// hermitian pairing g: { v : form(v, x_r) = 0 for every row x_r }.
template <class K>
Matrix<K> orthogonal_complement(const Matrix<K>& g, const Matrix<K>& x) {
  if (x.rows == 0) return Matrix<K>::identity(g.rows);
  // form(v, x_r) = v . (g * conj(x_r)); each row of constraints is (g * conj(x_r))^T
  Matrix<K> constraints(x.rows, g.cols);
  for (int r = 0; r < x.rows; ++r)
    for (int i = 0; i < g.rows; ++i) {
      K acc(0);
      for (int j = 0; j < g.cols; ++j) acc += g.a[i][j] * conj_of(x.a[r][j]);
      constraints.a[r][i] = acc;
    }
  return null_space(constraints);
}

// --- Smith-type elimination over Q[t]_(t) -------------------------------------

struct LocalSmith {
  std::vector<int> orders;          // diagonal t-adic orders, ascending
  Matrix<Rat> row_transform_at_0;   // P(0), where P * input * Q = diag(t^orders)
};

/// Diagonalize a square matrix over the local ring Q[t]_(t), working modulo
/// t^prec. Requires prec to exceed every diagonal order (callers pass
/// ord(det) + 1). Rows of row_transform_at_0 with orders[i] >= k span the
/// reduction mod t of { x : x * M has all entries of order >= k }.
inline LocalSmith local_smith(std::vector<std::vector<Series>> m, int prec) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<Series>> p(n, std::vector<Series>(n, Series(prec, Rat(0))));
  for (int i = 0; i < n; ++i) p[i][i] = Series(prec, Rat(1));
  std::vector<int> orders;

  for (int s = 0; s < n; ++s) {
    int best_i = -1, best_j = -1, best_ord = prec;
    for (int i = s; i < n; ++i)
      for (int j = s; j < n; ++j) {
        int o = m[i][j].order();
        if (o < best_ord) { best_ord = o; best_i = i; best_j = j; }
      }
    if (best_i < 0 || best_ord >= prec)
      throw std::domain_error("local elimination ran out of precision (matrix degenerate to working order)");
    std::swap(m[best_i], m[s]);
    std::swap(p[best_i], p[s]);
    for (int i = 0; i < n; ++i) std::swap(m[i][best_j], m[i][s]);

    const int a = best_ord;
    Series unit_inv = m[s][s].shift_down(a).inverse();
    for (int i = s + 1; i < n; ++i) {
      if (m[i][s].order() >= prec) continue;
      Series q = m[i][s].shift_down(a) * unit_inv;  // m[i][s] / m[s][s], exact in the local ring
      for (int j = 0; j < n; ++j) m[i][j] = m[i][j] - q * m[s][j];
      for (int j = 0; j < n; ++j) p[i][j] = p[i][j] - q * p[s][j];
    }
    for (int j = s + 1; j < n; ++j) {
      if (m[s][j].order() >= prec) continue;
      Series q = m[s][j].shift_down(a) * unit_inv;
      for (int i = 0; i < n; ++i) m[i][j] = m[i][j] - q * m[i][s];
    }
    orders.push_back(a);
  }

  LocalSmith out;
  out.orders = orders;
  out.row_transform_at_0 = Matrix<Rat>(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.row_transform_at_0.a[i][j] = (prec > 0) ? p[i][j].c[0] : Rat(0);
  return out;
}

}  // namespace hodgesig

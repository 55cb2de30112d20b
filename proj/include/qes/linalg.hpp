#pragma once

// Small dense linear algebra kernels: row-major matrices, Cholesky
// factorization, triangular inversion, congruence transforms and a symmetric
// eigensolver (Householder tridiagonalization followed by implicit QL).
// Everything is templated on the scalar so the same code runs in double and
// in extended precision.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "qes/error.hpp"

namespace qes::linalg {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  /// Leading n x n principal block.
  Matrix leading(int n) const {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  Matrix transposed() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = static_cast<U>((*this)(i, j));
    return m;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using MatrixD = Matrix<double>;

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
  Matrix<T> z(x.rows(), y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      const T xik = x(i, k);
      for (int j = 0; j < y.cols(); ++j) z(i, j) += xik * y(k, j);
    }
  return z;
}

/// (A + A^T) / 2.
template <class T>
Matrix<T> symmetrized(const Matrix<T>& a) {
  Matrix<T> s(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s(i, j) = (a(i, j) + a(j, i)) / T(2);
  return s;
}

template <class T>
T quadratic_form(const Matrix<T>& m, const std::vector<T>& x, const std::vector<T>& y) {
  T acc(0);
  for (int i = 0; i < m.rows(); ++i) {
    T row(0);
    for (int j = 0; j < m.cols(); ++j) row += m(i, j) * y[j];
    acc += x[i] * row;
  }
  return acc;
}

/// Lower-triangular L with A = L L^T. Throws CholeskyBreakdown carrying the
/// index of the first pivot that is not safely positive; `rel_floor` is the
/// smallest admissible ratio pivot / A(j,j).
template <class T>
Matrix<T> cholesky(const Matrix<T>& a, T rel_floor = T(0)) {
  using std::sqrt;
  const int n = a.rows();
  Matrix<T> l(n, n);
  for (int j = 0; j < n; ++j) {
    T d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > rel_floor * a(j, j))) throw CholeskyBreakdown(j);
    const T ljj = sqrt(d);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      T v = a(i, j);
      for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / ljj;
    }
  }
  return l;
}

/// Inverse of a nonsingular lower-triangular matrix.
template <class T>
Matrix<T> lower_inverse(const Matrix<T>& l) {
  const int n = l.rows();
  Matrix<T> inv(n, n);
  for (int c = 0; c < n; ++c) {
    inv(c, c) = T(1) / l(c, c);
    for (int i = c + 1; i < n; ++i) {
      T v(0);
      for (int k = c; k < i; ++k) v -= l(i, k) * inv(k, c);
      inv(i, c) = v / l(i, i);
    }
  }
  return inv;
}

/// X A X^T for lower-triangular X. Entry (i,j) only involves rows/columns up
/// to max(i,j), so leading blocks of the result equal the transform of the
/// leading blocks.
template <class T>
Matrix<T> lower_congruence(const Matrix<T>& x, const Matrix<T>& a) {
  const int n = a.rows();
  Matrix<T> xa(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T v(0);
      for (int k = 0; k <= i; ++k) v += x(i, k) * a(k, j);
      xa(i, j) = v;
    }
  Matrix<T> out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      T v(0);
      for (int k = 0; k <= j; ++k) v += xa(i, k) * x(j, k);
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

template <class T>
struct SymmetricEigen {
  std::vector<T> values;  // ascending
  Matrix<T> vectors;      // column k belongs to values[k]; empty if not requested
};

namespace detail {

// Householder reduction of a symmetric matrix to tridiagonal form. On exit
// d holds the diagonal, e the subdiagonal in e[1..n-1] and v the accumulated
// orthogonal transform (EISPACK tred2 ordering).
template <class T>
void tridiagonalize(Matrix<T>& v, std::vector<T>& d, std::vector<T>& e) {
  using std::abs;
  using std::sqrt;
  const int n = v.rows();
  for (int j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    T scale(0);
    T h(0);
    for (int k = 0; k < i; ++k) scale += abs(d[k]);
    if (scale == T(0)) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = T(0);
        v(j, i) = T(0);
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      T f = d[i - 1];
      T g = sqrt(h);
      if (f > T(0)) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = T(0);

      for (int j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = T(0);
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const T hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = T(0);
      }
    }
    d[i] = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = T(1);
    const T h = d[i + 1];
    if (h != T(0)) {
      for (int k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        T g(0);
        for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (int k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) v(k, i + 1) = T(0);
  }
  for (int j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = T(0);
  }
  v(n - 1, n - 1) = T(1);
  e[0] = T(0);
}

// Implicit-shift QL on a symmetric tridiagonal matrix. e[1..n-1] holds the
// subdiagonal on entry. When `v` is non-null the rotations are accumulated
// into it.
template <class T>
void tridiagonal_ql(std::vector<T>& d, std::vector<T>& e, Matrix<T>* v) {
  using std::abs;
  using std::hypot;
  using std::sqrt;
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = T(0);

  const T eps = std::numeric_limits<T>::epsilon();
  T f(0);
  T tst1(0);
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, abs(d[l]) + abs(e[l]));
    int m = l;
    while (m < n) {
      if (abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 60 * n) throw NumericalError("tridiagonal QL failed to converge");
        T g = d[l];
        T p = (d[l + 1] - g) / (T(2) * e[l]);
        T r = hypot(p, T(1));
        if (p < T(0)) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const T dl1 = d[l + 1];
        T h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        T c(1), c2(1), c3(1);
        const T el1 = e[l + 1];
        T s(0), s2(0);
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (v != nullptr) {
            for (int k = 0; k < n; ++k) {
              h = (*v)(k, i + 1);
              (*v)(k, i + 1) = s * (*v)(k, i) + c * h;
              (*v)(k, i) = c * (*v)(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = T(0);
  }
}

}  // namespace detail

/// Eigenvalues (ascending) and, optionally, orthonormal eigenvectors of a
/// symmetric matrix. Only the lower triangle is read.
template <class T>
SymmetricEigen<T> symmetric_eigen(const Matrix<T>& a, bool want_vectors = true) {
  const int n = a.rows();
  if (a.cols() != n) throw InvalidArgument("symmetric_eigen: matrix is not square");
  SymmetricEigen<T> out;
  if (n == 0) return out;
  Matrix<T> v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      v(i, j) = a(i, j);
      v(j, i) = a(i, j);
    }
  std::vector<T> d(n), e(n);
  detail::tridiagonalize(v, d, e);
  detail::tridiagonal_ql(d, e, want_vectors ? &v : nullptr);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });
  out.values.resize(n);
  for (int k = 0; k < n; ++k) out.values[k] = d[order[k]];
  if (want_vectors) {
    out.vectors = Matrix<T>(n, n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with the
/// given diagonal and off-diagonal (off.size() == diag.size() - 1).
template <class T>
std::vector<T> tridiagonal_eigenvalues(std::vector<T> diag, const std::vector<T>& off) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) return diag;
  if (static_cast<int>(off.size()) != n - 1)
    throw InvalidArgument("tridiagonal_eigenvalues: off-diagonal length mismatch");
  std::vector<T> e(n, T(0));
  for (int i = 1; i < n; ++i) e[i] = off[i - 1];
  detail::tridiagonal_ql<T>(diag, e, nullptr);
  std::sort(diag.begin(), diag.end());
  return diag;
}

}  // namespace qes::linalg

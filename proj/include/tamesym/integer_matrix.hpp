// Copyright 2026 The tamesym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "tamesym/error.hpp"

namespace tamesym {

/// Exact integer scalar for Eigen matrices. A thin wrapper so that Eigen's
/// scalar-promotion machinery never sees the multiprecision templates.
class Integer {
 public:
  using Big = boost::multiprecision::cpp_int;

  Integer() = default;
  Integer(long long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : v_(v) {}        // NOLINT(google-explicit-constructor)
  Integer(long v) : v_(v) {}       // NOLINT(google-explicit-constructor)
  Integer(unsigned v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Integer(unsigned long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(unsigned long long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(Big v) : v_(std::move(v)) {}

  const Big& big() const { return v_; }
  bool is_zero() const { return v_.is_zero(); }
  int sign() const { return v_.sign(); }
  std::int64_t to_int64() const;
  std::string str() const { return v_.str(); }

  Integer& operator+=(const Integer& o) { v_ += o.v_; return *this; }
  Integer& operator-=(const Integer& o) { v_ -= o.v_; return *this; }
  Integer& operator*=(const Integer& o) { v_ *= o.v_; return *this; }
  Integer& operator/=(const Integer& o) { v_ /= o.v_; return *this; }
  Integer& operator%=(const Integer& o) { v_ %= o.v_; return *this; }
  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  /// Truncating division, like the built-in integers.
  friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
  friend Integer operator%(Integer a, const Integer& b) { return a %= b; }
  Integer operator-() const { return Integer(Big(-v_)); }

  friend bool operator==(const Integer& a, const Integer& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Integer& a, const Integer& b) { return a.v_ != b.v_; }
  friend bool operator<(const Integer& a, const Integer& b) { return a.v_ < b.v_; }
  friend bool operator>(const Integer& a, const Integer& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Integer& a, const Integer& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Integer& a, const Integer& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.v_; }

 private:
  Big v_;
};

Integer abs(const Integer& v);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/// Non-negative residue of a modulo m > 0.
Integer mod(const Integer& a, const Integer& m);
/// Floor division for m > 0.
Integer floor_div(const Integer& a, const Integer& m);

}  // namespace tamesym

namespace Eigen {
template <>
struct NumTraits<tamesym::Integer> : GenericNumTraits<tamesym::Integer> {
  using Real = tamesym::Integer;
  using NonInteger = tamesym::Integer;
  using Literal = tamesym::Integer;
  using Nested = tamesym::Integer;
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8,
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace tamesym {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;

/// U * M * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
template <typename Scalar>
struct SmithForm {
  Matrix<Scalar> D;
  Matrix<Scalar> U;
  Matrix<Scalar> V;
  Matrix<Scalar> U_inv;
  Matrix<Scalar> V_inv;
  int rank = 0;

  Scalar diagonal(int i) const {
    return i < D.rows() && i < D.cols() ? D(i, i) : Scalar(0);
  }
};

namespace detail {

template <typename Scalar>
Scalar scalar_abs(const Scalar& v) {
  return v < Scalar(0) ? Scalar(-v) : v;
}

template <typename Scalar>
void swap_rows(Matrix<Scalar>& A, Matrix<Scalar>& U, Matrix<Scalar>& Uinv, int i, int j) {
  if (i == j) return;
  A.row(i).swap(A.row(j));
  U.row(i).swap(U.row(j));
  Uinv.col(i).swap(Uinv.col(j));
}

template <typename Scalar>
void swap_cols(Matrix<Scalar>& A, Matrix<Scalar>& V, Matrix<Scalar>& Vinv, int i, int j) {
  if (i == j) return;
  A.col(i).swap(A.col(j));
  V.col(i).swap(V.col(j));
  Vinv.row(i).swap(Vinv.row(j));
}

// row_i += k * row_j
template <typename Scalar>
void add_row(Matrix<Scalar>& A, Matrix<Scalar>& U, Matrix<Scalar>& Uinv, int i, int j, const Scalar& k) {
  if (k == Scalar(0)) return;
  for (Eigen::Index c = 0; c < A.cols(); ++c) A(i, c) += k * A(j, c);
  for (Eigen::Index c = 0; c < U.cols(); ++c) U(i, c) += k * U(j, c);
  for (Eigen::Index r = 0; r < Uinv.rows(); ++r) Uinv(r, j) -= k * Uinv(r, i);
}

// col_i += k * col_j
template <typename Scalar>
void add_col(Matrix<Scalar>& A, Matrix<Scalar>& V, Matrix<Scalar>& Vinv, int i, int j, const Scalar& k) {
  if (k == Scalar(0)) return;
  for (Eigen::Index r = 0; r < A.rows(); ++r) A(r, i) += k * A(r, j);
  for (Eigen::Index r = 0; r < V.rows(); ++r) V(r, i) += k * V(r, j);
  for (Eigen::Index c = 0; c < Vinv.cols(); ++c) Vinv(j, c) -= k * Vinv(i, c);
}

}  // namespace detail

/// Smith normal form by pivoting on the entry of least absolute value.
/// Exact for any integer-like Scalar; the transforms and their inverses are
/// tracked so callers can move between coordinate systems.
template <typename Derived>
SmithForm<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  const int rows = static_cast<int>(M.rows());
  const int cols = static_cast<int>(M.cols());
  SmithForm<Scalar> s;
  s.D = M;
  s.U = Matrix<Scalar>::Identity(rows, rows);
  s.U_inv = Matrix<Scalar>::Identity(rows, rows);
  s.V = Matrix<Scalar>::Identity(cols, cols);
  s.V_inv = Matrix<Scalar>::Identity(cols, cols);
  auto& A = s.D;
  const int diag = std::min(rows, cols);
  int t = 0;
  for (; t < diag; ++t) {
    for (;;) {
      // Pivot: least nonzero absolute value in the trailing block.
      int pi = -1, pj = -1;
      Scalar best(0);
      for (int i = t; i < rows; ++i)
        for (int j = t; j < cols; ++j) {
          if (A(i, j) == Scalar(0)) continue;
          const Scalar a = detail::scalar_abs(A(i, j));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        s.rank = t;
        goto done;
      }
      detail::swap_rows(A, s.U, s.U_inv, t, pi);
      detail::swap_cols(A, s.V, s.V_inv, t, pj);
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (A(i, t) == Scalar(0)) continue;
        const Scalar q = A(i, t) / A(t, t);
        detail::add_row(A, s.U, s.U_inv, i, t, Scalar(-q));
        if (A(i, t) != Scalar(0)) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (A(t, j) == Scalar(0)) continue;
        const Scalar q = A(t, j) / A(t, t);
        detail::add_col(A, s.V, s.V_inv, j, t, Scalar(-q));
        if (A(t, j) != Scalar(0)) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < rows && bad < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (A(i, j) % A(t, t) != Scalar(0)) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      detail::add_row(A, s.U, s.U_inv, t, bad, Scalar(1));
    }
    if (A(t, t) < Scalar(0)) {
      for (int c = 0; c < cols; ++c) A(t, c) = -A(t, c);
      for (int c = 0; c < rows; ++c) s.U(t, c) = -s.U(t, c);
      for (int r = 0; r < rows; ++r) s.U_inv(r, t) = -s.U_inv(r, t);
    }
  }
  s.rank = t;
done:
  return s;
}

/// Integer solution x of M x = b, if one exists.
std::optional<IntVector> solve_integer(const SmithForm<Integer>& smith, const IntVector& b);
std::optional<IntVector> solve_integer(const IntMatrix& M, const IntVector& b);

/// Basis (as columns) of the integer kernel {x : M x = 0}.
IntMatrix integer_kernel(const IntMatrix& M);

/// Column basis of the lattice spanned by the columns of M (Hermite form).
IntMatrix lattice_basis(const IntMatrix& M);

/// Columns of [A | B].
IntMatrix hcat(const IntMatrix& A, const IntMatrix& B);
IntMatrix hcat(const IntMatrix& A, const IntMatrix& B, const IntMatrix& C);

IntMatrix to_int_matrix(const Matrix<std::int64_t>& m);
Matrix<std::int64_t> to_int64_matrix(const IntMatrix& m);

}  // namespace tamesym

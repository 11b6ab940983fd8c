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

#include "tamesym/integer_matrix.hpp"

#include <limits>

namespace tamesym {

std::int64_t Integer::to_int64() const {
  if (v_ > std::numeric_limits<std::int64_t>::max() || v_ < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::kCapExceeded, "integer does not fit in 64 bits");
  return static_cast<std::int64_t>(v_);
}

Integer abs(const Integer& v) { return v.sign() < 0 ? -v : v; }

Integer gcd(const Integer& a, const Integer& b) {
  return Integer(Integer::Big(boost::multiprecision::gcd(a.big(), b.big())));
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  return abs(a / gcd(a, b) * b);
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r.sign() < 0) r += m;
  return r;
}

Integer floor_div(const Integer& a, const Integer& m) {
  return (a - mod(a, m)) / m;
}

std::optional<IntVector> solve_integer(const SmithForm<Integer>& s, const IntVector& b) {
  const IntVector ub = s.U * b;
  IntVector y = IntVector::Zero(s.V.rows());
  for (Eigen::Index i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      const Integer& d = s.D(i, i);
      if (!(ub(i) % d).is_zero()) return std::nullopt;
      y(i) = ub(i) / d;
    } else if (!ub(i).is_zero()) {
      return std::nullopt;
    }
  }
  return IntVector(s.V * y);
}

std::optional<IntVector> solve_integer(const IntMatrix& M, const IntVector& b) {
  return solve_integer(smith_normal_form(M), b);
}

IntMatrix integer_kernel(const IntMatrix& M) {
  const auto s = smith_normal_form(M);
  return s.V.rightCols(M.cols() - s.rank);
}

IntMatrix lattice_basis(const IntMatrix& M) {
  IntMatrix A = M;
  const Eigen::Index rows = A.rows(), cols = A.cols();
  Eigen::Index k = 0;
  std::vector<Eigen::Index> pivot_rows;
  for (Eigen::Index i = 0; i < rows && k < cols; ++i) {
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index j = k; j < cols; ++j)
        if (!A(i, j).is_zero() && (best < 0 || abs(A(i, j)) < abs(A(i, best)))) best = j;
      if (best < 0) break;
      A.col(k).swap(A.col(best));
      bool done = true;
      for (Eigen::Index j = k + 1; j < cols; ++j) {
        if (A(i, j).is_zero()) continue;
        const Integer q = A(i, j) / A(i, k);
        A.col(j) -= A.col(k) * q;
        if (!A(i, j).is_zero()) done = false;
      }
      if (done) break;
    }
    if (k >= cols || A(i, k).is_zero()) continue;
    if (A(i, k).sign() < 0) A.col(k) = -A.col(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      const Integer q = floor_div(A(i, j), A(i, k));
      if (!q.is_zero()) A.col(j) -= A.col(k) * q;
    }
    ++k;
  }
  return A.leftCols(k);
}

IntMatrix hcat(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix out(std::max(A.rows(), B.rows()), A.cols() + B.cols());
  if (A.cols() == 0) return B.cols() == 0 ? IntMatrix(A.rows(), 0) : B;
  if (B.cols() == 0) return A;
  out << A, B;
  return out;
}

IntMatrix hcat(const IntMatrix& A, const IntMatrix& B, const IntMatrix& C) {
  return hcat(hcat(A, B), C);
}

IntMatrix to_int_matrix(const Matrix<std::int64_t>& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Integer(static_cast<long long>(m(i, j)));
  return out;
}

Matrix<std::int64_t> to_int64_matrix(const IntMatrix& m) {
  Matrix<std::int64_t> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_int64();
  return out;
}

}  // namespace tamesym

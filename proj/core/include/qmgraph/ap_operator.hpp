// Copyright 2026 The qmgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact operators on l2(N) written as finite sums of matrix-unit families
// whose row and column indices are affine in a step parameter t = 1, 2, ...
//
//   c * sum_{t>=1} E_{rs*t + ro, cs*t + co}
//
// A term with both slopes zero is a single matrix unit E_{ro,co}. Index
// arithmetic is exact (64-bit, overflow-checked); coefficients are complex
// doubles, and every coefficient used by the families in this library is 0/1.

#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <nlohmann/json.hpp>

namespace qmg {

using Complex = std::complex<double>;
using Index = std::int64_t;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr Index kUnboundedIndex = std::numeric_limits<Index>::max();

/// Affine index function i(t) = slope * t + offset.
struct IndexMap {
  Index slope = 0;
  Index offset = 1;

  Index at(Index t) const;
  /// First index produced (t = 1), or the fixed index when slope is 0.
  Index first() const { return slope == 0 ? offset : slope + offset; }

  auto operator<=>(const IndexMap&) const = default;
};

struct APTerm {
  Complex coeff{1.0, 0.0};
  IndexMap row;
  IndexMap col;

  bool is_unit() const { return row.slope == 0; }
  bool is_diagonal() const { return row == col; }
  bool operator==(const APTerm&) const = default;

  static APTerm unit(Index r, Index c, Complex coeff = 1.0);
  static APTerm progression(Index row_slope, Index row_offset, Index col_slope,
                            Index col_offset, Complex coeff = 1.0);
};

/// Throws std::invalid_argument unless the term is well formed: non-negative
/// slopes, every realized index >= 1, and either both slopes zero (a single
/// unit) or both positive.
void validate_term(const APTerm& term);

struct MatrixEntry {
  Index row = 0;
  Index col = 0;
  auto operator<=>(const MatrixEntry&) const = default;
};

class APOperator {
 public:
  APOperator() = default;
  explicit APOperator(std::vector<APTerm> terms);

  static APOperator identity();
  static APOperator unit(Index r, Index c, Complex coeff = 1.0);
  static APOperator progression(Index row_slope, Index row_offset,
                                Index col_slope, Index col_offset,
                                Complex coeff = 1.0);

  const std::vector<APTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Exact matrix entry <r| A |c>.
  Complex entry(Index r, Index c) const;

  /// Syntactic equality of canonical forms. Use `equivalent` for operator
  /// equality.
  friend bool operator==(const APOperator&, const APOperator&) = default;

 private:
  std::vector<APTerm> terms_;
};

/// Sorts terms by (row slope, row offset, col slope, col offset), merges
/// terms with identical index functions and drops zero coefficients.
std::vector<APTerm> canonical_terms(std::vector<APTerm> terms);

APOperator adjoint(const APOperator& a);
APOperator multiply(const APOperator& a, const APOperator& b);
APOperator add(const APOperator& a, const APOperator& b);
APOperator scale(Complex c, const APOperator& a);

inline APOperator operator*(const APOperator& a, const APOperator& b) {
  return multiply(a, b);
}
inline APOperator operator+(const APOperator& a, const APOperator& b) {
  return add(a, b);
}
inline APOperator operator-(const APOperator& a, const APOperator& b) {
  return add(a, scale(-1.0, b));
}

/// Smallest (row, col) entry with |value| > tol, decided exactly over the
/// whole of N x N. Empty result means the operator is zero.
std::optional<MatrixEntry> first_nonzero_entry(const APOperator& a,
                                               double tol = 1e-12);
bool is_zero(const APOperator& a, double tol = 1e-12);
bool equivalent(const APOperator& a, const APOperator& b, double tol = 1e-12);

/// True iff every term has coefficient 1, identical row and column index
/// functions, and the index sets are pairwise disjoint.
bool is_diagonal_projection(const APOperator& a);

/// Smallest index shared by two diagonal terms, if any.
std::optional<Index> first_common_index(const APTerm& p, const APTerm& q);
bool progressions_disjoint(const APTerm& p, const APTerm& q);

struct CoverReport {
  bool partition = false;
  double density = 0.0;  // sum of 1/slope over progression terms
  std::optional<Index> first_uncovered;
  std::optional<Index> first_overlap;
  Index checked_through = 0;
};

/// Exact test of whether diagonal index sets partition {1, 2, 3, ...}.
/// Multiplicities are checked up to the last starting index plus one full
/// least-common-multiple period, beyond which the pattern repeats.
CoverReport check_cover(std::span<const APTerm> progressions);
bool progressions_cover_N(std::span<const APTerm> progressions);

/// Number of progression steps retained when realizing an operator densely.
class TruncationWindow {
 public:
  explicit TruncationWindow(Index steps);
  Index steps() const { return steps_; }

 private:
  Index steps_;
};

/// Largest index realized by any term for t = 1..N (0 for the zero operator).
Index realized_extent(const APOperator& a, TruncationWindow w);

/// Rows 1..k of the truncation are complete (equal to the infinite
/// operator's rows) for every k up to the returned bound.
Index complete_row_extent(const APOperator& a, TruncationWindow w);
Index complete_col_extent(const APOperator& a, TruncationWindow w);

/// Largest k such that rows 1..k of the product of truncated factors equal
/// the rows of the exact product. Factors are listed left to right.
Index exact_row_extent(std::span<const APOperator> chain, TruncationWindow w);

DenseMatrix to_dense(const APOperator& a, TruncationWindow w);
/// Truncation padded to `dim` (must be >= realized_extent).
DenseMatrix to_dense(const APOperator& a, TruncationWindow w, Index dim);
SparseMatrix to_sparse(const APOperator& a, TruncationWindow w, Index dim);

std::string to_string(const APOperator& a);

nlohmann::json to_json(const APOperator& a);
APOperator operator_from_json(const nlohmann::json& j);

}  // namespace qmg

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

// Finite-dimensional quantum channels in Kraus form, with Choi and
// Stinespring representations and the confusability operator system.
//
// Channels built from CK path families are truncations of operators on
// l2(N); they carry an interior bound k such that the leading k x k block of
// every S_i^* S_j equals that of the infinite operators. Trace preservation,
// partial traces and the confusability span are evaluated on that block.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmgraph/ap_operator.hpp"
#include "qmgraph/ck_family.hpp"

namespace qmg {

class NotCompletelyPositive : public std::domain_error {
 public:
  NotCompletelyPositive(const std::string& what, double min_eigenvalue)
      : std::domain_error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class KrausChannel {
 public:
  /// Throws std::invalid_argument for an empty list, non-square or unequal
  /// dimensions, or an interior outside 1..dim.
  explicit KrausChannel(std::vector<DenseMatrix> kraus,
                        std::optional<Index> interior = std::nullopt);

  Index dim() const { return dim_; }
  std::size_t rank() const { return kraus_.size(); }
  const std::vector<DenseMatrix>& kraus() const { return kraus_; }
  /// Size of the leading block on which properties are evaluated.
  Index interior() const { return interior_; }
  bool truncated() const { return interior_ != dim_; }

 private:
  Index dim_ = 0;
  std::vector<DenseMatrix> kraus_;
  Index interior_ = 0;
};

/// The edge isometries of a path as Kraus operators on a common truncation.
KrausChannel channel_from_path(const CKFamily& family, const std::vector<std::string>& edge_ids,
                               TruncationWindow window);
KrausChannel channel_from_path(const CKFamily& family, const HamiltonianPath& path,
                               TruncationWindow window);

/// sum_i S_i X S_i^*
DenseMatrix apply(const KrausChannel& ch, const DenseMatrix& x);

struct TraceReport {
  bool flag = false;
  double max_deviation = 0.0;
  Index checked_through = 0;
};

/// max |(sum_i S_i^* S_i - I)_{ab}| over the interior block.
TraceReport is_trace_preserving(const KrausChannel& ch, double tol = 1e-10);

struct ChoiMatrix {
  Index dim = 0;
  DenseMatrix matrix;  // dim^2 x dim^2
};

/// sum_{ij} E_ij (x) Psi(E_ij), unnormalized. Block (i, j) is Psi(E_ij).
ChoiMatrix choi(const KrausChannel& ch);
/// Assembles a Choi matrix from the blocks Psi(E_ij) of an arbitrary linear
/// map given as a callable.
template <class Map>
ChoiMatrix choi_of_map(Index m, Map&& psi) {
  ChoiMatrix c{m, DenseMatrix::Zero(m * m, m * m)};
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      DenseMatrix e = DenseMatrix::Zero(m, m);
      e(i, j) = 1.0;
      c.matrix.block(i * m, j * m, m, m) = psi(e);
    }
  }
  return c;
}

struct PositivityReport {
  bool flag = false;
  double min_eigenvalue = 0.0;
};

/// Throws std::invalid_argument if the matrix is not Hermitian within 1e-10.
PositivityReport is_completely_positive(const ChoiMatrix& c, double tol = 1e-10);
/// The same verdict from the r x r Gram matrix of the vectorized Kraus
/// operators, whose nonzero spectrum equals that of the Choi matrix.
PositivityReport is_completely_positive(const KrausChannel& ch, double tol = 1e-10);

double hermiticity_error(const DenseMatrix& m);

/// Tr over the first tensor factor gives Psi(I); over the second, the
/// transpose of sum_i S_i^* S_i.
DenseMatrix partial_trace_first(const ChoiMatrix& c);
DenseMatrix partial_trace_second(const ChoiMatrix& c);

struct PartialTraceReport {
  double first_deviation = 0.0;   // |Tr_1 C - I|_max
  double second_deviation = 0.0;  // |Tr_2 C - I|_max
  bool first_is_identity = false;
  bool second_is_identity = false;
  Index checked_through = 0;
};

/// Both partial traces of the Choi matrix compared with the identity on the
/// interior block, computed from the Kraus operators.
PartialTraceReport choi_partial_traces(const KrausChannel& ch, double tol = 1e-10);

struct StinespringIsometry {
  Index m = 0;
  Index r = 0;
  DenseMatrix v;  // (m r) x m, row a * r + k holds row a of S_k
};

StinespringIsometry stinespring(const KrausChannel& ch);
/// (I_m (x) Tr_r)(V X V^*)
DenseMatrix stinespring_apply(const StinespringIsometry& s, const DenseMatrix& x);

struct StinespringReport {
  bool flag = false;
  double max_action_error = 0.0;
  std::optional<double> isometry_error;  // only when the channel is TP
  int samples = 0;
};

StinespringReport verify_stinespring(const KrausChannel& ch, const StinespringIsometry& s,
                                     double tol = 1e-10, std::uint64_t seed = 0,
                                     int samples = 20);

/// Eigenpairs with eigenvalue > tol, reshaped as sqrt(lambda) * v.
/// Throws NotCompletelyPositive when an eigenvalue is below -tol.
std::vector<DenseMatrix> choi_to_kraus(const ChoiMatrix& c, double tol = 1e-10);

struct ConfusabilityBasis {
  Index dim = 0;  // size of the block the products were restricted to
  std::vector<DenseMatrix> basis;
  std::size_t diagonal_dimension = 0;  // span of the S_i^* S_i alone
  double identity_residual = 0.0;
};

/// Orthonormal basis of span{S_i^* S_j} by modified Gram-Schmidt with
/// rejection threshold tol, restricted to the interior block.
ConfusabilityBasis confusability_basis(const KrausChannel& ch, double tol = 1e-10);

DenseMatrix random_complex_matrix(Index rows, Index cols, std::mt19937_64& rng);
/// r Kraus operators A_k G^{-1/2} with G = sum A_k^* A_k for Gaussian A_k.
KrausChannel random_tp_channel(Index m, Index r, std::mt19937_64& rng);

/// {"dim": m, "entries": [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const nlohmann::json& j);
/// {"kraus": [<matrix>, ...]}
KrausChannel channel_from_json(const nlohmann::json& j);
nlohmann::json to_json(const KrausChannel& ch);

}  // namespace qmg

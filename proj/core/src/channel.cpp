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

#include "qmgraph/channel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

namespace qmg {
namespace {

using ColSparse = Eigen::SparseMatrix<Complex>;

double max_abs(const DenseMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double identity_deviation(const DenseMatrix& m) {
  return max_abs(m - DenseMatrix::Identity(m.rows(), m.cols()));
}

DenseMatrix gram_sum(const KrausChannel& ch) {
  const Index k = ch.interior();
  DenseMatrix sum = DenseMatrix::Zero(k, k);
  for (const auto& s : ch.kraus()) {
    sum.noalias() += s.leftCols(k).adjoint() * s.leftCols(k);
  }
  return sum;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<DenseMatrix> kraus, std::optional<Index> interior)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  dim_ = kraus_.front().rows();
  if (dim_ == 0) throw std::invalid_argument("Kraus operators must be nonempty");
  for (const auto& s : kraus_) {
    if (s.rows() != dim_ || s.cols() != dim_) {
      throw std::invalid_argument("Kraus operators must be square of equal dimension");
    }
  }
  interior_ = interior.value_or(dim_);
  if (interior_ < 1 || interior_ > dim_) {
    throw std::invalid_argument("interior must lie in 1..dim");
  }
}

KrausChannel channel_from_path(const CKFamily& family, const std::vector<std::string>& edge_ids,
                               TruncationWindow window) {
  if (edge_ids.empty()) throw std::invalid_argument("empty path");
  std::vector<APOperator> ops;
  Index dim = 1;
  Index interior = kUnboundedIndex;
  for (const auto& id : edge_ids) {
    ops.push_back(family.isometry(id));
    dim = std::max(dim, realized_extent(ops.back(), window));
    interior = std::min(interior, complete_col_extent(ops.back(), window));
  }
  std::vector<DenseMatrix> kraus;
  for (const auto& op : ops) kraus.push_back(to_dense(op, window, dim));
  return KrausChannel(std::move(kraus), std::clamp<Index>(interior, 1, dim));
}

KrausChannel channel_from_path(const CKFamily& family, const HamiltonianPath& path,
                               TruncationWindow window) {
  return channel_from_path(family, path.edge_ids, window);
}

DenseMatrix apply(const KrausChannel& ch, const DenseMatrix& x) {
  if (x.rows() != ch.dim() || x.cols() != ch.dim()) {
    throw std::invalid_argument("input dimension does not match the channel");
  }
  DenseMatrix out = DenseMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& s : ch.kraus()) {
    const ColSparse sp = s.sparseView();
    const DenseMatrix sx_adj = (sp * x).adjoint();
    out += (sp * sx_adj).adjoint();  // S X S^* = (S (S X)^*)^*
  }
  return out;
}

TraceReport is_trace_preserving(const KrausChannel& ch, double tol) {
  TraceReport r;
  r.checked_through = ch.interior();
  r.max_deviation = identity_deviation(gram_sum(ch));
  r.flag = r.max_deviation <= tol;
  return r;
}

ChoiMatrix choi(const KrausChannel& ch) {
  return choi_of_map(ch.dim(), [&](const DenseMatrix& e) { return apply(ch, e); });
}

double hermiticity_error(const DenseMatrix& m) { return max_abs(m - m.adjoint()); }

PositivityReport is_completely_positive(const ChoiMatrix& c, double tol) {
  if (hermiticity_error(c.matrix) > 1e-10) {
    throw std::invalid_argument("Choi matrix is not Hermitian");
  }
  PositivityReport r;
  if (c.matrix.size() == 0) {
    r.flag = true;
    return r;
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(c.matrix, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  if (std::abs(r.min_eigenvalue) < 1e-300) r.min_eigenvalue = 0.0;
  r.flag = r.min_eigenvalue >= -tol;
  return r;
}

PositivityReport is_completely_positive(const KrausChannel& ch, double tol) {
  const auto r = static_cast<Index>(ch.rank());
  DenseMatrix gram(r, r);
  for (Index a = 0; a < r; ++a) {
    for (Index b = 0; b < r; ++b) {
      gram(a, b) = ch.kraus()[a].conjugate().cwiseProduct(ch.kraus()[b]).sum();
    }
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(gram, Eigen::EigenvaluesOnly);
  PositivityReport out;
  out.min_eigenvalue = es.eigenvalues().minCoeff();
  if (r < ch.dim() * ch.dim()) out.min_eigenvalue = std::min(out.min_eigenvalue, 0.0);
  if (std::abs(out.min_eigenvalue) <= 1e-15) out.min_eigenvalue = 0.0;
  out.flag = out.min_eigenvalue >= -tol;
  return out;
}

DenseMatrix partial_trace_first(const ChoiMatrix& c) {
  const Index m = c.dim;
  DenseMatrix out = DenseMatrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) out += c.matrix.block(i * m, i * m, m, m);
  return out;
}

DenseMatrix partial_trace_second(const ChoiMatrix& c) {
  const Index m = c.dim;
  DenseMatrix out(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) out(i, j) = c.matrix.block(i * m, j * m, m, m).trace();
  }
  return out;
}

PartialTraceReport choi_partial_traces(const KrausChannel& ch, double tol) {
  PartialTraceReport r;
  const Index k = ch.interior();
  r.checked_through = k;
  DenseMatrix first = DenseMatrix::Zero(k, k);
  for (const auto& s : ch.kraus()) first.noalias() += s.topRows(k) * s.topRows(k).adjoint();
  r.first_deviation = identity_deviation(first);
  r.second_deviation = identity_deviation(gram_sum(ch).transpose());
  r.first_is_identity = r.first_deviation <= tol;
  r.second_is_identity = r.second_deviation <= tol;
  return r;
}

StinespringIsometry stinespring(const KrausChannel& ch) {
  StinespringIsometry s;
  s.m = ch.dim();
  s.r = static_cast<Index>(ch.rank());
  s.v = DenseMatrix::Zero(s.m * s.r, s.m);
  for (Index k = 0; k < s.r; ++k) {
    for (Index a = 0; a < s.m; ++a) s.v.row(a * s.r + k) = ch.kraus()[k].row(a);
  }
  return s;
}

DenseMatrix stinespring_apply(const StinespringIsometry& s, const DenseMatrix& x) {
  if (x.rows() != s.m || x.cols() != s.m) {
    throw std::invalid_argument("input dimension does not match the isometry");
  }
  // Only the diagonal environment blocks of V X V^* survive the trace.
  const ColSparse v = s.v.sparseView();
  const DenseMatrix vx = v * x;
  DenseMatrix out = DenseMatrix::Zero(s.m, s.m);
  for (Index k = 0; k < s.r; ++k) {
    const auto rows = Eigen::seqN(k, s.m, s.r);
    const ColSparse vk = DenseMatrix(s.v(rows, Eigen::all)).sparseView();
    const DenseMatrix vx_adj = vx(rows, Eigen::all).adjoint();
    out += (vk * vx_adj).adjoint();
  }
  return out;
}

StinespringReport verify_stinespring(const KrausChannel& ch, const StinespringIsometry& s,
                                     double tol, std::uint64_t seed, int samples) {
  if (s.m != ch.dim()) throw std::invalid_argument("isometry does not match the channel");
  StinespringReport r;
  r.samples = samples;
  std::mt19937_64 rng(seed);
  for (int n = 0; n < samples; ++n) {
    const DenseMatrix x = random_complex_matrix(s.m, s.m, rng);
    r.max_action_error = std::max(r.max_action_error, max_abs(apply(ch, x) - stinespring_apply(s, x)));
  }
  r.flag = r.max_action_error <= tol;
  if (is_trace_preserving(ch, tol).flag) {
    const Index k = ch.interior();
    const DenseMatrix vv = s.v.leftCols(k).adjoint() * s.v.leftCols(k);
    r.isometry_error = identity_deviation(vv);
    r.flag = r.flag && *r.isometry_error <= tol;
  }
  return r;
}

std::vector<DenseMatrix> choi_to_kraus(const ChoiMatrix& c, double tol) {
  const auto cp = is_completely_positive(c, tol);
  if (!cp.flag) {
    throw NotCompletelyPositive("Choi matrix has a negative eigenvalue", cp.min_eigenvalue);
  }
  const Index m = c.dim;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(c.matrix);
  std::vector<DenseMatrix> out;
  for (Index n = es.eigenvalues().size() - 1; n >= 0; --n) {
    const double lambda = es.eigenvalues()(n);
    if (lambda <= tol) break;
    const auto v = es.eigenvectors().col(n);
    DenseMatrix s(m, m);
    for (Index i = 0; i < m; ++i) {
      for (Index a = 0; a < m; ++a) s(a, i) = std::sqrt(lambda) * v(i * m + a);
    }
    out.push_back(std::move(s));
  }
  return out;
}

ConfusabilityBasis confusability_basis(const KrausChannel& ch, double tol) {
  const Index k = ch.interior();
  ConfusabilityBasis out;
  out.dim = k;
  std::vector<Eigen::VectorXcd> ortho;
  const auto insert = [&](const DenseMatrix& p) {
    Eigen::VectorXcd v = p.reshaped();
    for (const auto& q : ortho) v -= q.dot(v) * q;
    for (const auto& q : ortho) v -= q.dot(v) * q;
    const double norm = v.norm();
    if (norm <= tol) return false;
    ortho.push_back(v / norm);
    return true;
  };
  const auto product = [&](std::size_t i, std::size_t j) -> DenseMatrix {
    return ch.kraus()[i].leftCols(k).adjoint() * ch.kraus()[j].leftCols(k);
  };
  for (std::size_t i = 0; i < ch.rank(); ++i) insert(product(i, i));
  out.diagonal_dimension = ortho.size();
  for (std::size_t i = 0; i < ch.rank(); ++i) {
    for (std::size_t j = 0; j < ch.rank(); ++j) {
      if (i != j) insert(product(i, j));
    }
  }
  for (const auto& q : ortho) out.basis.push_back(q.reshaped(k, k));

  Eigen::VectorXcd id = DenseMatrix::Identity(k, k).reshaped();
  for (const auto& q : ortho) id -= q.dot(id) * q;
  out.identity_residual = id.norm();
  return out;
}

DenseMatrix random_complex_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      m(r, c) = Complex(re, normal(rng));
    }
  }
  return m;
}

KrausChannel random_tp_channel(Index m, Index r, std::mt19937_64& rng) {
  if (m < 1 || r < 1) throw std::invalid_argument("channel dimensions must be positive");
  std::vector<DenseMatrix> a;
  DenseMatrix g = DenseMatrix::Zero(m, m);
  for (Index k = 0; k < r; ++k) {
    a.push_back(random_complex_matrix(m, m, rng));
    g += a.back().adjoint() * a.back();
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(g);
  const DenseMatrix inv_sqrt = es.operatorInverseSqrt();
  for (auto& s : a) s = s * inv_sqrt;
  return KrausChannel(std::move(a));
}

nlohmann::json matrix_to_json(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  nlohmann::json entries = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return {{"dim", m.rows()}, {"entries", entries}};
}

DenseMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto dim = j.at("dim").get<Index>();
    const auto& entries = j.at("entries");
    if (dim < 1 || dim > 4096) throw std::invalid_argument("matrix dim out of range");
    if (!entries.is_array() || static_cast<Index>(entries.size()) != dim * dim) {
      throw std::invalid_argument("matrix needs dim*dim entries");
    }
    DenseMatrix m(dim, dim);
    for (Index n = 0; n < dim * dim; ++n) {
      const auto& e = entries[static_cast<std::size_t>(n)];
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("entry must be [re, im]");
      const Complex z(e[0].get<double>(), e[1].get<double>());
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("matrix entry is not finite");
      }
      m(n / dim, n % dim) = z;
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed matrix JSON: ") + e.what());
  }
}

KrausChannel channel_from_json(const nlohmann::json& j) {
  try {
    std::vector<DenseMatrix> kraus;
    for (const auto& m : j.at("kraus")) kraus.push_back(matrix_from_json(m));
    return KrausChannel(std::move(kraus));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed channel JSON: ") + e.what());
  }
}

nlohmann::json to_json(const KrausChannel& ch) {
  nlohmann::json kraus = nlohmann::json::array();
  for (const auto& s : ch.kraus()) kraus.push_back(matrix_to_json(s));
  return {{"kraus", kraus}};
}

}  // namespace qmg

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

#include "qmgraph/qubit.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/SVD>

namespace qmg {
namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

RowMajorMatrix split(const StateVector& v, Index rows) {
  return Eigen::Map<const RowMajorMatrix>(v.data(), rows, v.size() / rows);
}

Complex phase_of(const QubitFactor& f) {
  const Index k = std::abs(f(0)) >= std::abs(f(1)) ? 0 : 1;
  return f(k) / std::abs(f(k));
}

nlohmann::json complex_list(const StateVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back({v(k).real(), v(k).imag()});
  return out;
}

}  // namespace

QubitState make_state(int q, StateVector amplitudes) {
  if (q < 1 || q > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  if (amplitudes.size() != (Index{1} << q)) {
    throw std::invalid_argument("state needs 2^q amplitudes");
  }
  if (!amplitudes.allFinite()) throw std::invalid_argument("amplitudes must be finite");
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw std::invalid_argument("zero vector is not a state");
  if (std::abs(norm - 1.0) > 1e-9) throw std::invalid_argument("state is not normalized");
  QubitState s;
  s.q = q;
  s.norm_deviation = std::abs(norm - 1.0);
  s.amplitudes = amplitudes / norm;
  return s;
}

Eigen::VectorXd schmidt_coefficients(const QubitState& s, int cut) {
  if (cut < 1 || cut > s.q - 1) throw std::invalid_argument("cut must lie in 1..q-1");
  const RowMajorMatrix m = split(s.amplitudes, Index{1} << cut);
  return Eigen::JacobiSVD<RowMajorMatrix>(m).singularValues();
}

int schmidt_rank(const QubitState& s, int cut, double tol) {
  const auto sv = schmidt_coefficients(s, cut);
  return static_cast<int>((sv.array() > tol).count());
}

StateVector tensor_product(const std::vector<QubitFactor>& factors) {
  StateVector v = StateVector::Ones(1);
  for (const auto& f : factors) {
    StateVector next(v.size() * 2);
    for (Index k = 0; k < v.size(); ++k) {
      next(2 * k) = v(k) * f(0);
      next(2 * k + 1) = v(k) * f(1);
    }
    v = std::move(next);
  }
  return v;
}

double distance_up_to_phase(const StateVector& a, const StateVector& b) {
  const Complex overlap = b.dot(a);  // b^* a
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a - phase * b).norm();
}

FactorizationResult factor_product(const QubitState& s, double tol) {
  FactorizationResult r;
  for (int cut = 1; cut < s.q; ++cut) {
    if (schmidt_rank(s, cut, tol) != 1) {
      r.failing_cut = cut;
      return r;
    }
  }
  r.is_product = true;
  std::vector<QubitFactor> factors;
  StateVector rest = s.amplitudes;
  for (int k = 0; k + 1 < s.q; ++k) {
    const RowMajorMatrix m = split(rest, 2);
    Eigen::JacobiSVD<RowMajorMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    factors.push_back(svd.matrixU().col(0));
    rest = svd.singularValues()(0) * svd.matrixV().col(0).conjugate();
  }
  factors.push_back(rest.normalized());
  for (std::size_t k = 1; k < factors.size(); ++k) {
    const Complex p = phase_of(factors[k]);
    factors[k] /= p;
    factors[0] *= p;
  }
  r.reconstruction_error = (tensor_product(factors) - s.amplitudes).norm();
  r.factors = std::move(factors);
  return r;
}

QubitState restricted_state(int q, const std::vector<int>& exponents) {
  if (q < 1 || q > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  if (exponents.size() != (std::size_t{1} << q)) {
    throw std::invalid_argument("state needs 2^q amplitudes");
  }
  static const Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const double scale = std::pow(2.0, -0.5 * q);
  StateVector v(static_cast<Index>(exponents.size()));
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    v(static_cast<Index>(k)) = scale * kPowers[((exponents[k] % 4) + 4) % 4];
  }
  return make_state(q, std::move(v));
}

ClaimReport test_restricted_amplitude_claim(int q, ClaimMode mode, std::size_t samples,
                                            std::uint64_t seed, double tol) {
  if (q < 2 || q > kMaxQubits) throw std::invalid_argument("claim test needs q in 2..20");
  ClaimReport r;
  r.q = q;
  r.mode = mode;
  r.seed = seed;
  const std::size_t len = std::size_t{1} << q;
  const auto classify = [&](const std::vector<int>& exponents) {
    ++r.total;
    const auto s = restricted_state(q, exponents);
    ++r.valid;
    if (factor_product(s, tol).is_product) {
      ++r.product_count;
    } else {
      ++r.entangled_count;
      if (r.counterexamples.size() < 10) r.counterexamples.push_back(exponents);
    }
  };
  if (mode == ClaimMode::exhaustive) {
    if (q != 2) throw std::invalid_argument("exhaustive mode is limited to q = 2; use sampled");
    std::vector<int> exponents(len);
    for (std::size_t code = 0; code < (std::size_t{1} << (2 * len)); ++code) {
      for (std::size_t k = 0; k < len; ++k) exponents[k] = static_cast<int>((code >> (2 * (len - 1 - k))) & 3);
      classify(exponents);
    }
    return r;
  }
  if (samples == 0) throw std::invalid_argument("sampled mode needs a positive sample count");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> digit(0, 3);
  std::vector<int> exponents(len);
  for (std::size_t n = 0; n < samples; ++n) {
    for (auto& e : exponents) e = digit(rng);
    classify(exponents);
  }
  return r;
}

DimensionRecord dimension_bookkeeping(int i) {
  if (i < 2 || i > 17) throw std::invalid_argument("dimension bookkeeping needs i in 2..17");
  DimensionRecord r;
  r.i = i;
  r.k = 2 * i - 3;
  r.subsystem_qubits = r.k;
  r.state_dim = std::int64_t{1} << (4 * i - 6);
  return r;
}

QubitState state_from_json(const nlohmann::json& j) {
  try {
    const int q = j.at("q").get<int>();
    if (q < 1 || q > kMaxQubits) throw std::invalid_argument("qubit count out of range");
    const auto& a = j.at("amplitudes");
    if (!a.is_array()) throw std::invalid_argument("amplitudes must be an array");
    StateVector v(static_cast<Index>(a.size()));
    for (std::size_t k = 0; k < a.size(); ++k) {
      const auto& z = a[k];
      if (!z.is_array() || z.size() != 2) throw std::invalid_argument("amplitude must be [re, im]");
      v(static_cast<Index>(k)) = Complex(z[0].get<double>(), z[1].get<double>());
    }
    return make_state(q, std::move(v));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed state JSON: ") + e.what());
  }
}

nlohmann::json to_json(const QubitState& s) {
  return {{"q", s.q}, {"amplitudes", complex_list(s.amplitudes)}};
}

nlohmann::json to_json(const FactorizationResult& r) {
  nlohmann::json factors = nullptr;
  if (r.factors) {
    factors = nlohmann::json::array();
    for (const auto& f : *r.factors) factors.push_back(complex_list(f));
  }
  return {{"isProduct", r.is_product},
          {"factors", factors},
          {"failingCut", r.failing_cut ? nlohmann::json(*r.failing_cut) : nlohmann::json(nullptr)},
          {"reconstructionError", r.reconstruction_error}};
}

nlohmann::json to_json(const ClaimReport& r) {
  nlohmann::json examples = nlohmann::json::array();
  const double scale = std::pow(2.0, -0.5 * r.q);
  for (const auto& ex : r.counterexamples) {
    examples.push_back({{"exponents", ex},
                        {"amplitudes", complex_list(restricted_state(r.q, ex).amplitudes)}});
  }
  return {{"q", r.q},
          {"mode", r.mode == ClaimMode::exhaustive ? "exhaustive" : "sampled"},
          {"seed", r.seed},
          {"amplitudeModulus", scale},
          {"total", r.total},
          {"valid", r.valid},
          {"productCount", r.product_count},
          {"entangledCount", r.entangled_count},
          {"counterexamples", examples}};
}

nlohmann::json to_json(const DimensionRecord& r) {
  return {{"i", r.i}, {"k", r.k}, {"subsystemQubits", r.subsystem_qubits}, {"stateDim", r.state_dim}};
}

}  // namespace qmg

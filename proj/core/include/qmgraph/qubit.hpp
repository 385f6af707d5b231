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

// Pure q-qubit states, Schmidt ranks across the cuts 1..q-1, product-state
// factorization, and the restricted-amplitude classification test.
//
// Basis index k has the first qubit as its most significant bit, so the
// cut-c amplitude matrix is 2^c x 2^(q-c) with row index k >> (q - c).

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qmgraph/ap_operator.hpp"

namespace qmg {

using StateVector = Eigen::VectorXcd;
using QubitFactor = Eigen::Vector2cd;

inline constexpr int kMaxQubits = 20;

struct QubitState {
  int q = 1;
  StateVector amplitudes;
  double norm_deviation = 0.0;  // |norm - 1| before renormalization
};

/// Throws std::invalid_argument for q outside 1..kMaxQubits, a length other
/// than 2^q, a zero vector or a norm further than 1e-9 from 1.
QubitState make_state(int q, StateVector amplitudes);

/// Singular values of the 2^cut x 2^(q-cut) amplitude matrix.
Eigen::VectorXd schmidt_coefficients(const QubitState& s, int cut);
int schmidt_rank(const QubitState& s, int cut, double tol = 1e-10);

struct FactorizationResult {
  bool is_product = false;
  std::optional<std::vector<QubitFactor>> factors;
  std::optional<int> failing_cut;
  double reconstruction_error = 0.0;
};

/// Product iff the Schmidt rank is 1 at every cut. Factors are unit vectors;
/// the global phase is carried by the first one.
FactorizationResult factor_product(const QubitState& s, double tol = 1e-10);

StateVector tensor_product(const std::vector<QubitFactor>& factors);
/// min over phases |a - e^{i phi} b|
double distance_up_to_phase(const StateVector& a, const StateVector& b);

enum class ClaimMode { exhaustive, sampled };

struct ClaimReport {
  int q = 2;
  ClaimMode mode = ClaimMode::exhaustive;
  std::uint64_t seed = 0;
  std::size_t total = 0;
  std::size_t valid = 0;
  std::size_t product_count = 0;
  std::size_t entangled_count = 0;
  /// Exponents k_j of the amplitudes i^{k_j} 2^{-q/2}, at most ten.
  std::vector<std::vector<int>> counterexamples;
};

/// Classifies states whose amplitudes all lie in {+-2^{-q/2}, +-i 2^{-q/2}}.
/// Exhaustive mode is limited to q = 2; sampled mode draws `samples` states.
ClaimReport test_restricted_amplitude_claim(int q, ClaimMode mode, std::size_t samples = 0,
                                            std::uint64_t seed = 0, double tol = 1e-10);
QubitState restricted_state(int q, const std::vector<int>& exponents);

struct DimensionRecord {
  int i = 2;
  int k = 1;
  int subsystem_qubits = 1;
  std::int64_t state_dim = 4;
};

/// k = 2i - 3 qubits and state dimension 2^(4i - 6).
DimensionRecord dimension_bookkeeping(int i);

/// {"q": q, "amplitudes": [[re, im], ...]}
QubitState state_from_json(const nlohmann::json& j);
nlohmann::json to_json(const QubitState& s);
nlohmann::json to_json(const FactorizationResult& r);
nlohmann::json to_json(const ClaimReport& r);
nlohmann::json to_json(const DimensionRecord& r);

}  // namespace qmg

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

// Cuntz-Krieger families of partial isometries on l2(N) attached to the
// relation graphs, and an adjudicating verifier that checks every relation
// twice: exactly through the AP operator algebra and numerically on dense
// truncations.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmgraph/ap_operator.hpp"
#include "qmgraph/relation_graph.hpp"

namespace qmg {

/// A Hamiltonian path as listed alongside a family: the printed labels and
/// the edge ids they resolve to.
struct NamedPath {
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::string> edge_ids;
};

/// S^* S when `adjoint_first`, S S^* otherwise.
struct ProductTerm {
  std::string edge;
  bool adjoint_first = true;
};
using PrintedSum = std::vector<ProductTerm>;

/// A displayed chain P_v = X_1 = X_2 = ... where each X_k is a sum of
/// products. Every link is checked separately.
struct PrintedIdentity {
  Vertex vertex;
  std::vector<PrintedSum> chain;
};

class CKFamily {
 public:
  /// Throws std::invalid_argument unless every graph edge has an isometry
  /// and every alias resolves to an edge.
  CKFamily(std::string name, DirectedMultigraph graph,
           std::map<std::string, APOperator> isometries,
           std::map<std::string, std::string> aliases = {},
           std::vector<NamedPath> listed_paths = {},
           std::vector<PrintedIdentity> printed = {},
           std::vector<std::string> errata = {});

  const std::string& name() const { return name_; }
  const DirectedMultigraph& graph() const { return graph_; }
  const std::map<std::string, APOperator>& isometries() const { return isometries_; }
  const std::vector<NamedPath>& listed_paths() const { return listed_paths_; }
  const std::vector<PrintedIdentity>& printed_identities() const { return printed_; }
  const std::vector<std::string>& errata() const { return errata_; }

  /// Edge id for an id or alias; throws std::out_of_range if unknown.
  const std::string& resolve(std::string_view id_or_alias) const;
  const APOperator& isometry(std::string_view id_or_alias) const;
  /// The id itself followed by its aliases, sorted.
  std::vector<std::string> aliases_of(std::string_view id_or_alias) const;

  /// P_v = S_e^* S_e for the first edge into v; for vertices with no incoming
  /// edge, the sum of S_e S_e^* over edges leaving v.
  const std::map<Vertex, APOperator>& vertex_projections() const { return projections_; }

 private:
  std::string name_;
  DirectedMultigraph graph_;
  std::map<std::string, APOperator> isometries_;
  std::map<std::string, std::string> aliases_;
  std::vector<NamedPath> listed_paths_;
  std::vector<PrintedIdentity> printed_;
  std::vector<std::string> errata_;
  std::map<Vertex, APOperator> projections_;
};

/// The six isometries attached to G(Pi_2), keyed by the edge labels e..j.
CKFamily family_pi2();
/// The G(Pi_3) family keyed by alias-group label, with its six listed
/// Hamiltonian paths and the displayed projection identities.
CKFamily family_pi3();

/// {"family": name, "n": n, "isometries": {id: <operator JSON>, ...}}
CKFamily family_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CKFamily& family);

enum class CheckKind {
  partial_isometry,
  range_orthogonality,
  sstar_s_equals_ptarget,
  vertex_sum,
  path_completeness,
};
std::string_view to_string(CheckKind kind);

enum class Verdict { pass, fail };
std::string_view to_string(Verdict v);

struct Witness {
  MatrixEntry entry;
  std::string reason;
};

struct CheckRecord {
  std::string id;
  CheckKind kind = CheckKind::partial_isometry;
  std::string relation;
  Verdict symbolic = Verdict::pass;
  Verdict numeric = Verdict::pass;
  std::optional<Witness> witness;
  std::optional<Witness> numeric_witness;
  /// Rows 1..interior of the truncations were compared.
  Index interior = 0;

  bool agrees() const { return symbolic == numeric; }
};

struct VerificationReport {
  std::string family;
  Index window = 0;
  std::vector<CheckRecord> checks;  // sorted by id
  std::vector<std::string> errata;

  std::size_t failures() const;
  std::size_t disagreements() const;
  bool all_pass() const { return failures() == 0; }
  const CheckRecord* find(std::string_view id) const;
  /// Smallest and largest compared interior over all checks.
  std::pair<Index, Index> interior_range() const;
};

VerificationReport verify_ck(const CKFamily& family, TruncationWindow window);

/// sum over path edges of S^* S equals the identity, decided by the exact AP
/// cover test and cross-checked on the truncation.
CheckRecord path_completeness(const CKFamily& family, const HamiltonianPath& path,
                              TruncationWindow window = TruncationWindow(64));
CheckRecord path_completeness(const CKFamily& family, std::string_view name,
                              const std::vector<std::string>& edge_ids,
                              TruncationWindow window = TruncationWindow(64));

nlohmann::json to_json(const CheckRecord& check);
nlohmann::json to_json(const VerificationReport& report);

/// h_2 = 3, h_{n+1} = h_n + 2n + 1.
Index h_sequence(int n);

struct GeneralFamilyTemplate {
  int n = 2;
  Index column_modulus = 0;    // h_n = n^2 - 1
  Index edge_index_bound = 0;  // (n^3 + n^2)(n - 1) / 2
  Index column_shift_max = 0;  // D ranges over 0..n^2 - 2
  std::vector<int> exit_degrees;
  std::vector<Index> row_moduli;  // degree * (n^2 - 1) per exit degree
  Index row_shift_max = 0;        // A ranges over 0..max degree * (n^2 - 1)
};

/// Parameter ranges of the general family. No concrete isometries are
/// synthesized: the per-edge assignment of the row parameters is not fixed.
GeneralFamilyTemplate template_for(int n);

}  // namespace qmg

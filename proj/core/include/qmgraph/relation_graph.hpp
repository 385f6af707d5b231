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

// The relation graphs G(Pi_n) of the n x n quantum matrix coordinate ring.
//
// Vertices are the generators x_ij. For two distinct generators the edge rule
// follows the defining relations:
//   same row    x_ij, x_il (j < l): one edge x_ij -> x_il
//   same column x_ij, x_kj (i < k): one edge x_ij -> x_kj
//   antidiagonal x_ij, x_kl (i < k, j > l): edges in both directions
//   diagonal    x_ij, x_kl (i < k, j < l): no edge

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qmg {

struct Vertex {
  int row = 1;
  int col = 1;

  std::string label() const;
  auto operator<=>(const Vertex&) const = default;
};

struct Edge {
  std::string id;
  Vertex source;
  Vertex target;

  bool operator==(const Edge&) const = default;
};

/// Immutable labeled digraph on the vertices x_ij, 1 <= i, j <= n.
/// Construction rejects self-loops, duplicate ids, unknown endpoints and
/// repeated (source, target) pairs.
class DirectedMultigraph {
 public:
  DirectedMultigraph(int n, std::vector<Vertex> vertices, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<std::size_t> vertex_index(Vertex v) const;
  const Edge* find_edge(std::string_view id) const;
  /// Out-edges sorted by (target, id).
  std::vector<const Edge*> out_edges(Vertex v) const;
  std::vector<const Edge*> in_edges(Vertex v) const;
  int out_degree(Vertex v) const;
  int in_degree(Vertex v) const;

  /// The unique vertex with in-degree 0 (resp. out-degree 0), if exactly one.
  std::optional<Vertex> unique_source() const;
  std::optional<Vertex> unique_sink() const;

  bool operator==(const DirectedMultigraph&) const = default;

 private:
  int n_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
};

/// Edge ids: the figure labels e..j for n = 2, the alias-group labels of the
/// Pi_3 family for n = 3, and "r:", "c:", "a:" rule-class ids for n >= 4.
DirectedMultigraph build_graph(int n);

/// Entry (u, v) is the number of edges u -> v in vertex order.
using AdjacencyMatrix = Eigen::MatrixXi;
AdjacencyMatrix adjacency_matrix(const DirectedMultigraph& g);

struct GraphStats {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::optional<Vertex> source;
  std::optional<Vertex> sink;
  int source_out_degree = 0;
  int sink_in_degree = 0;
};
GraphStats graph_stats(const DirectedMultigraph& g);

/// n^2 (n^2 - 1) / 2, which equals (n^3 + n^2)(n - 1) / 2.
std::int64_t expected_edge_count(int n);

struct HamiltonianPath {
  std::vector<std::string> edge_ids;
  std::vector<Vertex> vertices;

  bool operator==(const HamiltonianPath&) const = default;
};

/// Checks every HamiltonianPath invariant against `g`.
bool is_hamiltonian_path(const DirectedMultigraph& g, const HamiltonianPath& p);

/// Depth-first enumeration starting from the unique source (or from every
/// vertex when there is none), exploring out-edges in target order. The
/// visitor returns false to stop early.
void for_each_hamiltonian_path(const DirectedMultigraph& g,
                               const std::function<bool(const HamiltonianPath&)>& visit);

std::vector<HamiltonianPath> enumerate_hamiltonian_paths(
    const DirectedMultigraph& g, std::size_t limit = SIZE_MAX);

struct HamiltonianCount {
  std::uint64_t labeled_paths = 0;
  std::uint64_t vertex_sequences = 0;
};

/// Exact count by dynamic programming over visited subsets. Supports graphs
/// with at most 24 vertices besides a fixed source and sink.
HamiltonianCount count_hamiltonian_paths(const DirectedMultigraph& g);

/// The closed form 4n - 6 asserted for the number of Hamiltonian paths.
std::int64_t claimed_hamiltonian_count(int n);

enum class GraphFormat { dot, json };
GraphFormat parse_graph_format(std::string_view name);

std::string export_graph(const DirectedMultigraph& g, GraphFormat format);
DirectedMultigraph parse_graph(std::string_view json_text);

}  // namespace qmg

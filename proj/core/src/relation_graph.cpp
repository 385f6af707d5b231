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

#include "qmgraph/relation_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qmg {
namespace {

struct LabelEntry {
  Vertex source;
  Vertex target;
  const char* id;
};

// Labels of the G(Pi_2) drawing.
constexpr LabelEntry kPi2Labels[] = {
    {{1, 1}, {1, 2}, "e"}, {{1, 1}, {2, 1}, "f"}, {{1, 2}, {2, 2}, "h"},
    {{2, 1}, {2, 2}, "g"}, {{1, 2}, {2, 1}, "i"}, {{2, 1}, {1, 2}, "j"},
};

// One label per arc of the Pi_3 drawing: the first member of each alias
// group, or the arc number for arcs outside the six listed paths.
constexpr LabelEntry kPi3Labels[] = {
    {{1, 1}, {1, 2}, "e1"}, {{1, 1}, {2, 1}, "g1"}, {{1, 1}, {3, 1}, "i1"},
    {{1, 1}, {1, 3}, "j1"}, {{1, 2}, {2, 1}, "e2"}, {{2, 1}, {1, 2}, "g2"},
    {{2, 1}, {3, 1}, "e3"}, {{1, 2}, {1, 3}, "g3"}, {{1, 3}, {2, 1}, "i3"},
    {{3, 1}, {1, 2}, "j3"}, {{3, 1}, {1, 3}, "e4"}, {{1, 3}, {3, 1}, "g4"},
    {{1, 3}, {2, 2}, "e5"}, {{3, 1}, {2, 2}, "g5"}, {{1, 2}, {2, 2}, "i5"},
    {{2, 1}, {2, 2}, "j5"}, {{2, 2}, {3, 2}, "e6"}, {{2, 2}, {2, 3}, "f6"},
    {{3, 2}, {2, 3}, "e7"}, {{2, 3}, {3, 2}, "f7"}, {{2, 3}, {3, 3}, "e8"},
    {{3, 2}, {3, 3}, "f8"}, {{3, 1}, {3, 3}, "1"},  {{1, 3}, {3, 2}, "2"},
    {{3, 2}, {1, 3}, "3"},  {{3, 1}, {2, 3}, "4"},  {{2, 3}, {3, 1}, "5"},
    {{1, 2}, {3, 1}, "6"},  {{1, 3}, {2, 3}, "7"},  {{2, 1}, {1, 3}, "8"},
    {{2, 2}, {1, 3}, "9"},  {{2, 2}, {3, 1}, "10"}, {{3, 1}, {3, 2}, "11"},
    {{2, 1}, {2, 3}, "12"}, {{1, 2}, {3, 2}, "13"}, {{1, 3}, {3, 3}, "14"},
};

std::string coords(Vertex v) {
  return std::to_string(v.row) + "," + std::to_string(v.col);
}

std::string rule_id(char rule, Vertex s, Vertex t) {
  return std::string(1, rule) + ":" + coords(s) + "→" + coords(t);
}

std::string figure_id(int n, char rule, Vertex s, Vertex t) {
  const auto lookup = [&](const auto& table) -> std::string {
    for (const auto& e : table) {
      if (e.source == s && e.target == t) return e.id;
    }
    throw std::logic_error("missing figure label");
  };
  if (n == 2) return lookup(kPi2Labels);
  if (n == 3) return lookup(kPi3Labels);
  return rule_id(rule, s, t);
}

nlohmann::json vertex_json(Vertex v) { return {v.row, v.col}; }

Vertex vertex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("vertex must be a pair [i, j]");
  }
  return Vertex{j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

std::string Vertex::label() const {
  if (row < 10 && col < 10) return "x" + std::to_string(row) + std::to_string(col);
  return "x" + coords(*this);
}

DirectedMultigraph::DirectedMultigraph(int n, std::vector<Vertex> vertices,
                                       std::vector<Edge> edges)
    : n_(n), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (n < 1) throw std::invalid_argument("graph size n must be >= 1");
  std::set<Vertex> seen;
  for (const auto& v : vertices_) {
    if (v.row < 1 || v.row > n || v.col < 1 || v.col > n) {
      throw std::invalid_argument("vertex " + coords(v) + " outside 1..n");
    }
    if (!seen.insert(v).second) {
      throw std::invalid_argument("duplicate vertex " + coords(v));
    }
  }
  std::set<std::string> ids;
  std::set<std::pair<Vertex, Vertex>> arcs;
  for (const auto& e : edges_) {
    if (e.id.empty()) throw std::invalid_argument("edge id must be non-empty");
    if (!ids.insert(e.id).second) {
      throw std::invalid_argument("duplicate edge id " + e.id);
    }
    if (!seen.contains(e.source) || !seen.contains(e.target)) {
      throw std::invalid_argument("edge " + e.id + " has an unknown endpoint");
    }
    if (e.source == e.target) {
      throw std::invalid_argument("edge " + e.id + " is a self-loop");
    }
    if (!arcs.insert({e.source, e.target}).second) {
      throw std::invalid_argument("edge " + e.id + " repeats an existing arc");
    }
  }
}

std::optional<std::size_t> DirectedMultigraph::vertex_index(Vertex v) const {
  const auto it = std::find(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

const Edge* DirectedMultigraph::find_edge(std::string_view id) const {
  for (const auto& e : edges_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::vector<const Edge*> DirectedMultigraph::out_edges(Vertex v) const {
  std::vector<const Edge*> out;
  for (const auto& e : edges_) {
    if (e.source == v) out.push_back(&e);
  }
  std::sort(out.begin(), out.end(), [](const Edge* a, const Edge* b) {
    return std::tie(a->target, a->id) < std::tie(b->target, b->id);
  });
  return out;
}

std::vector<const Edge*> DirectedMultigraph::in_edges(Vertex v) const {
  std::vector<const Edge*> in;
  for (const auto& e : edges_) {
    if (e.target == v) in.push_back(&e);
  }
  return in;
}

int DirectedMultigraph::out_degree(Vertex v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [&](const Edge& e) { return e.source == v; }));
}

int DirectedMultigraph::in_degree(Vertex v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [&](const Edge& e) { return e.target == v; }));
}

std::optional<Vertex> DirectedMultigraph::unique_source() const {
  std::optional<Vertex> found;
  for (const auto& v : vertices_) {
    if (in_degree(v) != 0) continue;
    if (found) return std::nullopt;
    found = v;
  }
  return found;
}

std::optional<Vertex> DirectedMultigraph::unique_sink() const {
  std::optional<Vertex> found;
  for (const auto& v : vertices_) {
    if (out_degree(v) != 0) continue;
    if (found) return std::nullopt;
    found = v;
  }
  return found;
}

DirectedMultigraph build_graph(int n) {
  if (n < 2) throw std::invalid_argument("build_graph requires n >= 2");
  std::vector<Vertex> vertices;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) vertices.push_back({i, j});
  }
  std::vector<Edge> edges;
  const auto link = [&](char rule, Vertex s, Vertex t) {
    edges.push_back({figure_id(n, rule, s, t), s, t});
  };
  for (std::size_t p = 0; p < vertices.size(); ++p) {
    for (std::size_t q = p + 1; q < vertices.size(); ++q) {
      const Vertex a = vertices[p];
      const Vertex b = vertices[q];  // a.row <= b.row by construction
      if (a.row == b.row) {
        link('r', a, b);
      } else if (a.col == b.col) {
        link('c', a, b);
      } else if (a.col > b.col) {
        link('a', a, b);
        link('a', b, a);
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.source, x.target) < std::tie(y.source, y.target);
  });
  return DirectedMultigraph(n, std::move(vertices), std::move(edges));
}

AdjacencyMatrix adjacency_matrix(const DirectedMultigraph& g) {
  const auto size = static_cast<Eigen::Index>(g.vertices().size());
  AdjacencyMatrix m = AdjacencyMatrix::Zero(size, size);
  for (const auto& e : g.edges()) {
    m(static_cast<Eigen::Index>(*g.vertex_index(e.source)),
      static_cast<Eigen::Index>(*g.vertex_index(e.target))) += 1;
  }
  return m;
}

GraphStats graph_stats(const DirectedMultigraph& g) {
  GraphStats s;
  s.vertex_count = g.vertices().size();
  s.edge_count = g.edges().size();
  s.source = g.unique_source();
  s.sink = g.unique_sink();
  if (s.source) s.source_out_degree = g.out_degree(*s.source);
  if (s.sink) s.sink_in_degree = g.in_degree(*s.sink);
  return s;
}

std::int64_t expected_edge_count(int n) {
  const std::int64_t sq = static_cast<std::int64_t>(n) * n;
  return sq * (sq - 1) / 2;
}

std::int64_t claimed_hamiltonian_count(int n) { return 4 * static_cast<std::int64_t>(n) - 6; }

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dot") return GraphFormat::dot;
  if (name == "json") return GraphFormat::json;
  throw std::invalid_argument("unsupported graph format: " + std::string(name));
}

std::string export_graph(const DirectedMultigraph& g, GraphFormat format) {
  if (format == GraphFormat::dot) {
    std::ostringstream os;
    os << "digraph \"G(Pi_" << g.n() << ")\" {\n";
    for (const auto& v : g.vertices()) os << "  \"" << v.label() << "\";\n";
    for (const auto& e : g.edges()) {
      os << "  \"" << e.source.label() << "\" -> \"" << e.target.label()
         << "\" [label=\"" << e.id << "\"];\n";
    }
    os << "}\n";
    return os.str();
  }
  nlohmann::json j;
  j["n"] = g.n();
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : g.vertices()) j["vertices"].push_back(vertex_json(v));
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    j["edges"].push_back(
        {{"id", e.id}, {"src", vertex_json(e.source)}, {"dst", vertex_json(e.target)}});
  }
  return j.dump(2) + "\n";
}

DirectedMultigraph parse_graph(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    std::vector<Vertex> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(vertex_from_json(v));
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at("id").get<std::string>(), vertex_from_json(e.at("src")),
                       vertex_from_json(e.at("dst"))});
    }
    return DirectedMultigraph(j.at("n").get<int>(), std::move(vertices), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed graph JSON: ") + e.what());
  }
}

}  // namespace qmg

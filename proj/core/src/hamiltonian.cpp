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

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "qmgraph/relation_graph.hpp"

namespace qmg {
namespace {

struct IndexedGraph {
  std::size_t size = 0;
  // Out-arcs per vertex index, ordered by (target, id).
  std::vector<std::vector<std::pair<std::size_t, const Edge*>>> out;
  std::vector<std::vector<bool>> arc;
  std::vector<std::size_t> sources;  // in-degree 0
  std::vector<std::size_t> sinks;    // out-degree 0
};

IndexedGraph index_graph(const DirectedMultigraph& g) {
  IndexedGraph ig;
  ig.size = g.vertices().size();
  ig.out.resize(ig.size);
  ig.arc.assign(ig.size, std::vector<bool>(ig.size, false));
  std::vector<int> indeg(ig.size, 0);
  for (std::size_t v = 0; v < ig.size; ++v) {
    for (const Edge* e : g.out_edges(g.vertices()[v])) {
      const std::size_t t = *g.vertex_index(e->target);
      ig.out[v].push_back({t, e});
      ig.arc[v][t] = true;
      ++indeg[t];
    }
  }
  for (std::size_t v = 0; v < ig.size; ++v) {
    if (indeg[v] == 0) ig.sources.push_back(v);
    if (ig.out[v].empty()) ig.sinks.push_back(v);
  }
  return ig;
}

class PathSearch {
 public:
  PathSearch(const DirectedMultigraph& g, const std::function<bool(const HamiltonianPath&)>& visit)
      : g_(g), ig_(index_graph(g)), visit_(visit), visited_(ig_.size, false) {
    if (ig_.sinks.size() == 1) sink_ = ig_.sinks.front();
  }

  void run() {
    if (ig_.size == 0 || ig_.sources.size() > 1 || ig_.sinks.size() > 1) return;
    std::vector<std::size_t> starts;
    if (ig_.sources.size() == 1) {
      starts.push_back(ig_.sources.front());
    } else {
      for (std::size_t v = 0; v < ig_.size; ++v) starts.push_back(v);
    }
    for (const std::size_t s : starts) {
      if (sink_ && *sink_ == s && ig_.size > 1) continue;
      order_.assign(1, s);
      visited_[s] = true;
      const bool keep_going = extend(s);
      visited_[s] = false;
      if (!keep_going) return;
    }
  }

 private:
  bool extend(std::size_t v) {
    if (order_.size() == ig_.size) return emit();
    for (const auto& [t, e] : ig_.out[v]) {
      if (visited_[t]) continue;
      if (sink_ && t == *sink_ && order_.size() + 1 != ig_.size) continue;
      visited_[t] = true;
      order_.push_back(t);
      edges_.push_back(e);
      const bool keep_going = extend(t);
      edges_.pop_back();
      order_.pop_back();
      visited_[t] = false;
      if (!keep_going) return false;
    }
    return true;
  }

  bool emit() {
    HamiltonianPath p;
    p.vertices.reserve(order_.size());
    for (const std::size_t v : order_) p.vertices.push_back(g_.vertices()[v]);
    p.edge_ids.reserve(edges_.size());
    for (const Edge* e : edges_) p.edge_ids.push_back(e->id);
    return visit_(p);
  }

  const DirectedMultigraph& g_;
  IndexedGraph ig_;
  const std::function<bool(const HamiltonianPath&)>& visit_;
  std::vector<bool> visited_;
  std::vector<std::size_t> order_;
  std::vector<const Edge*> edges_;
  std::optional<std::size_t> sink_;
};

std::uint64_t add_counts(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("Hamiltonian path count exceeds 64 bits");
  }
  return r;
}

std::uint32_t next_combination(std::uint32_t x) {
  const std::uint32_t c = x & (~x + 1);
  const std::uint32_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

}  // namespace

bool is_hamiltonian_path(const DirectedMultigraph& g, const HamiltonianPath& p) {
  const auto& vs = g.vertices();
  if (p.vertices.size() != vs.size() || p.edge_ids.size() + 1 != p.vertices.size()) {
    return false;
  }
  if (std::set<Vertex>(p.vertices.begin(), p.vertices.end()).size() != vs.size()) return false;
  for (const auto& v : p.vertices) {
    if (!g.vertex_index(v)) return false;
  }
  for (std::size_t k = 0; k < p.edge_ids.size(); ++k) {
    const Edge* e = g.find_edge(p.edge_ids[k]);
    if (!e || e->source != p.vertices[k] || e->target != p.vertices[k + 1]) return false;
  }
  if (const auto s = g.unique_source(); s && p.vertices.front() != *s) return false;
  if (const auto t = g.unique_sink(); t && p.vertices.back() != *t) return false;
  return true;
}

void for_each_hamiltonian_path(const DirectedMultigraph& g,
                               const std::function<bool(const HamiltonianPath&)>& visit) {
  PathSearch(g, visit).run();
}

std::vector<HamiltonianPath> enumerate_hamiltonian_paths(const DirectedMultigraph& g,
                                                         std::size_t limit) {
  std::vector<HamiltonianPath> paths;
  if (limit == 0) return paths;
  for_each_hamiltonian_path(g, [&](const HamiltonianPath& p) {
    paths.push_back(p);
    return paths.size() < limit;
  });
  return paths;
}

HamiltonianCount count_hamiltonian_paths(const DirectedMultigraph& g) {
  const IndexedGraph ig = index_graph(g);
  if (ig.size == 0 || ig.sources.size() > 1 || ig.sinks.size() > 1) return {};
  if (ig.size == 1) return {1, 1};

  std::optional<std::size_t> start;
  std::optional<std::size_t> end;
  if (ig.sources.size() == 1) start = ig.sources.front();
  if (ig.sinks.size() == 1) end = ig.sinks.front();

  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < ig.size; ++v) {
    if (v != start && v != end) free.push_back(v);
  }
  const auto m = static_cast<unsigned>(free.size());
  if (m > 24) throw std::length_error("graph too large for exact Hamiltonian counting");
  if (m == 0) {
    const std::uint64_t c = (start && end && ig.arc[*start][*end]) ? 1 : 0;
    return {c, c};
  }

  const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);
  std::vector<std::uint32_t> preds(m, 0);  // free predecessors of each free vertex
  for (unsigned w = 0; w < m; ++w) {
    for (unsigned v = 0; v < m; ++v) {
      if (ig.arc[free[v]][free[w]]) preds[w] |= 1u << v;
    }
  }

  // rank[mask] = position of mask among masks with the same popcount.
  std::vector<std::uint32_t> rank(std::size_t{full} + 1);
  std::vector<std::uint32_t> per_popcount(m + 1, 0);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    rank[mask] = per_popcount[std::popcount(mask)]++;
    if (mask == full) break;
  }

  // Layer k holds, for each k-subset of free vertices and each member w,
  // the number of paths that visit exactly that subset and stop at w.
  std::vector<std::uint64_t> prev(m, 0);
  for (unsigned w = 0; w < m; ++w) prev[w] = (!start || ig.arc[*start][free[w]]) ? 1 : 0;
  for (unsigned k = 1; k < m; ++k) {
    std::vector<std::uint64_t> cur(std::size_t{per_popcount[k + 1]} * (k + 1), 0);
    for (std::uint32_t mask = (1u << (k + 1)) - 1; mask <= full; mask = next_combination(mask)) {
      const std::size_t base = std::size_t{rank[mask]} * (k + 1);
      unsigned slot = 0;
      for (std::uint32_t ws = mask; ws != 0; ws &= ws - 1, ++slot) {
        const unsigned w = static_cast<unsigned>(std::countr_zero(ws));
        const std::uint32_t rest = mask & ~(1u << w);
        const std::size_t rest_base = std::size_t{rank[rest]} * k;
        std::uint64_t total = 0;
        for (std::uint32_t vs = rest & preds[w]; vs != 0; vs &= vs - 1) {
          const unsigned v = static_cast<unsigned>(std::countr_zero(vs));
          const auto pos = static_cast<unsigned>(std::popcount(rest & ((1u << v) - 1)));
          total = add_counts(total, prev[rest_base + pos]);
        }
        cur[base + slot] = total;
      }
      if (mask == full) break;
    }
    prev = std::move(cur);
  }

  std::uint64_t count = 0;
  for (unsigned w = 0; w < m; ++w) {
    if (!end || ig.arc[free[w]][*end]) count = add_counts(count, prev[w]);
  }
  // Arcs are unique per ordered vertex pair, so labeled paths and vertex
  // sequences coincide.
  return {count, count};
}

}  // namespace qmg

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

// Arc lists and vertex sequences transcribed from the drawings of G(Pi_2)
// and G(Pi_3), written as two-digit ij vertex codes.

#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qmgraph/relation_graph.hpp"

namespace qmg::figures {

using Arc = std::tuple<std::string, Vertex, Vertex>;

inline Vertex x(int ij) { return {ij / 10, ij % 10}; }

inline std::vector<Vertex> seq(std::initializer_list<int> ijs) {
  std::vector<Vertex> out;
  for (int ij : ijs) out.push_back(x(ij));
  return out;
}

inline std::set<Arc> arcs(const DirectedMultigraph& g) {
  std::set<Arc> out;
  for (const auto& e : g.edges()) out.emplace(e.id, e.source, e.target);
  return out;
}

inline std::set<Arc> two_by_two() {
  return {
      {"e", x(11), x(12)}, {"f", x(11), x(21)}, {"h", x(12), x(22)},
      {"g", x(21), x(22)}, {"i", x(12), x(21)}, {"j", x(21), x(12)},
  };
}

inline std::set<Arc> three_by_three() {
  return {
      {"j5", x(21), x(22)}, {"f6", x(22), x(23)}, {"e3", x(21), x(31)}, {"g1", x(11), x(21)},
      {"e8", x(23), x(33)}, {"1", x(31), x(33)},  {"i1", x(11), x(31)}, {"g3", x(12), x(13)},
      {"14", x(13), x(33)}, {"13", x(12), x(32)}, {"7", x(13), x(23)},  {"e6", x(22), x(32)},
      {"e1", x(11), x(12)}, {"j1", x(11), x(13)}, {"i5", x(12), x(22)}, {"12", x(21), x(23)},
      {"f8", x(32), x(33)}, {"10", x(22), x(31)}, {"g5", x(31), x(22)}, {"g4", x(13), x(31)},
      {"e4", x(31), x(13)}, {"i3", x(13), x(21)}, {"8", x(21), x(13)},  {"g2", x(21), x(12)},
      {"e2", x(12), x(21)}, {"9", x(22), x(13)},  {"e5", x(13), x(22)}, {"e7", x(32), x(23)},
      {"f7", x(23), x(32)}, {"2", x(13), x(32)},  {"3", x(32), x(13)},  {"5", x(23), x(31)},
      {"4", x(31), x(23)},  {"11", x(31), x(32)}, {"6", x(12), x(31)},  {"j3", x(31), x(12)},
  };
}

/// H1..H6 as vertex sequences.
inline std::vector<std::vector<Vertex>> listed_sequences() {
  return {
      seq({11, 12, 21, 31, 13, 22, 32, 23, 33}), seq({11, 12, 21, 31, 13, 22, 23, 32, 33}),
      seq({11, 21, 12, 13, 31, 22, 23, 32, 33}), seq({11, 21, 12, 13, 31, 22, 32, 23, 33}),
      seq({11, 31, 13, 21, 12, 22, 32, 23, 33}), seq({11, 13, 31, 12, 21, 22, 32, 23, 33}),
  };
}

}  // namespace qmg::figures

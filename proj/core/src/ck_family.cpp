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

#include "qmgraph/ck_family.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace qmg {
namespace {

// sum_{t>=1} E_{a t - b, c t - d}
APOperator E(Index a, Index b, Index c, Index d) {
  return APOperator::progression(a, -b, c, -d);
}

struct Formula {
  const char* id;
  Index a, b, c, d;
};

}  // namespace

CKFamily::CKFamily(std::string name, DirectedMultigraph graph,
                   std::map<std::string, APOperator> isometries,
                   std::map<std::string, std::string> aliases,
                   std::vector<NamedPath> listed_paths,
                   std::vector<PrintedIdentity> printed,
                   std::vector<std::string> errata)
    : name_(std::move(name)),
      graph_(std::move(graph)),
      isometries_(std::move(isometries)),
      aliases_(std::move(aliases)),
      listed_paths_(std::move(listed_paths)),
      printed_(std::move(printed)),
      errata_(std::move(errata)) {
  for (const auto& e : graph_.edges()) {
    if (!isometries_.contains(e.id)) {
      throw std::invalid_argument("no isometry for edge '" + e.id + "'");
    }
  }
  for (const auto& [id, op] : isometries_) {
    if (graph_.find_edge(id) == nullptr) {
      throw std::invalid_argument("isometry '" + id + "' names no edge");
    }
  }
  for (const auto& [alias, id] : aliases_) {
    if (graph_.find_edge(id) == nullptr) {
      throw std::invalid_argument("alias '" + alias + "' names no edge");
    }
    if (graph_.find_edge(alias) != nullptr && alias != id) {
      throw std::invalid_argument("alias '" + alias + "' shadows an edge id");
    }
  }
  for (auto& p : listed_paths_) {
    if (p.edge_ids.empty()) {
      for (const auto& label : p.labels) p.edge_ids.push_back(resolve(label));
    }
    for (const auto& id : p.edge_ids) {
      if (graph_.find_edge(id) == nullptr) {
        throw std::invalid_argument("path '" + p.name + "' uses unknown edge '" + id + "'");
      }
    }
  }
  for (auto& identity : printed_) {
    for (auto& sum : identity.chain) {
      for (auto& term : sum) term.edge = resolve(term.edge);
    }
  }

  for (const auto& v : graph_.vertices()) {
    const auto in = graph_.in_edges(v);
    if (!in.empty()) {
      const auto& s = isometries_.at(in.front()->id);
      projections_.emplace(v, adjoint(s) * s);
      continue;
    }
    APOperator sum;
    for (const auto* e : graph_.out_edges(v)) {
      const auto& s = isometries_.at(e->id);
      sum = sum + s * adjoint(s);
    }
    projections_.emplace(v, std::move(sum));
  }
}

const std::string& CKFamily::resolve(std::string_view id_or_alias) const {
  const std::string key(id_or_alias);
  if (const auto* e = graph_.find_edge(key)) return e->id;
  if (auto it = aliases_.find(key); it != aliases_.end()) return it->second;
  throw std::out_of_range("unknown edge or alias '" + key + "'");
}

const APOperator& CKFamily::isometry(std::string_view id_or_alias) const {
  return isometries_.at(resolve(id_or_alias));
}

std::vector<std::string> CKFamily::aliases_of(std::string_view id_or_alias) const {
  const auto& id = resolve(id_or_alias);
  std::vector<std::string> out{id};
  for (const auto& [alias, target] : aliases_) {
    if (target == id && alias != id) out.push_back(alias);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CKFamily family_pi2() {
  std::map<std::string, APOperator> s{
      {"e", E(6, 0, 3, 2)},
      {"f", E(6, 4, 3, 2)},
      {"h", E(6, 3, 3, 0)},
      {"g", E(6, 4, 3, 1)},
      {"i", E(6, 1, 3, 0)},
      {"j", E(6, 3, 3, 1)},
  };
  std::vector<NamedPath> paths{
      {"P1", {"e", "i", "g"}, {}},
      {"P2", {"f", "j", "h"}, {}},
  };
  std::vector<std::string> errata{
      "S_f and S_g share the row progression 6t-4; their ranges are not orthogonal as given",
  };
  return CKFamily("pi2", build_graph(2), std::move(s), {}, std::move(paths), {},
                  std::move(errata));
}

CKFamily family_pi3() {
  static constexpr Formula kFormulas[] = {
      {"e1", 32, 31, 8, 0}, {"g1", 32, 23, 8, 1}, {"i1", 32, 7, 8, 2},
      {"j1", 32, 15, 8, 3}, {"g2", 40, 25, 8, 0}, {"e2", 40, 32, 8, 1},
      {"g4", 48, 35, 8, 2}, {"e4", 48, 42, 8, 3}, {"j3", 48, 10, 8, 0},
      {"i3", 48, 27, 8, 1}, {"e3", 40, 33, 8, 2}, {"g3", 40, 24, 8, 3},
      {"e5", 48, 43, 8, 4}, {"g5", 48, 34, 8, 4}, {"i5", 40, 8, 8, 4},
      {"j5", 40, 1, 8, 4},  {"e6", 32, 28, 8, 5}, {"f6", 24, 14, 8, 5},
      {"e7", 24, 21, 8, 6}, {"f7", 32, 20, 8, 6}, {"e8", 24, 22, 8, 7},
      {"f8", 24, 13, 8, 7}, {"1", 48, 2, 8, 7},   {"14", 48, 11, 8, 7},
      {"4", 48, 29, 8, 7},  {"7", 48, 19, 8, 6},  {"12", 40, 9, 8, 6},
      {"2", 48, 3, 8, 5},   {"11", 48, 26, 8, 5}, {"13", 40, 11, 8, 5},
      {"3", 24, 5, 8, 3},   {"8", 40, 17, 8, 3},  {"9", 32, 12, 8, 3},
      {"5", 24, 6, 8, 2},   {"6", 40, 16, 8, 2},  {"10", 32, 4, 8, 2},
  };
  std::map<std::string, APOperator> s;
  for (const auto& f : kFormulas) s.emplace(f.id, E(f.a, f.b, f.c, f.d));

  std::map<std::string, std::string> aliases{
      {"f1", "e1"}, {"h1", "g1"}, {"f2", "e2"}, {"j4", "e2"}, {"h2", "g2"},
      {"i4", "g2"}, {"f3", "e3"}, {"h3", "g3"}, {"f4", "e4"}, {"i2", "e4"},
      {"h4", "g4"}, {"j2", "g4"}, {"f5", "e5"}, {"h5", "g5"}, {"h6", "e6"},
      {"i6", "e6"}, {"j6", "e6"}, {"g6", "f6"}, {"h7", "e7"}, {"i7", "e7"},
      {"j7", "e7"}, {"g7", "f7"}, {"h8", "e8"}, {"i8", "e8"}, {"j8", "e8"},
      {"g8", "f8"},
  };
  for (int k = 1; k <= 14; ++k) {
    aliases.emplace("S" + std::to_string(k), std::to_string(k));
  }

  std::vector<NamedPath> paths;
  int index = 1;
  for (const char letter : std::string("efghij")) {
    NamedPath p{"H" + std::to_string(index++), {}, {}};
    for (int k = 1; k <= 8; ++k) p.labels.push_back(std::string(1, letter) + std::to_string(k));
    paths.push_back(std::move(p));
  }

  const auto star = [](std::initializer_list<const char*> ids) {
    std::vector<PrintedSum> out;
    for (const char* id : ids) out.push_back({{id, true}});
    return out;
  };
  const auto range_sum = [](std::initializer_list<const char*> ids) {
    PrintedSum out;
    for (const char* id : ids) out.push_back({id, false});
    return out;
  };
  const auto chain = [](std::vector<PrintedSum> items, std::optional<PrintedSum> tail) {
    if (tail) items.push_back(std::move(*tail));
    return items;
  };
  std::vector<PrintedIdentity> printed{
      {{1, 3}, chain(star({"3", "g3", "j1", "e4", "9", "8"}),
                     range_sum({"e5", "g4", "i3", "7", "14", "2"}))},
      {{2, 2}, chain(star({"e5", "g5", "j5", "i5"}), range_sum({"e6", "g6", "9", "10"}))},
      {{2, 3}, chain(star({"e7", "12", "g6", "7", "4"}), range_sum({"e8", "g7", "5"}))},
      {{3, 2}, chain(star({"2", "g7", "e6", "13", "11"}), range_sum({"e7", "g8", "3"}))},
      {{3, 3}, chain(star({"1", "14", "e8", "g8"}), std::nullopt)},
      {{3, 1}, chain(star({"i1", "e3", "10", "g4", "5", "6"}),
                     range_sum({"e4", "g5", "11", "4", "j3", "1"}))},
      {{1, 1}, {PrintedSum{{"e1", true}, {"g1", false}, {"i1", false}, {"j1", false}}}},
      {{2, 1}, chain(star({"g1", "e2", "i3"}), range_sum({"e3", "g2", "8", "12", "j5"}))},
      {{1, 2}, chain(star({"g2", "e1", "j3"}), range_sum({"e2", "g3", "6", "i5", "13"}))},
  };

  std::vector<std::string> errata{
      "the label S_5 appears twice; the second formula E_{32t-4,8t-2} is assigned to arc 10 (x22 -> x31), "
      "the only arc left without a formula and the one its residues encode",
      "the source projection P_11 is displayed with a leading S_{e_1}^* S_{e_1} term",
  };
  return CKFamily("pi3", build_graph(3), std::move(s), std::move(aliases), std::move(paths),
                  std::move(printed), std::move(errata));
}

CKFamily family_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    std::map<std::string, APOperator> s;
    for (const auto& [id, op] : j.at("isometries").items()) {
      s.emplace(id, operator_from_json(op));
    }
    std::string name = j.contains("family") ? j.at("family").get<std::string>() : "custom";
    return CKFamily(std::move(name), build_graph(n), std::move(s));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed family JSON: ") + e.what());
  }
}

nlohmann::json to_json(const CKFamily& family) {
  nlohmann::json isometries = nlohmann::json::object();
  for (const auto& [id, op] : family.isometries()) isometries[id] = to_json(op);
  return {{"family", family.name()}, {"n", family.graph().n()}, {"isometries", isometries}};
}

Index h_sequence(int n) {
  if (n < 2) throw std::invalid_argument("h_sequence requires n >= 2");
  Index h = 3;
  for (int k = 2; k < n; ++k) h += 2 * k + 1;
  return h;
}

GeneralFamilyTemplate template_for(int n) {
  if (n < 2) throw std::invalid_argument("template_for requires n >= 2");
  GeneralFamilyTemplate t;
  t.n = n;
  t.column_modulus = h_sequence(n);
  t.edge_index_bound = (static_cast<Index>(n) * n * n + static_cast<Index>(n) * n) * (n - 1) / 2;
  t.column_shift_max = static_cast<Index>(n) * n - 2;
  std::vector<int> degrees;
  const auto g = build_graph(n);
  for (const auto& v : g.vertices()) {
    if (const int d = g.out_degree(v); d > 0) degrees.push_back(d);
  }
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  t.exit_degrees = degrees;
  for (const int d : degrees) t.row_moduli.push_back(d * t.column_modulus);
  t.row_shift_max = (degrees.empty() ? 0 : degrees.back()) * t.column_modulus;
  return t;
}

}  // namespace qmg

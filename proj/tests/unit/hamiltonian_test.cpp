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
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "figures.hpp"
#include "qmgraph/relation_graph.hpp"

namespace qmg {
namespace {

using figures::seq;
using figures::x;

// Counts Hamiltonian paths by trying every vertex permutation.
std::uint64_t permutation_count(const DirectedMultigraph& g) {
  const auto a = adjacency_matrix(g);
  std::vector<int> order(g.vertices().size());
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t count = 0;
  do {
    std::uint64_t labelings = 1;
    for (std::size_t k = 0; k + 1 < order.size() && labelings; ++k) labelings *= a(order[k], order[k + 1]);
    count += labelings;
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

TEST(Hamiltonian, TwoByTwoHasExactlyTwoPaths) {
  const auto g = build_graph(2);
  const auto paths = enumerate_hamiltonian_paths(g);
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0].edge_ids, (std::vector<std::string>{"e", "i", "g"}));
  EXPECT_EQ(paths[1].edge_ids, (std::vector<std::string>{"f", "j", "h"}));
  EXPECT_EQ(paths[0].vertices, seq({11, 12, 21, 22}));
  EXPECT_EQ(paths[1].vertices, seq({11, 21, 12, 22}));
  EXPECT_EQ(count_hamiltonian_paths(g).labeled_paths, 2u);
  EXPECT_EQ(claimed_hamiltonian_count(2), 2);
}

TEST(Hamiltonian, ThreeByThreeContainsListedSequences) {
  const auto g = build_graph(3);
  const auto paths = enumerate_hamiltonian_paths(g);
  std::set<std::vector<Vertex>> found;
  for (const auto& p : paths) {
    EXPECT_TRUE(is_hamiltonian_path(g, p));
    found.insert(p.vertices);
  }
  EXPECT_EQ(found.size(), paths.size());  // no duplicates
  const auto listed = figures::listed_sequences();
  for (const auto& s : listed) EXPECT_TRUE(found.contains(s));
}

TEST(Hamiltonian, CountsAgreeWithPermutationOracle) {
  for (int n : {2, 3}) {
    const auto g = build_graph(n);
    const auto oracle = permutation_count(g);
    EXPECT_EQ(count_hamiltonian_paths(g).labeled_paths, oracle);
    EXPECT_EQ(enumerate_hamiltonian_paths(g).size(), oracle);
  }
  EXPECT_EQ(count_hamiltonian_paths(build_graph(3)).labeled_paths, 140u);
}

TEST(Hamiltonian, DynamicProgramAgreesWithEnumerationForFour) {
  const auto g = build_graph(4);
  std::uint64_t dfs = 0;
  for_each_hamiltonian_path(g, [&](const HamiltonianPath&) {
    ++dfs;
    return true;
  });
  const auto dp = count_hamiltonian_paths(g);
  EXPECT_EQ(dp.labeled_paths, dfs);
  EXPECT_EQ(dp.labeled_paths, 6369328u);
  EXPECT_EQ(dp.vertex_sequences, dp.labeled_paths);
}

TEST(Hamiltonian, RandomDigraphsAgreeWithPermutationOracle) {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution coin(0.35);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vertex> vs{x(11), x(12), x(13), x(21), x(22), x(23), x(31)};
    std::vector<Edge> edges;
    for (const auto& u : vs) {
      for (const auto& v : vs) {
        if (u != v && coin(rng)) edges.push_back({u.label() + "-" + v.label(), u, v});
      }
    }
    const DirectedMultigraph g(3, vs, edges);
    const auto oracle = permutation_count(g);
    EXPECT_EQ(count_hamiltonian_paths(g).labeled_paths, oracle) << "trial " << trial;
    const auto paths = enumerate_hamiltonian_paths(g);
    EXPECT_EQ(paths.size(), oracle) << "trial " << trial;
    for (const auto& p : paths) EXPECT_TRUE(is_hamiltonian_path(g, p));
  }
}

TEST(Hamiltonian, SingleVertexHasOneEmptyPath) {
  const DirectedMultigraph g(1, {x(11)}, {});
  const auto paths = enumerate_hamiltonian_paths(g);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_TRUE(paths[0].edge_ids.empty());
  EXPECT_EQ(count_hamiltonian_paths(g).labeled_paths, 1u);
}

TEST(Hamiltonian, EnumerationOrderIsDeterministicAndLimited) {
  const auto g = build_graph(3);
  const auto all = enumerate_hamiltonian_paths(g);
  const auto first = enumerate_hamiltonian_paths(g, 5);
  ASSERT_EQ(first.size(), 5u);
  EXPECT_TRUE(std::equal(first.begin(), first.end(), all.begin()));
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.vertices < b.vertices;
  }));
}

TEST(Hamiltonian, RejectsInvalidPaths) {
  const auto g = build_graph(2);
  HamiltonianPath p{{"e", "i"}, seq({11, 12, 21})};
  EXPECT_FALSE(is_hamiltonian_path(g, p));
  p = {{"e", "h", "g"}, seq({11, 12, 22, 21})};
  EXPECT_FALSE(is_hamiltonian_path(g, p));
  p = {{"e", "i", "g"}, seq({11, 12, 21, 22})};
  EXPECT_TRUE(is_hamiltonian_path(g, p));
}

TEST(Hamiltonian, CountsDisagreeWithLinearFormulaFromThree) {
  for (int n = 3; n <= 4; ++n) {
    EXPECT_NE(count_hamiltonian_paths(build_graph(n)).labeled_paths,
              static_cast<std::uint64_t>(claimed_hamiltonian_count(n)));
  }
}

}  // namespace
}  // namespace qmg

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

#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmgraph/ck_family.hpp"

namespace qmg {
namespace {

using oracle::Entries;

constexpr Index kSteps = 1000;
constexpr Index kRows = 2000;

// Realized S S^* and S^* S for every edge, restricted to the first kRows rows.
struct Realized {
  std::map<std::string, Entries> s, range, source;
};

Entries adjoint_entries(const Entries& e) {
  Entries out;
  for (const auto& [rc, v] : e) out[{rc.second, rc.first}] = std::conj(v);
  return out;
}

Entries sum(const std::vector<const Entries*>& parts) {
  Entries out;
  for (const auto* p : parts) {
    for (const auto& [rc, v] : *p) out[rc] += v;
  }
  return out;
}

Realized realize_family(const CKFamily& f) {
  Realized r;
  for (const auto& [id, op] : f.isometries()) {
    const auto s = oracle::realize(op, kSteps);
    const auto sa = adjoint_entries(s);
    r.s[id] = s;
    r.range[id] = oracle::rows_of(oracle::product(s, sa), kRows);
    r.source[id] = oracle::rows_of(oracle::product(sa, s), kRows);
  }
  return r;
}

bool rows_equal(const Entries& a, const Entries& b) {
  return oracle::same(oracle::rows_of(a, kRows), oracle::rows_of(b, kRows));
}

// Recomputes every graph relation by brute force and returns the ids that
// fail.
std::set<std::string> oracle_failures(const CKFamily& f) {
  const auto r = realize_family(f);
  const auto& g = f.graph();
  std::set<std::string> failed;
  for (const auto& e : g.edges()) {
    const auto& s = r.s.at(e.id);
    const auto ssa_s = oracle::product(r.range.at(e.id), s);
    if (!rows_equal(ssa_s, s)) failed.insert("pi:" + e.id);
  }
  const auto& edges = g.edges();
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      const auto p = oracle::product(r.range.at(edges[a].id), r.range.at(edges[b].id));
      if (!rows_equal(p, {})) failed.insert("ro:" + edges[a].id + "|" + edges[b].id);
    }
  }
  for (const auto& v : g.vertices()) {
    const auto in = g.in_edges(v);
    for (std::size_t a = 0; a < in.size(); ++a) {
      for (std::size_t b = a + 1; b < in.size(); ++b) {
        if (!rows_equal(r.source.at(in[a]->id), r.source.at(in[b]->id))) {
          failed.insert("ss:" + v.label() + ":" + in[a]->id + "=" + in[b]->id);
        }
      }
    }
    const auto out = g.out_edges(v);
    if (out.empty()) continue;
    std::vector<const Entries*> parts;
    for (const auto* e : out) parts.push_back(&r.range.at(e->id));
    const auto q = sum(parts);
    const bool ok = in.empty() ? rows_equal(oracle::product(q, q), q)
                               : rows_equal(q, r.source.at(in.front()->id));
    if (!ok) failed.insert("vs:" + v.label());
  }
  for (const auto& p : f.listed_paths()) {
    std::vector<const Entries*> parts;
    for (const auto& id : p.edge_ids) parts.push_back(&r.source.at(id));
    Entries id;
    for (Index k = 1; k <= kRows; ++k) id[{k, k}] = 1.0;
    if (!rows_equal(sum(parts), id)) failed.insert("pc:" + p.name);
  }
  return failed;
}

std::set<std::string> report_failures(const VerificationReport& rep, bool with_claims) {
  std::set<std::string> out;
  for (const auto& c : rep.checks) {
    if (!with_claims && c.id.rfind("claim:", 0) == 0) continue;
    if (c.symbolic == Verdict::fail) out.insert(c.id);
  }
  return out;
}

TEST(CKFamily, TwoByTwoFormulas) {
  const auto f = family_pi2();
  EXPECT_EQ(f.isometries().size(), 6u);
  EXPECT_EQ(f.isometry("e"), APOperator::progression(6, 0, 3, -2));
  EXPECT_EQ(f.isometry("f"), APOperator::progression(6, -4, 3, -2));
  EXPECT_EQ(f.isometry("h"), APOperator::progression(6, -3, 3, 0));
  EXPECT_EQ(f.isometry("g"), APOperator::progression(6, -4, 3, -1));
  EXPECT_EQ(f.isometry("i"), APOperator::progression(6, -1, 3, 0));
  EXPECT_EQ(f.isometry("j"), APOperator::progression(6, -3, 3, -1));
  EXPECT_EQ(f.isometry("e").entry(6, 1), Complex(1.0));
  EXPECT_EQ(f.isometry("e").entry(12, 4), Complex(1.0));
  EXPECT_FALSE(f.errata().empty());
}

TEST(CKFamily, ThreeByThreeFormulasAndAliases) {
  const auto f = family_pi3();
  EXPECT_EQ(f.isometries().size(), 36u);
  EXPECT_EQ(f.isometry("e1"), APOperator::progression(32, -31, 8, 0));
  EXPECT_EQ(f.isometry("10"), APOperator::progression(32, -4, 8, -2));
  EXPECT_EQ(f.resolve("f1"), "e1");
  EXPECT_EQ(f.resolve("j4"), "e2");
  EXPECT_EQ(f.resolve("g8"), "f8");
  EXPECT_EQ(f.resolve("S14"), "14");
  EXPECT_EQ(f.aliases_of("e6"), (std::vector<std::string>{"e6", "h6", "i6", "j6"}));
  EXPECT_THROW(f.resolve("zz"), std::out_of_range);
  ASSERT_EQ(f.listed_paths().size(), 6u);
  for (const auto& p : f.listed_paths()) {
    HamiltonianPath hp{p.edge_ids, {}};
    hp.vertices.push_back(f.graph().find_edge(p.edge_ids.front())->source);
    for (const auto& id : p.edge_ids) hp.vertices.push_back(f.graph().find_edge(id)->target);
    EXPECT_TRUE(is_hamiltonian_path(f.graph(), hp)) << p.name;
  }
}

TEST(CKFamily, RowSlopesFollowTheTemplate) {
  for (const auto& f : {family_pi2(), family_pi3()}) {
    const auto t = template_for(f.graph().n());
    const std::set<Index> moduli(t.row_moduli.begin(), t.row_moduli.end());
    for (const auto& [id, op] : f.isometries()) {
      ASSERT_EQ(op.terms().size(), 1u);
      EXPECT_TRUE(moduli.contains(op.terms()[0].row.slope)) << id;
      EXPECT_EQ(op.terms()[0].col.slope, t.column_modulus) << id;
      EXPECT_LE(-op.terms()[0].col.offset, t.column_shift_max) << id;
    }
  }
}

TEST(CKFamily, TwoByTwoVerdictsMatchOracle) {
  const auto f = family_pi2();
  const auto rep = verify_ck(f, TruncationWindow(64));
  EXPECT_EQ(rep.checks.size(), 29u);
  EXPECT_EQ(rep.disagreements(), 0u);
  const auto expected = oracle_failures(f);
  EXPECT_EQ(report_failures(rep, true), expected);
  EXPECT_EQ(expected, (std::set<std::string>{"ro:f|g", "ro:h|j", "ss:x12:e=j", "ss:x21:f=i",
                                              "ss:x22:h=g", "vs:x12", "vs:x21"}));
  EXPECT_EQ(rep.find("pc:P1")->symbolic, Verdict::pass);
  EXPECT_EQ(rep.find("pc:P2")->symbolic, Verdict::pass);
}

TEST(CKFamily, OverlapWitnessIsTheFirstSharedRow) {
  const auto rep = verify_ck(family_pi2(), TruncationWindow(64));
  const auto* c = rep.find("ro:f|g");
  ASSERT_NE(c, nullptr);
  ASSERT_TRUE(c->witness);
  EXPECT_EQ(c->witness->entry, (MatrixEntry{2, 2}));
  ASSERT_TRUE(c->numeric_witness);
  EXPECT_EQ(c->numeric_witness->entry, (MatrixEntry{2, 2}));
  EXPECT_EQ(rep.find("ro:h|j")->witness->entry, (MatrixEntry{3, 3}));
}

TEST(CKFamily, ThreeByThreeVerdictsMatchOracle) {
  const auto f = family_pi3();
  const auto rep = verify_ck(f, TruncationWindow(64));
  EXPECT_EQ(rep.disagreements(), 0u);
  EXPECT_EQ(report_failures(rep, false), oracle_failures(f));
  for (int k = 1; k <= 6; ++k) {
    const auto* c = rep.find("pc:H" + std::to_string(k));
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->symbolic, Verdict::pass) << c->id;
  }
}

TEST(CKFamily, SingleEdgeIsIncomplete) {
  const auto f = family_pi2();
  const auto c = path_completeness(f, "single", {"e"});
  EXPECT_EQ(c.symbolic, Verdict::fail);
  EXPECT_EQ(c.numeric, Verdict::fail);
  ASSERT_TRUE(c.witness);
  EXPECT_EQ(c.witness->entry, (MatrixEntry{2, 2}));
  // S_e^* S_e covers one index in three.
  const auto d = to_dense(adjoint(f.isometry("e")) * f.isometry("e"), TruncationWindow(64));
  EXPECT_NEAR(d.diagonal().real().sum() / static_cast<double>(d.rows()), 1.0 / 3.0, 1e-2);
}

TEST(CKFamily, EnumeratedPathsOfTwoByTwoAreComplete) {
  const auto f = family_pi2();
  for (const auto& p : enumerate_hamiltonian_paths(f.graph())) {
    const auto c = path_completeness(f, p);
    EXPECT_EQ(c.symbolic, Verdict::pass);
    EXPECT_TRUE(c.agrees());
  }
}

TEST(CKFamily, VerdictsAreStableAcrossWindows) {
  for (const auto& f : {family_pi2(), family_pi3()}) {
    std::vector<std::vector<Verdict>> runs;
    for (Index n : {16, 64, 256}) {
      const auto rep = verify_ck(f, TruncationWindow(n));
      EXPECT_EQ(rep.disagreements(), 0u) << f.name() << " N=" << n;
      std::vector<Verdict> v;
      for (const auto& c : rep.checks) v.push_back(c.symbolic);
      runs.push_back(std::move(v));
      const auto [lo, hi] = rep.interior_range();
      EXPECT_GE(lo, 1);
      EXPECT_LE(lo, hi);
    }
    EXPECT_EQ(runs[0], runs[1]);
    EXPECT_EQ(runs[1], runs[2]);
  }
}

TEST(CKFamily, ReportJsonShape) {
  const auto rep = verify_ck(family_pi2(), TruncationWindow(16));
  const auto j = to_json(rep);
  EXPECT_EQ(j.at("family"), "pi2");
  EXPECT_EQ(j.at("summary").at("checks"), 29);
  EXPECT_EQ(j.at("summary").at("failures"), 7);
  EXPECT_EQ(j.at("summary").at("disagreements"), 0);
  EXPECT_TRUE(j.at("checks")[0].contains("witness"));
  EXPECT_EQ(to_json(*rep.find("ro:f|g")).at("witness").at("row"), 2);
  EXPECT_TRUE(to_json(*rep.find("pc:P1")).at("witness").is_null());
}

TEST(CKFamily, JsonFamilyMatchesBuiltIn) {
  std::ifstream in(std::string(QMGRAPH_FIXTURES_DIR) + "/pi2-family.json");
  const auto f = family_from_json(nlohmann::json::parse(in));
  const auto a = verify_ck(f, TruncationWindow(32));
  const auto b = verify_ck(family_pi2(), TruncationWindow(32));
  // The file lists no paths, so only the graph relations are compared.
  EXPECT_EQ(a.checks.size() + family_pi2().listed_paths().size(), b.checks.size());
  for (const auto& c : a.checks) {
    const auto* other = b.find(c.id);
    ASSERT_NE(other, nullptr) << c.id;
    EXPECT_EQ(c.symbolic, other->symbolic) << c.id;
  }
  const auto round = family_from_json(to_json(family_pi3()));
  EXPECT_EQ(round.isometries(), family_pi3().isometries());
}

TEST(CKFamily, RejectsIncompleteFamilies) {
  auto iso = family_pi2().isometries();
  iso.erase("e");
  EXPECT_THROW(CKFamily("bad", build_graph(2), iso), std::invalid_argument);
  iso = family_pi2().isometries();
  iso["z"] = APOperator::identity();
  EXPECT_THROW(CKFamily("bad", build_graph(2), iso), std::invalid_argument);
  EXPECT_THROW(CKFamily("bad", build_graph(2), family_pi2().isometries(), {{"q", "nope"}}),
               std::invalid_argument);
  EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"n":2})")), std::invalid_argument);
}

TEST(CKFamily, ParameterTemplate) {
  EXPECT_EQ(h_sequence(2), 3);
  EXPECT_EQ(h_sequence(3), 8);
  for (int n = 2; n <= 8; ++n) EXPECT_EQ(h_sequence(n), static_cast<Index>(n) * n - 1);
  const std::pair<Index, Index> expected[] = {{3, 6}, {8, 36}, {15, 120}, {24, 300}};
  for (int n = 2; n <= 5; ++n) {
    const auto t = template_for(n);
    EXPECT_EQ(t.column_modulus, expected[n - 2].first);
    EXPECT_EQ(t.edge_index_bound, expected[n - 2].second);
  }
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(template_for(n).edge_index_bound, expected_edge_count(n));
  EXPECT_EQ(template_for(2).exit_degrees, (std::vector<int>{2}));
  EXPECT_EQ(template_for(3).exit_degrees, (std::vector<int>{3, 4, 5, 6}));
  EXPECT_THROW(h_sequence(1), std::invalid_argument);
}

}  // namespace
}  // namespace qmg

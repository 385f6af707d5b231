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

// Relation checks for CK families. Each check is decided twice: exactly on
// the AP operators, and on sparse truncations restricted to the rows where the
// truncated product agrees with the infinite one.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "qmgraph/ck_family.hpp"

namespace qmg {
namespace {

constexpr double kNumericTol = 1e-9;
constexpr double kExactTol = 1e-12;

using Product = std::vector<APOperator>;  // factors, left to right
using Expression = std::vector<Product>;  // sum of products

APOperator evaluate(const Expression& e) {
  APOperator sum;
  for (const auto& p : e) {
    APOperator prod = APOperator::identity();
    for (const auto& f : p) prod = prod * f;
    sum = sum + prod;
  }
  return sum;
}

Witness at(Index r, Index c, std::string reason) { return {{r, c}, std::move(reason)}; }

// Exact projection defects: off-diagonal support, a diagonal value other than
// 0/1, or finite rank.
std::optional<Witness> projection_defect(const APOperator& p) {
  const auto& terms = p.terms();
  for (const auto& t : terms) {
    if (!t.is_diagonal()) return at(t.row.first(), t.col.first(), "off-diagonal entry");
  }
  for (const auto& t : terms) {
    if (std::abs(t.coeff - Complex{1.0, 0.0}) > kExactTol) {
      return at(t.row.first(), t.row.first(), "diagonal value is not 0 or 1");
    }
  }
  for (std::size_t a = 0; a < terms.size(); ++a) {
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (auto x = first_common_index(terms[a], terms[b])) {
        return at(*x, *x, "diagonal value is not 0 or 1");
      }
    }
  }
  Index top = 0;
  bool infinite = false;
  for (const auto& t : terms) {
    infinite = infinite || !t.is_unit();
    top = std::max(top, t.row.first());
  }
  if (!infinite) return at(top + 1, top + 1, "finite rank");
  return std::nullopt;
}

std::optional<Witness> difference_witness(const APOperator& lhs, const APOperator& rhs) {
  if (auto e = first_nonzero_entry(lhs - rhs, kExactTol)) {
    return at(e->row, e->col, "entries differ");
  }
  return std::nullopt;
}

// Truncations of every isometry and its adjoint at one common dimension.
class Realizer {
 public:
  Realizer(const CKFamily& family, TruncationWindow w) : w_(w) {
    dim_ = std::max<Index>(1, realized_extent(APOperator::identity(), w));
    for (const auto& [id, s] : family.isometries()) {
      dim_ = std::max(dim_, realized_extent(s, w));
    }
  }

  Index dim() const { return dim_; }
  TruncationWindow window() const { return w_; }

  const SparseMatrix& realize(const APOperator& a) {
    const std::string key = to_string(a);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, to_sparse(a, w_, dim_)).first;
    return it->second;
  }

  SparseMatrix realize(const Expression& e) {
    SparseMatrix sum(dim_, dim_);
    for (const auto& p : e) {
      SparseMatrix prod = realize(p.front());
      for (std::size_t k = 1; k < p.size(); ++k) {
        prod = (prod * realize(p[k])).pruned();
      }
      sum += prod;
    }
    return sum;
  }

  // Rows 1..interior of the realized expression are exact.
  Index interior(const Expression& e) const {
    Index bound = dim_;
    for (const auto& p : e) bound = std::min(bound, exact_row_extent(p, w_));
    return bound;
  }

 private:
  TruncationWindow w_;
  Index dim_ = 1;
  std::map<std::string, SparseMatrix> cache_;
};

struct NumericOutcome {
  std::optional<Witness> witness;
  Index interior = 0;
};

NumericOutcome numeric_equal(Realizer& r, const Expression& lhs, const Expression& rhs) {
  NumericOutcome out;
  out.interior = std::min(r.interior(lhs), r.interior(rhs));
  const SparseMatrix diff = r.realize(lhs) - r.realize(rhs);
  for (Index row = 0; row < out.interior; ++row) {
    for (SparseMatrix::InnerIterator it(diff, row); it; ++it) {
      if (std::abs(it.value()) > kNumericTol) {
        out.witness = at(row + 1, it.col() + 1, "entries differ");
        return out;
      }
    }
  }
  return out;
}

NumericOutcome numeric_projection(Realizer& r, const Expression& e) {
  NumericOutcome out;
  out.interior = r.interior(e);
  const SparseMatrix p = r.realize(e);
  bool upper_support = false;
  for (Index row = 0; row < out.interior; ++row) {
    for (SparseMatrix::InnerIterator it(p, row); it; ++it) {
      const Complex v = it.value();
      if (std::abs(v) <= kNumericTol) continue;
      if (it.col() != row) {
        out.witness = at(row + 1, it.col() + 1, "off-diagonal entry");
        return out;
      }
      if (std::abs(v - Complex{1.0, 0.0}) > kNumericTol) {
        out.witness = at(row + 1, row + 1, "diagonal value is not 0 or 1");
        return out;
      }
      upper_support = upper_support || 2 * (row + 1) > out.interior;
    }
  }
  if (!upper_support) out.witness = at(out.interior, out.interior, "finite rank");
  return out;
}

Verdict verdict(const std::optional<Witness>& w) { return w ? Verdict::fail : Verdict::pass; }

void set_symbolic(CheckRecord& c, std::optional<Witness> w) {
  c.symbolic = verdict(w);
  c.witness = std::move(w);
}

void set_numeric(CheckRecord& c, NumericOutcome o) {
  c.numeric = verdict(o.witness);
  c.numeric_witness = std::move(o.witness);
  c.interior = o.interior;
}

std::string star(const std::string& id) { return "S_" + id + "^* S_" + id; }
std::string range(const std::string& id) { return "S_" + id + " S_" + id + "^*"; }

std::string describe(const PrintedSum& sum) {
  std::string out;
  for (const auto& t : sum) {
    if (!out.empty()) out += " + ";
    out += t.adjoint_first ? star(t.edge) : range(t.edge);
  }
  return out;
}

Expression expression_of(const CKFamily& family, const PrintedSum& sum) {
  Expression e;
  for (const auto& t : sum) {
    const auto& s = family.isometry(t.edge);
    e.push_back(t.adjoint_first ? Product{adjoint(s), s} : Product{s, adjoint(s)});
  }
  return e;
}

CheckRecord completeness(const CKFamily& family, std::string_view name,
                         const std::vector<std::string>& edge_ids, Realizer& r) {
  if (edge_ids.empty()) throw std::invalid_argument("path has no edges");
  CheckRecord c;
  c.id = "pc:" + std::string(name);
  c.kind = CheckKind::path_completeness;
  Expression lhs;
  std::vector<APTerm> diagonal;
  bool diagonal_only = true;
  for (const auto& raw : edge_ids) {
    const auto& id = family.resolve(raw);
    if (!c.relation.empty()) c.relation += " + ";
    c.relation += star(id);
    const auto& s = family.isometry(id);
    lhs.push_back({adjoint(s), s});
    for (const auto& t : (adjoint(s) * s).terms()) {
      diagonal_only = diagonal_only && t.is_diagonal() &&
                      std::abs(t.coeff - Complex{1.0, 0.0}) <= kExactTol;
      diagonal.push_back(t);
    }
  }
  c.relation += " = I";
  const Expression identity{{APOperator::identity()}};

  std::optional<Witness> w;
  if (!diagonal_only) {
    w = difference_witness(evaluate(lhs), APOperator::identity());
  } else {
    const auto cover = check_cover(diagonal);
    if (cover.first_uncovered) {
      w = at(*cover.first_uncovered, *cover.first_uncovered, "index not covered");
    } else if (cover.first_overlap) {
      w = at(*cover.first_overlap, *cover.first_overlap, "index covered more than once");
    } else if (!cover.partition) {
      w = difference_witness(evaluate(lhs), APOperator::identity());
    }
  }
  set_symbolic(c, std::move(w));
  set_numeric(c, numeric_equal(r, lhs, identity));
  return c;
}

}  // namespace

std::string_view to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::partial_isometry: return "partial-isometry";
    case CheckKind::range_orthogonality: return "range-orthogonality";
    case CheckKind::sstar_s_equals_ptarget: return "SstarS-equals-Ptarget";
    case CheckKind::vertex_sum: return "vertex-sum";
    case CheckKind::path_completeness: return "path-completeness";
  }
  return "unknown";
}

std::string_view to_string(Verdict v) { return v == Verdict::pass ? "pass" : "fail"; }

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) {
    return c.symbolic == Verdict::fail || c.numeric == Verdict::fail;
  }));
}

std::size_t VerificationReport::disagreements() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.agrees(); }));
}

const CheckRecord* VerificationReport::find(std::string_view id) const {
  auto it = std::lower_bound(checks.begin(), checks.end(), id,
                             [](const CheckRecord& c, std::string_view key) { return c.id < key; });
  return it != checks.end() && it->id == id ? &*it : nullptr;
}

std::pair<Index, Index> VerificationReport::interior_range() const {
  if (checks.empty()) return {0, 0};
  Index lo = kUnboundedIndex, hi = 0;
  for (const auto& c : checks) {
    lo = std::min(lo, c.interior);
    hi = std::max(hi, c.interior);
  }
  return {lo, hi};
}

CheckRecord path_completeness(const CKFamily& family, std::string_view name,
                              const std::vector<std::string>& edge_ids, TruncationWindow window) {
  Realizer r(family, window);
  return completeness(family, name, edge_ids, r);
}

CheckRecord path_completeness(const CKFamily& family, const HamiltonianPath& path,
                              TruncationWindow window) {
  std::string name;
  for (const auto& id : path.edge_ids) name += (name.empty() ? "" : ",") + id;
  return path_completeness(family, name, path.edge_ids, window);
}

VerificationReport verify_ck(const CKFamily& family, TruncationWindow window) {
  VerificationReport report;
  report.family = family.name();
  report.window = window.steps();
  report.errata = family.errata();
  Realizer r(family, window);
  const auto& g = family.graph();
  const auto& edges = g.edges();

  for (const auto& e : edges) {
    const auto& s = family.isometry(e.id);
    const auto sa = adjoint(s);
    CheckRecord c;
    c.id = "pi:" + e.id;
    c.kind = CheckKind::partial_isometry;
    c.relation = "S_" + e.id + " S_" + e.id + "^* S_" + e.id + " = S_" + e.id + "; " + star(e.id) +
                 " is a projection";
    auto w = difference_witness(s * sa * s, s);
    if (!w) w = projection_defect(sa * s);
    set_symbolic(c, std::move(w));
    auto n = numeric_equal(r, {{s, sa, s}}, {{s}});
    if (!n.witness) {
      auto p = numeric_projection(r, {{sa, s}});
      p.interior = std::min(p.interior, n.interior);
      n = std::move(p);
    }
    set_numeric(c, std::move(n));
    report.checks.push_back(std::move(c));
  }

  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      const auto& x = family.isometry(edges[a].id);
      const auto& y = family.isometry(edges[b].id);
      CheckRecord c;
      c.id = "ro:" + edges[a].id + "|" + edges[b].id;
      c.kind = CheckKind::range_orthogonality;
      c.relation = range(edges[a].id) + " " + range(edges[b].id) + " = 0";
      const Product p{x, adjoint(x), y, adjoint(y)};
      set_symbolic(c, difference_witness(evaluate({p}), APOperator{}));
      set_numeric(c, numeric_equal(r, {p}, {}));
      report.checks.push_back(std::move(c));
    }
  }

  for (const auto& v : g.vertices()) {
    const auto in = g.in_edges(v);
    for (std::size_t a = 0; a < in.size(); ++a) {
      for (std::size_t b = a + 1; b < in.size(); ++b) {
        const auto& x = family.isometry(in[a]->id);
        const auto& y = family.isometry(in[b]->id);
        CheckRecord c;
        c.id = "ss:" + v.label() + ":" + in[a]->id + "=" + in[b]->id;
        c.kind = CheckKind::sstar_s_equals_ptarget;
        c.relation = star(in[a]->id) + " = " + star(in[b]->id);
        set_symbolic(c, difference_witness(adjoint(x) * x, adjoint(y) * y));
        set_numeric(c, numeric_equal(r, {{adjoint(x), x}}, {{adjoint(y), y}}));
        report.checks.push_back(std::move(c));
      }
    }
  }

  for (const auto& v : g.vertices()) {
    const auto out = g.out_edges(v);
    if (out.empty()) continue;
    CheckRecord c;
    c.id = "vs:" + v.label();
    c.kind = CheckKind::vertex_sum;
    Expression lhs;
    std::string sum;
    for (const auto* e : out) {
      const auto& s = family.isometry(e->id);
      lhs.push_back({s, adjoint(s)});
      sum += (sum.empty() ? "" : " + ") + range(e->id);
    }
    const auto in = g.in_edges(v);
    if (in.empty()) {
      c.relation = sum + " is a projection";
      set_symbolic(c, projection_defect(evaluate(lhs)));
      set_numeric(c, numeric_projection(r, lhs));
    } else {
      const auto& s = family.isometry(in.front()->id);
      c.relation = star(in.front()->id) + " = " + sum;
      set_symbolic(c, difference_witness(evaluate(lhs), adjoint(s) * s));
      set_numeric(c, numeric_equal(r, lhs, {{adjoint(s), s}}));
    }
    report.checks.push_back(std::move(c));
  }

  for (const auto& p : family.listed_paths()) {
    report.checks.push_back(completeness(family, p.name, p.edge_ids, r));
  }

  for (const auto& identity : family.printed_identities()) {
    const auto& chain = identity.chain;
    const std::string label = identity.vertex.label();
    const auto compare = [&](std::size_t k, const Expression& base, const std::string& base_text) {
      const auto& item = chain[k];
      CheckRecord c;
      c.id = "claim:P_" + label + ":" + std::to_string(k);
      c.kind = item.size() == 1 && item.front().adjoint_first ? CheckKind::sstar_s_equals_ptarget
                                                              : CheckKind::vertex_sum;
      c.relation = base_text + " = " + describe(item);
      const auto rhs = expression_of(family, item);
      set_symbolic(c, difference_witness(evaluate(base), evaluate(rhs)));
      set_numeric(c, numeric_equal(r, base, rhs));
      report.checks.push_back(std::move(c));
    };
    if (chain.size() == 1) {
      const auto& pv = family.vertex_projections().at(identity.vertex);
      compare(0, {{pv}}, "P_" + label);
      continue;
    }
    const auto base = expression_of(family, chain.front());
    for (std::size_t k = 1; k < chain.size(); ++k) compare(k, base, describe(chain.front()));
  }

  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  return report;
}

namespace {
nlohmann::json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"row", w->entry.row}, {"col", w->entry.col}, {"reason", w->reason}};
}
}  // namespace

nlohmann::json to_json(const CheckRecord& c) {
  return {{"id", c.id},
          {"kind", std::string(to_string(c.kind))},
          {"relation", c.relation},
          {"symbolic", std::string(to_string(c.symbolic))},
          {"numeric", std::string(to_string(c.numeric))},
          {"witness", witness_json(c.witness)},
          {"numericWitness", witness_json(c.numeric_witness)},
          {"interior", c.interior}};
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  const auto [lo, hi] = report.interior_range();
  return {{"family", report.family},
          {"window", report.window},
          {"interior", {{"min", lo}, {"max", hi}}},
          {"summary",
           {{"checks", report.checks.size()},
            {"failures", report.failures()},
            {"disagreements", report.disagreements()}}},
          {"checks", checks},
          {"errata", report.errata}};
}

}  // namespace qmg

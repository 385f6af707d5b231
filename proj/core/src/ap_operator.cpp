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

#include "qmgraph/ap_operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace qmg {
namespace {

Index checked_mul(Index a, Index b) {
  Index r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("AP index arithmetic overflow");
  }
  return r;
}

Index checked_add(Index a, Index b) {
  Index r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("AP index arithmetic overflow");
  }
  return r;
}

Index floor_div(Index a, Index b) {
  Index q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Index ceil_div(Index a, Index b) { return -floor_div(-a, b); }

Index positive_mod(Index a, Index m) {
  Index r = a % m;
  return r < 0 ? r + m : r;
}

Index checked_lcm(Index a, Index b) {
  return checked_mul(a / std::gcd(a, b), b);
}

// Returns g = gcd(a, b) and x with a*x == g (mod b).
std::pair<Index, Index> ext_gcd(Index a, Index b) {
  Index old_r = a, r = b, old_s = 1, s = 0;
  while (r != 0) {
    const Index q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return {old_r, old_s};
}

// All solutions of lhs(t) == rhs(u) with t, u >= 1 for positive slopes:
// t = t0 + dt*k, u = u0 + du*k, k >= 0.
struct StepMatch {
  Index t0, u0, dt, du;
};

std::optional<StepMatch> match_progressions(const IndexMap& lhs,
                                            const IndexMap& rhs) {
  const Index c = rhs.offset - lhs.offset;  // lhs.s*t - rhs.s*u = c
  const auto [g, inv] = ext_gcd(lhs.slope, rhs.slope);
  if (c % g != 0) return std::nullopt;
  const Index a = lhs.slope / g;
  const Index b = rhs.slope / g;
  const Index residue =
      b == 1 ? 0 : positive_mod(checked_mul(positive_mod(c / g, b), positive_mod(inv, b)), b);
  const Index t_min = std::max<Index>(1, ceil_div(checked_add(rhs.slope, c), lhs.slope));
  const Index t0 = t_min + positive_mod(residue - t_min, b);
  const Index u0 = (checked_mul(lhs.slope, t0) - c) / rhs.slope;
  return StepMatch{t0, u0, b, a};
}

// Step t >= 1 with map(t) == value, for a positive slope.
std::optional<Index> step_for(const IndexMap& map, Index value) {
  const Index d = value - map.offset;
  if (d <= 0 || d % map.slope != 0) return std::nullopt;
  return d / map.slope;
}

void require_diagonal(const APTerm& t) {
  if (!t.is_diagonal()) {
    throw std::invalid_argument("expected a diagonal progression term");
  }
}

std::optional<APTerm> multiply_terms(const APTerm& a, const APTerm& b) {
  const Complex coeff = a.coeff * b.coeff;
  if (a.is_unit() && b.is_unit()) {
    if (a.col.offset != b.row.offset) return std::nullopt;
    return APTerm::unit(a.row.offset, b.col.offset, coeff);
  }
  if (a.is_unit()) {
    const auto u = step_for(b.row, a.col.offset);
    if (!u) return std::nullopt;
    return APTerm::unit(a.row.offset, b.col.at(*u), coeff);
  }
  if (b.is_unit()) {
    const auto t = step_for(a.col, b.row.offset);
    if (!t) return std::nullopt;
    return APTerm::unit(a.row.at(*t), b.col.offset, coeff);
  }
  const auto m = match_progressions(a.col, b.row);
  if (!m) return std::nullopt;
  const Index row_slope = checked_mul(a.row.slope, m->dt);
  const Index col_slope = checked_mul(b.col.slope, m->du);
  return APTerm::progression(row_slope, a.row.at(m->t0) - row_slope, col_slope,
                             b.col.at(m->u0) - col_slope, coeff);
}

bool same_direction(const APTerm& a, const APTerm& b) {
  return checked_mul(a.row.slope, b.col.slope) ==
         checked_mul(b.row.slope, a.col.slope);
}

// Intersection point of two progression lines with different directions.
std::optional<MatrixEntry> crossing(const APTerm& a, const APTerm& b) {
  // a.rs*t - b.rs*u = A, a.cs*t - b.cs*u = B
  const Index A = b.row.offset - a.row.offset;
  const Index B = b.col.offset - a.col.offset;
  const Index det = checked_mul(b.row.slope, a.col.slope) -
                    checked_mul(a.row.slope, b.col.slope);
  const Index t_num = checked_mul(b.row.slope, B) - checked_mul(b.col.slope, A);
  const Index u_num = checked_mul(a.row.slope, B) - checked_mul(a.col.slope, A);
  if (t_num % det != 0 || u_num % det != 0) return std::nullopt;
  const Index t = t_num / det;
  const Index u = u_num / det;
  if (t < 1 || u < 1) return std::nullopt;
  return MatrixEntry{a.row.at(t), a.col.at(t)};
}

std::string format_map(const IndexMap& m) {
  std::ostringstream os;
  if (m.slope == 0) {
    os << m.offset;
    return os.str();
  }
  os << m.slope << "t";
  if (m.offset > 0) os << "+" << m.offset;
  if (m.offset < 0) os << m.offset;
  return os.str();
}

}  // namespace

Index IndexMap::at(Index t) const {
  return checked_add(checked_mul(slope, t), offset);
}

APTerm APTerm::unit(Index r, Index c, Complex coeff) {
  return APTerm{coeff, IndexMap{0, r}, IndexMap{0, c}};
}

APTerm APTerm::progression(Index row_slope, Index row_offset, Index col_slope,
                           Index col_offset, Complex coeff) {
  return APTerm{coeff, IndexMap{row_slope, row_offset},
                IndexMap{col_slope, col_offset}};
}

void validate_term(const APTerm& term) {
  const auto check = [](const IndexMap& m) {
    if (m.slope < 0) throw std::invalid_argument("negative AP slope");
    if (m.first() < 1) {
      throw std::invalid_argument("AP index below 1 at t = 1");
    }
  };
  check(term.row);
  check(term.col);
  if ((term.row.slope == 0) != (term.col.slope == 0)) {
    throw std::invalid_argument(
        "AP term must have both slopes zero or both positive");
  }
  if (!std::isfinite(term.coeff.real()) || !std::isfinite(term.coeff.imag())) {
    throw std::invalid_argument("non-finite AP coefficient");
  }
}

std::vector<APTerm> canonical_terms(std::vector<APTerm> terms) {
  const auto key = [](const APTerm& t) {
    return std::tie(t.row.slope, t.row.offset, t.col.slope, t.col.offset);
  };
  std::stable_sort(terms.begin(), terms.end(),
                   [&](const APTerm& a, const APTerm& b) { return key(a) < key(b); });
  std::vector<APTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && key(out.back()) == key(t)) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const APTerm& t) { return t.coeff == Complex{0.0, 0.0}; });
  return out;
}

APOperator::APOperator(std::vector<APTerm> terms) {
  for (const auto& t : terms) validate_term(t);
  terms_ = canonical_terms(std::move(terms));
}

APOperator APOperator::identity() { return progression(1, 0, 1, 0); }

APOperator APOperator::unit(Index r, Index c, Complex coeff) {
  return APOperator({APTerm::unit(r, c, coeff)});
}

APOperator APOperator::progression(Index row_slope, Index row_offset,
                                   Index col_slope, Index col_offset,
                                   Complex coeff) {
  return APOperator(
      {APTerm::progression(row_slope, row_offset, col_slope, col_offset, coeff)});
}

Complex APOperator::entry(Index r, Index c) const {
  Complex sum{0.0, 0.0};
  for (const auto& t : terms_) {
    if (t.is_unit()) {
      if (t.row.offset == r && t.col.offset == c) sum += t.coeff;
      continue;
    }
    const auto step = step_for(t.row, r);
    if (step && t.col.at(*step) == c) sum += t.coeff;
  }
  return sum;
}

APOperator adjoint(const APOperator& a) {
  std::vector<APTerm> out;
  out.reserve(a.terms().size());
  for (const auto& t : a.terms()) {
    out.push_back(APTerm{std::conj(t.coeff), t.col, t.row});
  }
  return APOperator(std::move(out));
}

APOperator multiply(const APOperator& a, const APOperator& b) {
  std::vector<APTerm> out;
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) {
      if (auto p = multiply_terms(x, y)) out.push_back(*p);
    }
  }
  return APOperator(std::move(out));
}

APOperator add(const APOperator& a, const APOperator& b) {
  std::vector<APTerm> out(a.terms());
  out.insert(out.end(), b.terms().begin(), b.terms().end());
  return APOperator(std::move(out));
}

APOperator scale(Complex c, const APOperator& a) {
  std::vector<APTerm> out(a.terms());
  for (auto& t : out) t.coeff *= c;
  return APOperator(std::move(out));
}

std::optional<MatrixEntry> first_nonzero_entry(const APOperator& a, double tol) {
  std::vector<MatrixEntry> candidates;
  std::vector<const APTerm*> progs;
  for (const auto& t : a.terms()) {
    if (t.is_unit()) {
      candidates.push_back({t.row.offset, t.col.offset});
    } else {
      progs.push_back(&t);
    }
  }
  for (std::size_t i = 0; i < progs.size(); ++i) {
    for (std::size_t j = i + 1; j < progs.size(); ++j) {
      if (same_direction(*progs[i], *progs[j])) continue;
      if (auto p = crossing(*progs[i], *progs[j])) candidates.push_back(*p);
    }
  }
  const Index isolated = static_cast<Index>(candidates.size());

  // Group progression terms by the lattice line they live on. Along one line
  // the coefficient is periodic (period lcm of row slopes) past the last
  // starting row; checking isolated+1 periods beyond that guarantees one
  // copy of every residue away from crossings and single units.
  std::map<std::tuple<Index, Index, Index>, std::vector<const APTerm*>> lines;
  for (const APTerm* t : progs) {
    const Index g = std::gcd(t->row.slope, t->col.slope);
    const Index dr = t->row.slope / g;
    const Index dc = t->col.slope / g;
    const Index cross = checked_mul(t->row.offset, dc) - checked_mul(t->col.offset, dr);
    lines[{dr, dc, cross}].push_back(t);
  }
  constexpr Index kMaxLinePoints = 20'000'000;
  for (const auto& [key, members] : lines) {
    const Index dr = std::get<0>(key);
    const Index dc = std::get<1>(key);
    Index period = 1;
    Index start_min = kUnboundedIndex;
    Index start_max = 0;
    for (const APTerm* t : members) {
      period = checked_lcm(period, t->row.slope);
      start_min = std::min(start_min, t->row.first());
      start_max = std::max(start_max, t->row.first());
    }
    const Index stop = checked_add(start_max, checked_mul(isolated + 1, period));
    if ((stop - start_min) / dr > kMaxLinePoints) {
      throw std::length_error("AP zero test exceeds point budget");
    }
    const APTerm& anchor = *members.front();
    const Index anchor_row = anchor.row.first();
    const Index anchor_col = anchor.col.first();
    for (Index r = start_min; r < stop; r += dr) {
      candidates.push_back({r, anchor_col + (r - anchor_row) / dr * dc});
    }
  }

  std::optional<MatrixEntry> best;
  for (const auto& p : candidates) {
    if (best && !(p < *best)) continue;
    if (std::abs(a.entry(p.row, p.col)) > tol) best = p;
  }
  return best;
}

bool is_zero(const APOperator& a, double tol) {
  return !first_nonzero_entry(a, tol).has_value();
}

bool equivalent(const APOperator& a, const APOperator& b, double tol) {
  return is_zero(a - b, tol);
}

std::optional<Index> first_common_index(const APTerm& p, const APTerm& q) {
  require_diagonal(p);
  require_diagonal(q);
  if (p.is_unit() && q.is_unit()) {
    if (p.row.offset == q.row.offset) return p.row.offset;
    return std::nullopt;
  }
  if (p.is_unit() || q.is_unit()) {
    const APTerm& u = p.is_unit() ? p : q;
    const APTerm& s = p.is_unit() ? q : p;
    if (step_for(s.row, u.row.offset)) return u.row.offset;
    return std::nullopt;
  }
  const auto m = match_progressions(p.row, q.row);
  if (!m) return std::nullopt;
  return p.row.at(m->t0);
}

bool progressions_disjoint(const APTerm& p, const APTerm& q) {
  return !first_common_index(p, q).has_value();
}

bool is_diagonal_projection(const APOperator& a) {
  const auto& terms = a.terms();
  for (const auto& t : terms) {
    if (!t.is_diagonal() || std::abs(t.coeff - Complex{1.0, 0.0}) > 1e-12) {
      return false;
    }
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (!progressions_disjoint(terms[i], terms[j])) return false;
    }
  }
  return true;
}

CoverReport check_cover(std::span<const APTerm> progressions) {
  CoverReport report;
  Index period = 1;
  Index last_start = 0;
  bool any_progression = false;
  for (const auto& t : progressions) {
    validate_term(t);
    require_diagonal(t);
    last_start = std::max(last_start, t.row.first());
    if (!t.is_unit()) {
      any_progression = true;
      period = checked_lcm(period, t.row.slope);
      report.density += 1.0 / static_cast<double>(t.row.slope);
    }
  }
  constexpr Index kMaxCoverBound = 50'000'000;
  const Index bound = any_progression ? checked_add(last_start, period) : last_start + 1;
  if (bound > kMaxCoverBound) {
    throw std::length_error("cover period exceeds budget");
  }
  std::vector<std::uint32_t> hits(static_cast<std::size_t>(bound) + 1, 0);
  for (const auto& t : progressions) {
    const Index step = t.is_unit() ? bound + 1 : t.row.slope;
    for (Index x = t.row.first(); x <= bound; x += step) ++hits[x];
  }
  for (Index x = 1; x <= bound; ++x) {
    if (hits[x] == 0 && !report.first_uncovered) report.first_uncovered = x;
    if (hits[x] > 1 && !report.first_overlap) report.first_overlap = x;
  }
  report.checked_through = bound;
  report.partition = any_progression && !report.first_uncovered && !report.first_overlap;
  return report;
}

bool progressions_cover_N(std::span<const APTerm> progressions) {
  return check_cover(progressions).partition;
}

TruncationWindow::TruncationWindow(Index steps) : steps_(steps) {
  if (steps < 1) throw std::invalid_argument("truncation window must be >= 1");
}

Index realized_extent(const APOperator& a, TruncationWindow w) {
  Index extent = 0;
  for (const auto& t : a.terms()) {
    const Index last = t.is_unit() ? 1 : w.steps();
    extent = std::max({extent, t.row.at(last), t.col.at(last)});
  }
  return extent;
}

namespace {

Index complete_extent(const APOperator& a, TruncationWindow w, bool rows) {
  Index bound = kUnboundedIndex;
  for (const auto& t : a.terms()) {
    if (t.is_unit()) continue;
    const IndexMap& m = rows ? t.row : t.col;
    bound = std::min(bound, m.at(w.steps() + 1) - 1);
  }
  return bound;
}

// Largest column reached from rows 1..limit of the truncated operator.
Index column_reach(const APOperator& a, TruncationWindow w, Index limit) {
  Index reach = 0;
  for (const auto& t : a.terms()) {
    if (t.is_unit()) {
      if (t.row.offset <= limit) reach = std::max(reach, t.col.offset);
      continue;
    }
    const Index steps = std::min(w.steps(), floor_div(limit - t.row.offset, t.row.slope));
    if (steps >= 1) reach = std::max(reach, t.col.at(steps));
  }
  return reach;
}

}  // namespace

Index complete_row_extent(const APOperator& a, TruncationWindow w) {
  return complete_extent(a, w, true);
}

Index complete_col_extent(const APOperator& a, TruncationWindow w) {
  return complete_extent(a, w, false);
}

Index exact_row_extent(std::span<const APOperator> chain, TruncationWindow w) {
  if (chain.empty()) return kUnboundedIndex;
  const auto exact_through = [&](Index limit) {
    for (const auto& factor : chain) {
      if (limit > complete_row_extent(factor, w)) return false;
      limit = column_reach(factor, w, limit);
      if (limit == 0) return true;
    }
    return true;
  };
  // Only a factor list led by finitely many units can be exact on every row.
  Index cap = complete_row_extent(chain.front(), w);
  if (cap == kUnboundedIndex) {
    cap = 1;
    for (const auto& factor : chain) cap = std::max(cap, realized_extent(factor, w) + 1);
    if (exact_through(cap)) return kUnboundedIndex;
  } else if (exact_through(cap)) {
    return cap;
  }
  Index lo = 0, hi = cap;  // exact_through(lo) holds, exact_through(hi) fails
  while (hi - lo > 1) {
    const Index mid = lo + (hi - lo) / 2;
    (exact_through(mid) ? lo : hi) = mid;
  }
  return lo;
}

DenseMatrix to_dense(const APOperator& a, TruncationWindow w) {
  return to_dense(a, w, realized_extent(a, w));
}

DenseMatrix to_dense(const APOperator& a, TruncationWindow w, Index dim) {
  return DenseMatrix(to_sparse(a, w, dim));
}

SparseMatrix to_sparse(const APOperator& a, TruncationWindow w, Index dim) {
  if (dim < realized_extent(a, w)) {
    throw std::invalid_argument("dense dimension smaller than realized extent");
  }
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (const auto& t : a.terms()) {
    const Index last = t.is_unit() ? 1 : w.steps();
    for (Index s = 1; s <= last; ++s) {
      triplets.emplace_back(t.row.at(s) - 1, t.col.at(s) - 1, t.coeff);
    }
  }
  SparseMatrix m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

std::string to_string(const APOperator& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) os << " + ";
    first = false;
    if (t.coeff != Complex{1.0, 0.0}) {
      os << "(" << t.coeff.real();
      if (t.coeff.imag() != 0.0) os << (t.coeff.imag() < 0 ? "-" : "+") << std::abs(t.coeff.imag()) << "i";
      os << ")*";
    }
    os << (t.is_unit() ? "E[" : "sum_t E[") << format_map(t.row) << ","
       << format_map(t.col) << "]";
  }
  return os.str();
}

nlohmann::json to_json(const APOperator& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : a.terms()) {
    terms.push_back({{"coeff", {t.coeff.real(), t.coeff.imag()}},
                     {"row", {t.row.slope, t.row.offset}},
                     {"col", {t.col.slope, t.col.offset}}});
  }
  return {{"terms", terms}};
}

APOperator operator_from_json(const nlohmann::json& j) {
  try {
    std::vector<APTerm> terms;
    for (const auto& item : j.at("terms")) {
      const auto& c = item.at("coeff");
      const auto& r = item.at("row");
      const auto& k = item.at("col");
      if (c.size() != 2 || r.size() != 2 || k.size() != 2) {
        throw std::invalid_argument("operator JSON pairs must have two entries");
      }
      terms.push_back(APTerm{Complex{c[0].get<double>(), c[1].get<double>()},
                             IndexMap{r[0].get<Index>(), r[1].get<Index>()},
                             IndexMap{k[0].get<Index>(), k[1].get<Index>()}});
    }
    return APOperator(std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed operator JSON: ") + e.what());
  }
}

}  // namespace qmg

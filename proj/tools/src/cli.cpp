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

#include "qmgraph/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qmgraph/channel.hpp"
#include "qmgraph/ck_family.hpp"
#include "qmgraph/qubit.hpp"
#include "qmgraph/relation_graph.hpp"

#ifndef QMGRAPH_VERSION
#define QMGRAPH_VERSION "0.0.0"
#endif

namespace qmg::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  Index window = 64;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;

  int n = 0;
  std::size_t limit = 200;
  std::string family;
  std::string file;
  long path = 0;
  int q = 0;
  bool exhaustive = false;
  std::size_t samples = 0;
  int i = 0;
};

struct Result {
  int code = kExitOk;
  std::string text;
};

json config_echo(const RunConfig& c) {
  json j{{"command", c.command},
         {"window", c.window},
         {"tol", c.tol},
         {"seed", c.seed},
         {"format", c.format},
         {"out", c.out.empty() ? json(nullptr) : json(c.out)}};
  if (c.command == "graph" || c.command == "paths") j["n"] = c.n;
  if (c.command == "paths") j["limit"] = c.limit;
  if (c.command == "ck-verify" || c.command == "channel") {
    j["family"] = c.family.empty() ? json(nullptr) : json(c.family);
    j["file"] = c.file.empty() ? json(nullptr) : json(c.file);
  }
  if (c.command == "channel") j["path"] = c.path;
  if (c.command == "qubit factor") j["file"] = c.file;
  if (c.command == "qubit claim") {
    j["q"] = c.q;
    j["exhaustive"] = c.exhaustive;
    j["samples"] = c.samples;
  }
  if (c.command == "qubit dims") j["i"] = c.i;
  return j;
}

json report(const RunConfig& c, json interior) {
  return {{"tool", {{"name", "qmgraph"}, {"version", QMGRAPH_VERSION}}},
          {"config", config_echo(c)},
          {"interior", std::move(interior)}};
}

json interior_json(Index lo, Index hi) { return {{"min", lo}, {"max", hi}}; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
  if (c.format.empty()) return *allowed.begin();
  for (const char* f : allowed) {
    if (c.format == f) return c.format;
  }
  throw UsageError("format '" + c.format + "' is not supported by " + c.command);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

CKFamily load_family(const RunConfig& c) {
  if (!c.file.empty() && !c.family.empty()) throw UsageError("give --family or --file, not both");
  if (!c.file.empty()) return family_from_json(read_json_file(c.file));
  if (c.family == "pi2") return family_pi2();
  if (c.family == "pi3") return family_pi3();
  throw UsageError("unknown family '" + c.family + "' (expected pi2 or pi3)");
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::vector<std::string> labels(const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(v.label());
  return out;
}

Result cmd_graph(const RunConfig& c) {
  if (c.n < 2 || c.n > 16) throw UsageError("graph needs --n in 2..16");
  const auto format = parse_graph_format(require_format(c, {"dot", "json"}));
  return {kExitOk, export_graph(build_graph(c.n), format)};
}

Result cmd_paths(const RunConfig& c) {
  if (c.n < 2 || c.n > 5) throw UsageError("paths needs --n in 2..5");
  const auto format = require_format(c, {"text", "json"});
  const auto g = build_graph(c.n);
  const auto listed = enumerate_hamiltonian_paths(g, c.limit);
  const auto count = count_hamiltonian_paths(g);
  const auto formula = claimed_hamiltonian_count(c.n);
  const bool agree = count.labeled_paths == static_cast<std::uint64_t>(formula);
  if (format == "json") {
    json paths = json::array();
    for (const auto& p : listed) {
      paths.push_back({{"edges", p.edge_ids}, {"vertices", labels(p.vertices)}});
    }
    json j = report(c, nullptr);
    j["n"] = c.n;
    j["count"] = count.labeled_paths;
    j["vertexSequences"] = count.vertex_sequences;
    j["formula"] = formula;
    j["agree"] = agree;
    j["listed"] = listed.size();
    j["paths"] = paths;
    return {kExitOk, dump(j)};
  }
  std::ostringstream os;
  os << "# G(Pi_" << c.n << "): " << g.vertices().size() << " vertices, " << g.edges().size()
     << " edges\n";
  for (std::size_t k = 0; k < listed.size(); ++k) {
    os << "path " << k << ": " << join(listed[k].edge_ids, " ") << " | "
       << join(labels(listed[k].vertices), " ") << "\n";
  }
  os << "listed=" << listed.size() << " of " << count.labeled_paths << "\n";
  os << "count=" << count.labeled_paths << ", formula=4n-6=" << formula
     << ", agree=" << (agree ? "yes" : "no") << "\n";
  return {kExitOk, os.str()};
}

Result cmd_ck_verify(const RunConfig& c) {
  const auto format = require_format(c, {"json", "text"});
  const auto family = load_family(c);
  const auto r = verify_ck(family, TruncationWindow(c.window));
  const int code = r.all_pass() ? kExitOk : kExitFindings;
  const auto [lo, hi] = r.interior_range();
  if (format == "text") {
    std::ostringstream os;
    for (const auto& check : r.checks) {
      os << (check.symbolic == Verdict::pass ? "PASS" : "FAIL") << " "
         << (check.agrees() ? "" : "[numeric disagrees] ") << check.id << "  " << check.relation;
      if (check.witness) {
        os << "  @(" << check.witness->entry.row << "," << check.witness->entry.col << ") "
           << check.witness->reason;
      }
      os << "\n";
    }
    os << "family=" << r.family << " window=" << r.window << " interior=" << lo << ".." << hi
       << " checks=" << r.checks.size() << " failures=" << r.failures()
       << " disagreements=" << r.disagreements() << "\n";
    return {code, os.str()};
  }
  json j = report(c, interior_json(lo, hi));
  j.update(to_json(r));
  j["interior"] = interior_json(lo, hi);
  return {code, dump(j)};
}

Result cmd_channel(const RunConfig& c) {
  require_format(c, {"json"});
  json source;
  std::optional<KrausChannel> ch;
  if (!c.file.empty() && c.family.empty()) {
    ch = channel_from_json(read_json_file(c.file));
    source = {{"file", c.file}};
  } else {
    const auto family = load_family(c);
    if (c.path < 0) throw UsageError("--path must be non-negative");
    const auto paths =
        enumerate_hamiltonian_paths(family.graph(), static_cast<std::size_t>(c.path) + 1);
    if (static_cast<std::size_t>(c.path) >= paths.size()) {
      throw UsageError("path index " + std::to_string(c.path) + " out of range (" +
                       std::to_string(paths.size()) + " paths)");
    }
    const auto& p = paths[static_cast<std::size_t>(c.path)];
    Index dim = 1;
    for (const auto& id : p.edge_ids) {
      dim = std::max(dim, realized_extent(family.isometry(id), TruncationWindow(c.window)));
    }
    if (dim > kMaxChannelDim) {
      throw UsageError("dense dimension " + std::to_string(dim) + " exceeds " +
                       std::to_string(kMaxChannelDim) + "; lower --window");
    }
    ch = channel_from_path(family, p, TruncationWindow(c.window));
    source = {{"family", family.name()},
              {"index", c.path},
              {"edges", p.edge_ids},
              {"vertices", labels(p.vertices)}};
  }
  if (ch->dim() > kMaxChannelDim) throw UsageError("channel dimension exceeds the dense budget");

  const auto tp = is_trace_preserving(*ch, c.tol);
  PositivityReport cp;
  std::string method;
  if (ch->dim() <= 16) {
    cp = is_completely_positive(choi(*ch), c.tol);
    method = "choi-eigenvalues";
  } else {
    cp = is_completely_positive(*ch, c.tol);
    method = "kraus-gram";
  }
  const auto traces = choi_partial_traces(*ch, c.tol);
  const auto s = stinespring(*ch);
  const auto sv = verify_stinespring(*ch, s, c.tol, c.seed);
  const auto basis = confusability_basis(*ch, c.tol);

  json j = report(c, interior_json(1, ch->interior()));
  j["source"] = source;
  j["channel"] = {{"dim", ch->dim()}, {"rank", ch->rank()}, {"interior", ch->interior()}};
  j["tracePreserving"] = {{"flag", tp.flag},
                          {"maxDeviation", tp.max_deviation},
                          {"checkedThrough", tp.checked_through}};
  j["completelyPositive"] = {{"flag", cp.flag}, {"minEigenvalue", cp.min_eigenvalue}, {"method", method}};
  j["choiPartialTraces"] = {{"firstDeviation", traces.first_deviation},
                            {"secondDeviation", traces.second_deviation},
                            {"firstIsIdentity", traces.first_is_identity},
                            {"secondIsIdentity", traces.second_is_identity}};
  j["stinespring"] = {{"flag", sv.flag},
                      {"environmentDim", s.r},
                      {"maxActionError", sv.max_action_error},
                      {"isometryError", sv.isometry_error ? json(*sv.isometry_error) : json(nullptr)},
                      {"samples", sv.samples}};
  j["confusability"] = {{"dimension", basis.basis.size()},
                        {"diagonalDimension", basis.diagonal_dimension},
                        {"identityResidual", basis.identity_residual},
                        {"block", basis.dim}};
  j["tolerances"] = {{"tracePreserving", c.tol},
                     {"completelyPositive", c.tol},
                     {"stinespring", c.tol},
                     {"confusability", c.tol}};
  const bool pass = tp.flag && cp.flag && sv.flag;
  return {pass ? kExitOk : kExitFindings, dump(j)};
}

Result cmd_qubit_factor(const RunConfig& c) {
  require_format(c, {"json"});
  const auto state = state_from_json(read_json_file(c.file));
  json j = report(c, nullptr);
  j["state"] = to_json(state);
  j["normDeviation"] = state.norm_deviation;
  j["result"] = to_json(factor_product(state, c.tol));
  return {kExitOk, dump(j)};
}

Result cmd_qubit_claim(const RunConfig& c) {
  require_format(c, {"json"});
  if (c.exhaustive == (c.samples > 0)) throw UsageError("give exactly one of --exhaustive or --samples");
  const auto mode = c.exhaustive ? ClaimMode::exhaustive : ClaimMode::sampled;
  const auto r = test_restricted_amplitude_claim(c.q, mode, c.samples, c.seed, c.tol);
  json j = report(c, nullptr);
  j["result"] = to_json(r);
  return {r.entangled_count == 0 ? kExitOk : kExitFindings, dump(j)};
}

Result cmd_qubit_dims(const RunConfig& c) {
  require_format(c, {"json"});
  json j = report(c, nullptr);
  j["result"] = to_json(dimension_bookkeeping(c.i));
  return {kExitOk, dump(j)};
}

void write_atomically(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw UsageError("cannot move output into '" + path + "'");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  // CLI11 reads an empty string as zero for numeric options.
  const CLI::Validator non_empty(
      [](std::string& s) { return s.empty() ? std::string("value must not be empty") : std::string(); },
      "", "NONEMPTY");
  RunConfig cfg;
  CLI::App app{"Relation graphs of quantum matrix algebras, their Cuntz-Krieger families, "
               "and the channels and qubit states built from them.",
               "qmgraph"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--window", cfg.window, "Progression steps kept in truncations")
      ->check(CLI::Range(Index{1}, Index{65536}))->check(non_empty);
  app.add_option("--tol", cfg.tol, "Numeric tolerance")->check(CLI::PositiveNumber)
      ->check(non_empty);
  app.add_option("--seed", cfg.seed, "Seed for randomized verification")->check(non_empty);
  app.add_option("--out", cfg.out, "Write the report to this file");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "dot", "text"}));

  auto* graph = app.add_subcommand("graph", "Export G(Pi_n)");
  graph->add_option("--n", cfg.n, "Matrix size")->required()->check(non_empty);

  auto* paths = app.add_subcommand("paths", "Hamiltonian paths of G(Pi_n) and their count");
  paths->add_option("--n", cfg.n, "Matrix size (2..5)")->required()->check(non_empty);
  paths->add_option("--limit", cfg.limit, "Paths to list")->check(non_empty);

  auto* verify = app.add_subcommand("ck-verify", "Verify a Cuntz-Krieger family");
  auto* verify_family = verify->add_option("--family", cfg.family, "pi2 or pi3");
  auto* verify_file = verify->add_option("--file", cfg.file, "Family JSON");
  verify_family->excludes(verify_file);

  auto* channel = app.add_subcommand("channel", "Channel of a Hamiltonian path family");
  auto* channel_family = channel->add_option("--family", cfg.family, "pi2 or pi3");
  channel->add_option("--path", cfg.path, "Index into the path enumeration")->check(non_empty);
  auto* channel_file = channel->add_option("--file", cfg.file, "Kraus channel JSON");
  channel_family->excludes(channel_file);

  auto* qubit = app.add_subcommand("qubit", "Multi-qubit state tools");
  qubit->require_subcommand(1);
  qubit->fallthrough();
  auto* factor = qubit->add_subcommand("factor", "Product-state factorization");
  factor->add_option("--file", cfg.file, "State JSON")->required();
  factor->fallthrough();
  auto* claim = qubit->add_subcommand("claim", "Classify restricted-amplitude states");
  claim->add_option("--q", cfg.q, "Qubit count")->required()->check(non_empty);
  auto* exhaustive = claim->add_flag("--exhaustive", cfg.exhaustive, "Enumerate every state");
  auto* samples = claim->add_option("--samples", cfg.samples, "Number of sampled states")
      ->check(non_empty);
  exhaustive->excludes(samples);
  claim->fallthrough();
  auto* dims = qubit->add_subcommand("dims", "Subsystem dimension bookkeeping");
  dims->add_option("--i", cfg.i, "Index i >= 2")->required()->check(non_empty);
  dims->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qmgraph: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    Result r;
    if (graph->parsed()) {
      cfg.command = "graph";
      r = cmd_graph(cfg);
    } else if (paths->parsed()) {
      cfg.command = "paths";
      r = cmd_paths(cfg);
    } else if (verify->parsed()) {
      cfg.command = "ck-verify";
      if (cfg.family.empty() && cfg.file.empty()) throw UsageError("ck-verify needs --family or --file");
      r = cmd_ck_verify(cfg);
    } else if (channel->parsed()) {
      cfg.command = "channel";
      if (cfg.family.empty() && cfg.file.empty()) throw UsageError("channel needs --family or --file");
      r = cmd_channel(cfg);
    } else if (factor->parsed()) {
      cfg.command = "qubit factor";
      r = cmd_qubit_factor(cfg);
    } else if (claim->parsed()) {
      cfg.command = "qubit claim";
      r = cmd_qubit_claim(cfg);
    } else if (dims->parsed()) {
      cfg.command = "qubit dims";
      r = cmd_qubit_dims(cfg);
    } else {
      throw UsageError("no command given");
    }
    if (cfg.out.empty()) {
      out << r.text;
    } else {
      write_atomically(cfg.out, r.text);
    }
    return r.code;
  } catch (const std::exception& e) {
    err << "qmgraph: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace qmg::cli

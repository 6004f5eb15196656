#pragma once

// Command-line front end. Exit codes: 0 property holds / object found,
// 1 property fails / none exists, 2 usage, input or precondition error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "threedpm/errors.hpp"
#include "threedpm/io.hpp"
#include "threedpm/master_lists.hpp"
#include "threedpm/model.hpp"
#include "threedpm/reduce.hpp"
#include "threedpm/search.hpp"
#include "threedpm/solve.hpp"
#include "threedpm/verify.hpp"

namespace threedpm {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitError = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

inline nlohmann::json triple_json(const Instance& inst, const Triple& t) {
  return nlohmann::json::array({inst.name(t.a), inst.name(t.b), inst.name(t.c)});
}

inline nlohmann::json verdict_json(const Instance& inst, const Verdict& v) {
  nlohmann::json j;
  j["property"] = std::string(to_string(v.property));
  j["holds"] = v.holds;
  if (const auto* m = std::get_if<Matching>(&v.witness)) {
    nlohmann::json triples = nlohmann::json::array();
    for (const Triple& t : m->triples()) triples.push_back(triple_json(inst, t));
    j["witness"] = {{"kind", "matching"}, {"triples", triples}};
  } else if (const auto* t = std::get_if<Triple>(&v.witness)) {
    j["witness"] = {{"kind", "blocking-triple"}, {"triple", triple_json(inst, *t)}};
  } else {
    j["witness"] = nullptr;
  }
  if (auto d = v.delta()) {
    j["delta"] = *d;
  } else {
    j["delta"] = nullptr;
  }
  return j;
}

/// Search flags shared by the subcommands that may run an exhaustive search.
struct SearchFlags {
  std::uint64_t max_nodes = 0;
  std::optional<unsigned> threads;

  void attach(CLI::App* sub) {
    sub->add_option("--max-nodes", max_nodes, "Abort exhaustive searches after this many nodes (0 = no limit)");
    sub->add_option("--threads", threads, "Worker threads for exhaustive searches (default $THREEDPM_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  }

  SearchOptions resolve() const {
    SearchOptions o;
    o.max_nodes = max_nodes;
    if (threads) {
      o.threads = *threads;
    } else if (const char* env = std::getenv("THREEDPM_THREADS"); env && *env) {
      try {
        std::size_t used = 0;
        const long v = std::stol(env, &used);
        if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
        o.threads = static_cast<unsigned>(v);
      } catch (const std::exception&) {
        throw PreconditionError("THREEDPM_THREADS must be a positive integer, got '" + std::string(env) + "'");
      }
    }
    return o;
  }
};

inline Property resolve_property(const std::string& name, const std::string& voters) {
  auto p = parse_property(name);
  if (!p) throw PreconditionError("unknown property '" + name + "'");
  if (voters == "ab") {
    if (*p == Property::Popular || *p == Property::ABPopular) return Property::ABPopular;
    throw PreconditionError("--voters=ab only applies to popularity");
  }
  if (voters != "all") throw PreconditionError("--voters must be 'all' or 'ab'");
  return *p;
}

inline Strategy resolve_strategy(const std::string& name) {
  auto s = parse_strategy(name);
  if (!s) throw PreconditionError("unknown strategy '" + name + "'");
  return *s;
}

}  // namespace detail

/// Runs the tool on `args` (without the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-dimensional matchings with cyclic preferences: verification, search and reductions",
               "threedpm"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string instance_path, matching_path, input_path, output_base, property_name = "popular", voters = "all",
                                                                        strategy_name = "auto", method, from,
                                                                        problem, kind = "random", fixture_name;
  bool show_witness = false, json = false, incomplete = false;
  std::size_t gen_n = 3;
  int gen_k = 0;
  std::uint64_t seed = 0;
  detail::SearchFlags search;

  auto* verify_cmd = app.add_subcommand("verify", "Check whether a matching has a property");
  verify_cmd->add_option("instance", instance_path, "Instance document")->required();
  verify_cmd->add_option("matching", matching_path, "Matching document")->required();
  verify_cmd->add_option("--property", property_name,
                         "weak-stable | strong-stable | popular | strong-popular | ab-popular");
  verify_cmd->add_option("--voters", voters, "all | ab (ab: only classes A and B vote)");
  verify_cmd->add_option("--strategy", strategy_name, "auto | brute | poly");
  verify_cmd->add_flag("--witness", show_witness, "Print the witness when the property fails");
  verify_cmd->add_flag("--json", json, "Print one JSON object {property, holds, witness, delta}");
  search.attach(verify_cmd);

  auto* solve_cmd = app.add_subcommand("solve", "Find a matching with a property, or report none");
  solve_cmd->add_option("instance", instance_path, "Instance document")->required();
  solve_cmd->add_option("--property", property_name, "Property to find");
  solve_cmd->add_option("--voters", voters, "all | ab");
  solve_cmd->add_option("--strategy", strategy_name, "auto | brute | poly");
  search.attach(solve_cmd);

  auto* witness_cmd = app.add_subcommand("witness", "Construct a matching more popular than the given one");
  witness_cmd->add_option("instance", instance_path, "Instance document")->required();
  witness_cmd->add_option("matching", matching_path, "Matching document (not used by obs1)");
  witness_cmd->add_option("--method", method, "3ml | 2ml | obs1 | search")
      ->required()
      ->check(CLI::IsMember({"3ml", "2ml", "obs1", "search"}));
  search.attach(witness_cmd);

  auto* reduce_cmd = app.add_subcommand("reduce", "Compile a source problem into a matching instance");
  reduce_cmd->add_option("--from", from, "sat | 3dm-spm | 3dm-pmv | osties")
      ->required()
      ->check(CLI::IsMember({"sat", "3dm-spm", "3dm-pmv", "osties"}));
  reduce_cmd->add_option("input", input_path, "Source problem document")->required();
  reduce_cmd->add_option("-o,--output", output_base, "Write <out>.inst (and <out>.match) instead of stdout");

  auto* generate_cmd = app.add_subcommand("generate", "Print a seeded random instance");
  generate_cmd->add_option("--kind", kind, "random | k-masterlist")->check(CLI::IsMember({"random", "k-masterlist"}));
  generate_cmd->add_option("--n", gen_n, "Agents per class")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--k", gen_k, "Number of master-list classes (A, then B, then C)")->check(CLI::Range(0, 3));
  generate_cmd->add_flag("--incomplete", incomplete, "Keep each list entry with probability 1/2");
  generate_cmd->add_option("--seed", seed, "64-bit seed");
  generate_cmd->add_option("-o,--output", output_base, "Write the instance to this file");

  auto* oracle_cmd = app.add_subcommand("oracle", "Solve a source problem by brute force");
  oracle_cmd->add_option("--problem", problem, "sat | 3dm | osties")
      ->required()
      ->check(CLI::IsMember({"sat", "3dm", "osties"}));
  oracle_cmd->add_option("input", input_path, "Source problem document")->required();

  auto* fixture_cmd = app.add_subcommand("fixture", "Print a built-in figure fixture");
  fixture_cmd->add_option("name", fixture_name, "fig1 | fig2 | fig1_M | fig1_Mprime | fig2_M")->required();

  std::vector<std::string> argv_store{"threedpm"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    if (verify_cmd->parsed()) {
      const Instance inst = parse_instance(detail::read_file(instance_path));
      const Matching m = parse_matching(inst, detail::read_file(matching_path));
      const Property p = detail::resolve_property(property_name, voters);
      VerifyOptions opts{detail::resolve_strategy(strategy_name), search.resolve()};
      const Verdict v = verify(inst, m, p, opts);
      if (opts.strategy == Strategy::Auto && v.route == "brute" &&
          (p == Property::StrongPopular || p == Property::ABPopular)) {
        err << "note: no polynomial route for this instance, used exhaustive search\n";
      }
      if (json) {
        out << detail::verdict_json(inst, v).dump() << "\n";
      } else {
        out << to_string(p) << ": " << (v.holds ? "holds" : "fails") << "\n";
        if (show_witness && !v.holds) {
          if (const auto* w = std::get_if<Matching>(&v.witness)) {
            out << "delta: " << *v.delta() << "\n" << serialize_matching(inst, *w);
          } else if (const auto* t = std::get_if<Triple>(&v.witness)) {
            out << "blocking triple: " << inst.name(t->a) << " " << inst.name(t->b) << " " << inst.name(t->c)
                << "\n";
          }
        }
      }
      return v.holds ? kExitHolds : kExitFails;
    }

    if (solve_cmd->parsed()) {
      const Instance inst = parse_instance(detail::read_file(instance_path));
      const Property p = detail::resolve_property(property_name, voters);
      VerifyOptions opts{detail::resolve_strategy(strategy_name), search.resolve()};
      const SolveResult r = find_matching(inst, p, opts);
      if (opts.strategy == Strategy::Auto && r.route == "brute" &&
          (p == Property::StrongPopular || p == Property::ABPopular)) {
        err << "note: no polynomial route for this instance, used exhaustive search\n";
      }
      if (!r.matching) {
        out << "none\n";
        return kExitFails;
      }
      out << serialize_matching(inst, *r.matching);
      return kExitHolds;
    }

    if (witness_cmd->parsed()) {
      const Instance inst = parse_instance(detail::read_file(instance_path));
      if (method == "obs1") {
        out << serialize_matching(inst, construct_obs1(inst));
        return kExitHolds;
      }
      if (matching_path.empty()) throw PreconditionError("--method=" + method + " needs a matching document");
      const Matching m = parse_matching(inst, detail::read_file(matching_path));
      std::optional<Witness> w;
      if (method == "3ml") {
        w = witness_3ml(inst, m);
      } else if (method == "2ml") {
        w = witness_2ml(inst, m);
      } else {
        auto found = more_popular_search(inst, m, Voters::All, Threshold::MorePopular, search.resolve());
        if (!found) {
          out << "none\n";
          return kExitFails;
        }
        const int d = delta(inst, *found, m);
        w = Witness{std::move(*found), d, "search"};
      }
      out << "# delta " << w->delta << " (" << w->route << ")\n" << serialize_matching(inst, w->matching);
      return kExitHolds;
    }

    if (reduce_cmd->parsed()) {
      const std::string text = detail::read_file(input_path);
      std::optional<Instance> inst;
      std::optional<Matching> designated;
      if (from == "sat") {
        inst = reduce_sat(parse_sat(text));
      } else if (from == "osties") {
        inst = reduce_osties_ab(parse_osties(text));
      } else {
        const Cyclic3DM j = parse_3dm(text);
        auto r = from == "3dm-spm" ? reduce_3dm_spmi(j) : reduce_3dm_pmvi(j);
        inst = std::move(r.instance);
        designated = std::move(r.designated);
      }
      if (output_base.empty()) {
        out << serialize_instance(*inst);
        if (designated) out << "\n" << serialize_matching(*inst, *designated);
      } else {
        detail::write_file(output_base + ".inst", serialize_instance(*inst));
        if (designated) detail::write_file(output_base + ".match", serialize_matching(*inst, *designated));
      }
      return kExitHolds;
    }

    if (generate_cmd->parsed()) {
      GenerateOptions o;
      o.kind = *parse_gen_kind(kind);
      o.n = gen_n;
      o.k = gen_k;
      o.complete = !incomplete;
      o.seed = seed;
      const std::string text = serialize_instance(generate(o));
      if (output_base.empty()) {
        out << text;
      } else {
        detail::write_file(output_base, text);
      }
      return kExitHolds;
    }

    if (oracle_cmd->parsed()) {
      const std::string text = detail::read_file(input_path);
      if (problem == "sat") {
        const SatInstance phi = parse_sat(text);
        validate_sat(phi);
        if (auto sigma = oracle_sat(phi)) {
          out << serialize_assignment(phi, *sigma);
          return kExitHolds;
        }
      } else if (problem == "3dm") {
        const Cyclic3DM j = parse_3dm(text);
        if (auto sol = oracle_3dm(j)) {
          out << serialize_3dm_solution(j, *sol);
          return kExitHolds;
        }
      } else {
        const OneSidedTiesInstance g = parse_osties(text);
        if (auto m = oracle_osties(g)) {
          out << serialize_osties_matching(g, *m);
          return kExitHolds;
        }
      }
      out << "none\n";
      return kExitFails;
    }

    if (fixture_cmd->parsed()) {
      out << fixture_text(fixture_name);
      return kExitHolds;
    }
  } catch (const SearchLimitExceeded& e) {
    err << "error: search aborted: explored " << e.nodes() << " nodes, limit is " << search.max_nodes
        << "; no verdict reached\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace threedpm

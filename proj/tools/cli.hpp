#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dichromat/dichromat.hpp"
#include "dichromat/io.hpp"

namespace dichromat::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kCapacity = 2,
  kVerificationFailed = 3,
};

struct RunConfig {
  std::string command;
  int m = 0;
  std::string params_path;
  std::string format;
  std::uint64_t seed = 0;
  std::optional<int> max_m;  // overrides DP caps (after DICHROMAT_MAX_M)

  // profile
  std::string kind = "node";
  // bset
  std::uint32_t d = 0;
  // verify
  std::string which;
  // sweepout
  std::string strategy;
  std::optional<double> delta;
  std::string trace_in;
  std::string trace_out;
  // export-dot
  std::string witness;
};

namespace detail {

inline Caps resolve_caps(const RunConfig& cfg) {
  Caps caps = Caps::from_env();
  if (cfg.max_m) {
    if (*cfg.max_m < 1) throw InvalidParameter("--max-m must be >= 1");
    caps.profile_max_m = *cfg.max_m;
    caps.achievable_max_m = *cfg.max_m;
    caps.tree_max_m = std::max(caps.tree_max_m, *cfg.max_m);
  }
  return caps;
}

inline BlockParams<double> load_params(const std::string& path) {
  if (path.empty()) return default_block_params();
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open params file '" + path + "'");
  return io::read_block_params(in);
}

inline void require_format(const std::string& format, std::initializer_list<const char*> allowed,
                           const std::string& command) {
  std::string list;
  for (const char* a : allowed) {
    if (format == a) return;
    if (!list.empty()) list += ", ";
    list += a;
  }
  throw InvalidParameter("format '" + format + "' is not available for " + command + " (use " + list + ")");
}

inline void print_json(std::ostream& out, const io::json& j) { out << j.dump(2) << '\n'; }

}  // namespace detail

// Executes one parsed command. Writes results to `out`, diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Caps caps = detail::resolve_caps(cfg);
    const std::string& cmd = cfg.command;

    if (cmd == "profile") {
      const std::string format = cfg.format.empty() ? "csv" : cfg.format;
      detail::require_format(format, {"csv", "json"}, cmd);
      if (cfg.kind != "node" && cfg.kind != "leaf") throw InvalidParameter("--kind must be node or leaf");
      const auto p = cfg.kind == "node" ? node_profile(cfg.m, caps) : leaf_profile(cfg.m, caps);
      if (format == "csv") {
        io::write_profile_csv(out, p);
      } else {
        detail::print_json(out, io::to_json(p));
      }
      return kOk;
    }

    if (cmd == "bset") {
      const std::string format = cfg.format.empty() ? "json" : cfg.format;
      detail::require_format(format, {"json", "csv"}, cmd);
      const auto s = achievable_set(cfg.m, cfg.d, caps);
      if (format == "csv") {
        out << "b\n";
        for (Node b : s.members) out << b << '\n';
      } else {
        detail::print_json(out, io::to_json(s));
      }
      return kOk;
    }

    if (cmd == "verify") {
      detail::require_format(cfg.format.empty() ? "json" : cfg.format, {"json"}, cmd);
      const BoundCheck which = parse_bound_check(cfg.which);
      const auto report = verify(cfg.m, which, caps);
      detail::print_json(out, io::to_json(report, which));
      if (!report.holds) {
        err << "verification failed: " << report.quantity << " at m = " << report.m << '\n';
        return kVerificationFailed;
      }
      return kOk;
    }

    if (cmd == "width-bound") {
      detail::require_format(cfg.format.empty() ? "json" : cfg.format, {"json"}, cmd);
      const auto params = detail::load_params(cfg.params_path);
      const auto w = width_lower_bound(cfg.m, params, caps);
      detail::print_json(out, io::to_json(w, params));
      if (w.certified_bound < w.paper_bound) {
        err << "verification failed: certified width bound below the closed-form bound\n";
        return kVerificationFailed;
      }
      return kOk;
    }

    if (cmd == "iso-bound") {
      detail::require_format(cfg.format.empty() ? "json" : cfg.format, {"json"}, cmd);
      const auto params = detail::load_params(cfg.params_path);
      detail::print_json(out, io::to_json(iso_profile_lower_bound(cfg.m, params, caps)));
      return kOk;
    }

    if (cmd == "sweepout") {
      detail::require_format(cfg.format.empty() ? "json" : cfg.format, {"json"}, cmd);
      const auto params = detail::load_params(cfg.params_path);
      dichromat::detail::require(cfg.m >= 1, "m must be >= 1");
      dichromat::detail::require_cap(cfg.m, caps.tree_max_m, "sweepout");
      const double delta = cfg.delta.value_or(default_step_bound(params));
      std::string strategy = cfg.strategy;
      std::optional<SweepoutTrace> trace;
      if (!cfg.trace_in.empty()) {
        std::ifstream in(cfg.trace_in);
        if (!in) throw MalformedInput("cannot open trace file '" + cfg.trace_in + "'");
        trace.emplace(read_trace_csv(in, region_graph(cfg.m, params, caps.tree_max_m), delta));
        strategy = "file";
      } else {
        trace.emplace(generate_trace(parse_sweep_strategy(cfg.strategy), cfg.m, params, delta, cfg.seed));
      }
      if (auto bad = validate_trace(*trace)) {
        throw MalformedInput("invalid trace at step " + std::to_string(bad->step) + ", " +
                             trace->entry_label(bad->entry) + ": " + bad->reason);
      }
      if (!cfg.trace_out.empty()) {
        std::ofstream trace_file(cfg.trace_out);
        if (!trace_file) throw MalformedInput("cannot write trace file '" + cfg.trace_out + "'");
        write_trace_csv(trace_file, *trace, io::kSignificantDigits);
      }
      const auto cert = certify(*trace, params);
      detail::print_json(out, io::to_json(cert, strategy, cfg.seed, delta));
      if (cert.certified_area < cert.paper_bound) {
        err << "verification failed: certified area below C * ceil(m/2) / 5\n";
        return kVerificationFailed;
      }
      return kOk;
    }

    if (cmd == "export-dot") {
      detail::require_format(cfg.format.empty() ? "dot" : cfg.format, {"dot"}, cmd);
      const auto eq = cfg.witness.find('=');
      if (eq == std::string::npos || eq == 0) throw InvalidParameter("--witness must look like b=K or t=K");
      const std::string axis = cfg.witness.substr(0, eq);
      const std::string value = cfg.witness.substr(eq + 1);
      std::size_t pos = 0;
      unsigned long index = 0;
      try {
        index = std::stoul(value, &pos);
      } catch (const std::logic_error&) {
        pos = 0;
      }
      if (value.empty() || pos != value.size()) throw InvalidParameter("--witness index must be a non-negative integer");
      if (axis != "b" && axis != "t") throw InvalidParameter("--witness axis must be b or t");
      const auto p = axis == "b" ? node_profile(cfg.m, caps) : leaf_profile(cfg.m, caps);
      if (index > p.last_index()) throw InvalidParameter("--witness index out of range");
      io::write_dot(out, p.witness(static_cast<Node>(index)));
      return kOk;
    }

    throw InvalidParameter("unknown command '" + cmd + "'");
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const MalformedInput& e) {
    err << "malformed input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  }
}

// Parses argv and runs the selected command.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact dichromatic-edge profiles of full binary trees and the width / isoperimetric bounds built on them",
               "dichromat"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  int max_m = 0;
  app.add_option("--max-m", max_m, "Override the DP depth caps (also: DICHROMAT_MAX_M)");

  auto* profile = app.add_subcommand("profile", "Minimal dichromatic edges per black-node or black-leaf count");
  profile->add_option("--kind", cfg.kind, "node or leaf")->capture_default_str();
  profile->add_option("-m", cfg.m, "Tree depth")->required();
  profile->add_option("--format", cfg.format, "csv (default) or json");

  auto* bset = app.add_subcommand("bset", "Black-node counts realizable with exactly d dichromatic edges");
  bset->add_option("-m", cfg.m, "Tree depth")->required();
  bset->add_option("-d", cfg.d, "Dichromatic edge count")->required();
  bset->add_option("--format", cfg.format, "json (default) or csv");

  auto* verify_cmd = app.add_subcommand("verify", "Check one combinatorial bound at depth m");
  verify_cmd->add_option("--which", cfg.which, "lemma22 | thm27 | lipschitz_node | lipschitz_leaf | cor25")
      ->required();
  verify_cmd->add_option("-m", cfg.m, "Tree depth")->required();
  verify_cmd->add_option("--format", cfg.format, "json");

  auto* width = app.add_subcommand("width-bound", "Width lower bound from the leaf profile");
  width->add_option("-m", cfg.m, "Tree depth")->required();
  width->add_option("--params", cfg.params_path, "Key-value params file");
  width->add_option("--format", cfg.format, "json");

  auto* iso = app.add_subcommand("iso-bound", "Isoperimetric-profile lower bound");
  iso->add_option("-m", cfg.m, "Tree depth")->required();
  iso->add_option("--params", cfg.params_path, "Key-value params file");
  iso->add_option("--format", cfg.format, "json");

  auto* sweep = app.add_subcommand("sweepout", "Certify the special slice of a sweepout trace");
  sweep->add_option("--strategy", cfg.strategy, "dfs-fill | bfs-fill | uniform | random-monotone");
  sweep->add_option("-m", cfg.m, "Tree depth")->required();
  sweep->add_option("--params", cfg.params_path, "Key-value params file");
  sweep->add_option("--seed", cfg.seed, "Seed for random-monotone");
  sweep->add_option("--delta", cfg.delta, "Step bound (default alpha / 4)");
  sweep->add_option("--trace", cfg.trace_in, "Certify this step,region,volume CSV instead of generating");
  sweep->add_option("--trace-out", cfg.trace_out, "Also write the trace as CSV");
  sweep->add_option("--format", cfg.format, "json");

  auto* dot = app.add_subcommand("export-dot", "Optimal coloring as Graphviz DOT");
  dot->add_option("-m", cfg.m, "Tree depth")->required();
  dot->add_option("--witness", cfg.witness, "b=K (node profile) or t=K (leaf profile)")->required();
  dot->add_option("--format", cfg.format, "dot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, out, err);
    return kInvalidInput;
  }

  if (app.count("--max-m") > 0) cfg.max_m = max_m;
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "sweepout" && cfg.strategy.empty() && cfg.trace_in.empty()) {
    err << "sweepout needs --strategy or --trace\n";
    return kInvalidInput;
  }
  return run(cfg, out, err);
}

}  // namespace dichromat::cli

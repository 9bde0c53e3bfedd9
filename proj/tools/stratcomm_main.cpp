// Copyright 2026 The stratcomm Authors.
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

// Command-line front end: one subcommand per experiment.
//
//   stratcomm <command> [--config FILE] [--out FILE] [--format csv|json] [--seed N]
//
// Results go to --out (or output.path in the config, or stdout). Failures
// exit nonzero with a one-line JSON error report on stderr.

#include <cstdint>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "stratcomm/config.hpp"
#include "stratcomm/emit.hpp"
#include "stratcomm/experiments.hpp"
#include "stratcomm/scalar_game.hpp"

namespace {

using namespace stratcomm;

struct CommonArgs {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
};

struct Output {
  Table table;
  Metadata extra;
};

void report_error(std::string_view kind, const std::string& message,
                  const std::string& field = {}, std::optional<std::size_t> line = {},
                  std::optional<std::size_t> column = {}) {
  nlohmann::ordered_json e;
  e["kind"] = kind;
  e["message"] = message;
  if (!field.empty()) e["field"] = field;
  if (line) e["line"] = *line;
  if (column) e["column"] = *column;
  std::cerr << nlohmann::ordered_json{{"error", e}}.dump() << "\n";
}

ExperimentConfig load(const CommonArgs& args) {
  ExperimentConfig c = args.config.empty() ? parse_config(R"({"schema_version": 1})")
                                           : load_config(args.config);
  if (args.seed) c.seed = *args.seed;
  if (!args.format.empty()) c.output_format = parse_format(args.format);
  return c;
}

Output run_command(const std::string& name, const ExperimentConfig& c) {
  if (name == "capacity") return {run_capacity(c), {}};
  if (name == "rdcurve") {
    return {to_table(run_rd_comparison(c)),
            {{"normalization", std::string(kRdNormalization)}}};
  }
  if (name == "ose" || name == "rse" || name == "ne") {
    const auto kind = name == "ose"   ? EquilibriumKind::kOse
                      : name == "rse" ? EquilibriumKind::kRse
                                      : EquilibriumKind::kNe;
    return {to_table(run_solver(c, kind)), {}};
  }
  if (name == "table1") {
    const auto rs = run_table1_sweep(c);
    Metadata extra{{"failures", std::to_string(rs.failures.size())}};
    for (const auto& f : rs.failures) std::cerr << "table1: skipped " << f << "\n";
    return {to_table(rs), extra};
  }
  if (name == "audit-theorem2") {
    AuditSummary s;
    if (c.model || c.game) {
      s = run_single_audit(c);
    } else {
      if (!c.seed) {
        throw ConfigError(ConfigError::Kind::kValidation,
                          "seed: required for the random audit (config 'seed' or --seed)",
                          "seed");
      }
      s = run_random_audit(c, *c.seed);
    }
    for (const auto& r : s.rows) {
      if (!r.error.empty()) {
        std::cerr << "audit-theorem2: instance " << r.instance << " failed: " << r.error << "\n";
      }
    }
    return {to_table(s), summary_metadata(s)};
  }
  if (name == "counterexample") {
    return {to_table(scalar::audit_counterexample(c.counterexample_resolution)), {}};
  }
  throw std::logic_error("unknown command " + name);
}

int execute(const std::string& name, const CommonArgs& args) {
  try {
    const auto config = load(args);
    auto out = run_command(name, config);
    const std::string resolved = resolved_json(config).dump();
    Metadata meta{{"tool", std::string(kToolName)},
                  {"version", std::string(kToolVersion)},
                  {"command", name},
                  {"seed", config.seed ? std::to_string(*config.seed) : "none"},
                  {"config_sha256", sha256_hex(resolved)},
                  {"config", resolved}};
    meta.insert(meta.end(), out.extra.begin(), out.extra.end());
    const std::string path = !args.out.empty() ? args.out : config.output_path.value_or("");
    const auto text = render(out.table, meta, config.output_format);
    if (path.empty() || path == "-") {
      std::cout << text;
      std::cout.flush();
    } else {
      write_file(path, text);
    }
    return 0;
  } catch (const ConfigError& e) {
    report_error(std::string("config_") + to_string(e.kind()), e.what(), e.field(), e.line(),
                 e.column());
    return 2;
  } catch (const CapExceededError& e) {
    report_error("cap_exceeded", e.what());
    return 3;
  } catch (const std::exception& e) {
    report_error("runtime", e.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strategic semantic communication experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  const std::pair<const char*, const char*> commands[] = {
      {"capacity", "Channel capacity and rate budget"},
      {"rdcurve", "Rate-distortion curves: semantic matrices vs Hamming"},
      {"ose", "Optimal Stackelberg equilibrium"},
      {"rse", "Robust Stackelberg equilibrium"},
      {"ne", "All Nash equilibria"},
      {"audit-theorem2", "Ordering audit of RSE, OSE and NE values"},
      {"counterexample", "Continuous game where RSE is worse than every NE"},
      {"table1", "Three-word game over an (alpha, beta) sweep"},
  };
  CommonArgs args;
  std::string chosen;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", args.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", args.out, "Output file (default: config output.path or stdout)");
    sub->add_option("--format", args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", args.seed, "Random seed (overrides the config)");
    sub->callback([&chosen, n = std::string(name)] { chosen = n; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return 64;
  }
  return execute(chosen, args);
}

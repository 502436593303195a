// Copyright 2026 The flexjoint Authors
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

#include "flexjoint/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "flexjoint/config.hpp"
#include "flexjoint/parameter_sets.hpp"
#include "flexjoint/report.hpp"

namespace flexjoint {
namespace {

// Writes through a temporary sibling so a failed run never leaves half a file.
bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << content;
    if (!f) {
      err << "error: cannot write " << path << '\n';
      return false;
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    err << "error: cannot write " << path << ": " << ec.message() << '\n';
    return false;
  }
  return true;
}

std::string csv_text(const SimLog& log) {
  std::ostringstream s;
  write_csv(s, log);
  return s.str();
}

// out.csv + "R-FF" -> out.r-ff.csv
std::string variant_path(const std::string& base, const std::string& label) {
  std::filesystem::path p(base);
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + "." + variant_slug(label) + (ext.empty() ? ".csv" : ext);
}

void report_fault(const std::string& label, const SimFault& fault, std::ostream& err) {
  char when[64];
  std::snprintf(when, sizeof when, "%.6f", fault.time);
  err << "fault" << (label.empty() ? "" : " [" + label + "]") << ": joint " << fault.joint + 1 << " at t = " << when
      << " s: " << fault.message << '\n';
}

// Loads a config or reports why not.
std::optional<RunConfig> load(const std::string& path, const std::vector<std::string>& overrides, std::ostream& err) {
  try {
    RunConfig cfg = load_config(path, overrides);
    make_trajectory(cfg.scenario);  // preset / joint-count mismatches are config errors
    return cfg;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << path << ": " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "error: " << path << ": " << e.what() << '\n';
  }
  return std::nullopt;
}

}  // namespace

int cmd_simulate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& csv_override, std::ostream& out, std::ostream& err) {
  const std::optional<RunConfig> cfg = load(config_path, overrides, err);
  if (!cfg) return kExitUsage;
  SimLog log;
  try {
    log = run_scenario(cfg->scenario);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeFault;
  }
  const std::string path = csv_override.empty() ? cfg->csv_path : csv_override;
  const std::string csv = csv_text(log);
  if (path.empty() || path == "-") {
    out << csv;
  } else if (!write_file(path, csv, err)) {
    return kExitRuntimeFault;
  }
  if (log.fault) {
    report_fault("", *log.fault, err);
    return kExitRuntimeFault;
  }
  return kExitOk;
}

int cmd_compare(const std::string& config_path, const std::vector<std::string>& overrides, bool serial,
                std::ostream& out, std::ostream& err) {
  const std::optional<RunConfig> cfg = load(config_path, overrides, err);
  if (!cfg) return kExitUsage;
  if (cfg->variants.size() < 2) {
    err << "error: " << config_path << ": [controller] variants must list at least two controllers\n";
    return kExitUsage;
  }
  ComparisonReport report;
  try {
    report = compare(cfg->scenario, cfg->variants, serial ? Execution::serial : Execution::parallel);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeFault;
  }
  bool ok = true;
  if (!cfg->csv_path.empty()) {
    for (const VariantResult& v : report.variants) ok = write_file(variant_path(cfg->csv_path, v.label), csv_text(v.log), err) && ok;
  }
  std::ostringstream table;
  write_metrics_table(table, cfg->scenario_id, report);
  out << table.str();
  if (!cfg->report_path.empty()) ok = write_file(cfg->report_path, table.str(), err) && ok;
  if (!cfg->json_path.empty()) ok = write_file(cfg->json_path, metrics_json(cfg->scenario_id, report), err) && ok;
  for (const VariantResult& v : report.variants) {
    if (v.log.fault) {
      report_fault(v.label, *v.log.fault, err);
      ok = false;
    }
  }
  return ok ? kExitOk : kExitRuntimeFault;
}

int cmd_validate(const ValidationOptions& options, const std::vector<std::string>& only, std::ostream& out,
                 std::ostream& err) {
  const std::vector<Check>& checks = validation_checks();
  for (const std::string& id : only) {
    if (std::none_of(checks.begin(), checks.end(), [&](const Check& c) { return c.id == id; })) {
      err << "error: unknown check id '" << id << "'\n";
      return kExitUsage;
    }
  }
  int failed = 0;
  int ran = 0;
  for (const Check& c : checks) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    CheckOutcome r;
    const auto start = std::chrono::steady_clock::now();
    try {
      r = c.run(options);
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds);
    failed += !r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << c.id << "  " << c.summary << "  [" << r.detail << "] (" << timing
        << ")\n";
  }
  out << ran - failed << "/" << ran << " checks passed\n";
  return failed == 0 ? kExitOk : kExitValidationFailed;
}

int cmd_params(const std::string& set_name, std::ostream& out, std::ostream& err) {
  ParameterSet set;
  try {
    set = parameter_set(set_name);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "; known sets:";
    for (std::string_view name : parameter_set_names()) err << ' ' << name;
    err << '\n';
    return kExitUsage;
  }
  write_parameter_set(out, set);
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Elastic-joint robot simulation with flatness-based feedforward control", "flexjoint");
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> overrides;
  std::string csv;
  bool serial = false;
  ValidationOptions validation;
  std::vector<std::string> only;
  bool list_checks = false;
  std::string set_name;

  CLI::App* simulate = app.add_subcommand("simulate", "Run one scenario and write its CSV log");
  simulate->add_option("config", config, "Scenario file")->required();
  simulate->add_option("--override,-o", overrides, "section.key=value, applied after the file");
  simulate->add_option("--csv", csv, "CSV output path ('-' for stdout); overrides [output] csv_path");

  CLI::App* comparison = app.add_subcommand("compare", "Run every [controller] variant and tabulate metrics");
  comparison->add_option("config", config, "Scenario file")->required();
  comparison->add_option("--override,-o", overrides, "section.key=value, applied after the file");
  comparison->add_flag("--serial", serial, "Run variants one after another");

  CLI::App* validate = app.add_subcommand("validate", "Run the invariant checks");
  validate->add_option("--only", only, "Check ids to run");
  validate->add_flag("--list", list_checks, "List check ids and exit");
  validate->add_option("--plant-c-tr-scale", validation.plant_rigidity_scale,
                       "Scale the plant c_TR in the flatness-consistency check")
      ->check(CLI::PositiveNumber);

  CLI::App* params = app.add_subcommand("params", "Print a built-in parameter set");
  params->add_option("set", set_name, "kr300-joint1, kr300-all or legacy-v1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*simulate) return cmd_simulate(config, overrides, csv, out, err);
  if (*comparison) return cmd_compare(config, overrides, serial, out, err);
  if (*validate) {
    if (list_checks) {
      for (const Check& c : validation_checks()) out << c.id << "  " << c.summary << '\n';
      return kExitOk;
    }
    return cmd_validate(validation, only, out, err);
  }
  return cmd_params(set_name, out, err);
}

}  // namespace flexjoint

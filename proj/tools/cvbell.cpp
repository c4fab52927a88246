// Copyright 2026 The cvbell Authors
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

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cvbell/errors.hpp"
#include "cvbell/sweep.hpp"

namespace {

constexpr int kExitInvalidSpec = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

std::map<std::string, std::string> split_pairs(
    const std::vector<std::string>& items) {
  std::map<std::string, std::string> kv;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::invalid_argument("expected key=value, got: " + item);
    }
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

int run_sweep_command(const std::string& preset_name,
                      const std::string& config_path,
                      const std::vector<std::string>& overrides,
                      const std::string& format, const std::string& out_path,
                      int jobs, bool strict) {
  if (preset_name.empty() == config_path.empty()) {
    std::cerr << "cvbell: exactly one of --preset or --config is required\n";
    return kExitInvalidSpec;
  }

  std::vector<cvbell::SweepSpec> specs;
  try {
    const auto extra = split_pairs(overrides);
    if (!preset_name.empty()) {
      specs = cvbell::preset(preset_name);
      for (auto& spec : specs) {
        auto kv = cvbell::spec_to_kv(spec);
        for (const auto& [k, v] : extra) kv[k] = v;
        const std::string name = spec.sweep_name;
        spec = cvbell::spec_from_kv(kv);
        if (extra.find("sweep") == extra.end()) spec.sweep_name = name;
      }
    } else {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "cvbell: cannot read " << config_path << '\n';
        return kExitIo;
      }
      auto kv = cvbell::parse_config(in);
      for (const auto& [k, v] : extra) kv[k] = v;
      specs.push_back(cvbell::spec_from_kv(kv));
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "cvbell: invalid spec: " << e.what() << '\n';
    return kExitInvalidSpec;
  }

  std::vector<cvbell::SweepRow> rows;
  for (const auto& spec : specs) {
    auto part = cvbell::run_sweep(spec, jobs);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  for (const auto& row : rows) {
    if (!row.ok) {
      std::cerr << "cvbell: " << row.sweep_name << "=" << row.value << ": "
                << row.error << '\n';
      if (strict) return kExitNumerical;
    }
  }

  std::ostringstream buf;
  if (format == "json") {
    std::map<std::string, std::string> meta;
    if (!preset_name.empty()) {
      meta["preset"] = preset_name;
    } else {
      meta = cvbell::spec_to_kv(specs.front());
    }
    cvbell::emit_json(rows, meta, buf);
  } else {
    cvbell::emit_csv(rows, buf);
  }

  if (out_path.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cvbell: cannot write " << out_path << '\n';
      return kExitIo;
    }
    out << buf.str();
    if (!out) {
      std::cerr << "cvbell: write failed: " << out_path << '\n';
      return kExitIo;
    }
  }
  return 0;
}

int run_optimize_command(const std::string& family,
                         const std::vector<std::string>& params) {
  cvbell::SweepSpec spec;
  double value = 0.0;
  bool have_value = false;
  try {
    auto kv = split_pairs(params);
    if (const auto it = kv.find("value"); it != kv.end()) {
      value = std::stod(it->second);
      have_value = true;
      kv.erase(it);
    }
    kv["family"] = family;
    spec = cvbell::spec_from_kv(kv);
  } catch (const std::exception& e) {
    std::cerr << "cvbell: invalid spec: " << e.what() << '\n';
    return kExitInvalidSpec;
  }
  if (!have_value) value = spec.start;

  try {
    std::string backend;
    double tail = 0.0;
    const auto kernel = cvbell::make_kernel(spec, value, &backend, &tail);
    const auto best = cvbell::optimize_angles(kernel, spec.grid_density);
    nlohmann::json doc;
    doc["family"] = family;
    doc["value"] = value;
    doc["backend"] = backend;
    doc["tail"] = tail;
    doc["angles"] = {{"theta1", best.angles.theta1},
                     {"theta2", best.angles.theta2},
                     {"theta1p", best.angles.theta1p},
                     {"theta2p", best.angles.theta2p}};
    doc["report"] = {{"p_t1t2", best.report.p_t1t2},
                     {"p_t1t2p", best.report.p_t1t2p},
                     {"p_t1pt2", best.report.p_t1pt2},
                     {"p_t1pt2p", best.report.p_t1pt2p},
                     {"p_t1p_x", best.report.p_t1p_x},
                     {"p_x_t2", best.report.p_x_t2},
                     {"p_xx", best.report.p_xx},
                     {"f", best.report.f},
                     {"lower_margin", best.report.lower_margin},
                     {"upper_margin", best.report.upper_margin},
                     {"violated", best.report.violated}};
    std::cout << doc.dump(2) << '\n';
  } catch (const cvbell::NumericalError& e) {
    std::cerr << "cvbell: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cvbell: invalid spec: " << e.what() << '\n';
    return kExitInvalidSpec;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-type inequality sweeps for four-mode optical states"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter sweep");
  std::string preset_name, config_path, format = "csv", out_path;
  std::vector<std::string> overrides;
  int jobs = 1;
  bool strict = false;
  sweep->add_option("--preset", preset_name, "Named preset")
      ->check(CLI::IsMember(cvbell::preset_names()));
  sweep->add_option("--config", config_path, "key=value config file");
  sweep->add_option("--set", overrides, "Override spec keys (key=value)");
  sweep->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", out_path, "Output path (default: stdout)");
  sweep->add_option("--jobs", jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--strict", strict, "Exit 4 on any numerical failure");

  auto* optimize =
      app.add_subcommand("optimize", "Maximize the functional over angles");
  std::string family;
  std::vector<std::string> params;
  optimize->add_option("--family", family, "State family")->required();
  optimize->add_option("--param", params, "Family parameters (key=value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidSpec;
  }

  if (sweep->parsed()) {
    return run_sweep_command(preset_name, config_path, overrides, format,
                             out_path, jobs, strict);
  }
  return run_optimize_command(family, params);
}

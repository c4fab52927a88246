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

#ifndef CVBELL_SWEEP_HPP
#define CVBELL_SWEEP_HPP

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "cvbell/bell.hpp"

namespace cvbell {

enum class Family {
  pure_gaussian,
  squeezed_thermal,
  leakage,
  pcs,
  ecs,
  two_photon,
};

enum class BackendChoice { gaussian, fock, automatic };

std::string to_string(Family f);
std::string to_string(BackendChoice b);
Family family_from_string(const std::string& s);
BackendChoice backend_from_string(const std::string& s);

/// One parameter sweep producing one curve.
struct SweepSpec {
  Family family = Family::pure_gaussian;
  std::string sweep_name = "u";
  double start = 0.0;
  double stop = 1.2;
  double step = 0.01;

  BellAngles angles{1.32, 0.93, 3.66, 3.32};
  bool optimize = false;
  int grid_density = 12;

  double kappa = 1.0;          // squeezed_thermal
  double transmittance = 1.0;  // leakage
  std::string v_rule = "v=-u";  // pure_gaussian: "v=-u" or "v=0"
  int q = 0;                   // pcs
  int cutoff = 20;             // Fock families
  std::string psi = "psi2";    // two_photon: "psi1" or "psi2"

  BackendChoice backend = BackendChoice::automatic;
};

struct SweepRow {
  std::string sweep_name;
  double value = 0.0;
  BellReport report;
  std::string backend;
  double tail = 0.0;
  bool ok = true;
  std::string error;
};

/// Parse a flat key=value config ('#' comments, blank lines ignored).
std::map<std::string, std::string> parse_config(std::istream& in);

/// Build a spec from key=value pairs; unknown keys are rejected.
SweepSpec spec_from_kv(const std::map<std::string, std::string>& kv);

/// Named figure presets; each preset is a list of curves.
std::vector<std::string> preset_names();
std::vector<SweepSpec> preset(const std::string& name);

/// Evaluate a spec, one row per sweep value, in deterministic order.
/// jobs > 1 parallelizes row evaluation; output order is unaffected.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs = 1);

/// Construct the backend kernel for one sweep point; exposed for the
/// `optimize` command.
RateKernel make_kernel(const SweepSpec& spec, double value,
                       std::string* backend_name = nullptr,
                       double* tail = nullptr);

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// JSON output: a metadata header (spec echo, version, timestamp) plus the
/// row array.
void emit_json(const std::vector<SweepRow>& rows,
               const std::map<std::string, std::string>& meta,
               std::ostream& out);

/// Key=value echo of a spec, used for JSON metadata.
std::map<std::string, std::string> spec_to_kv(const SweepSpec& spec);

}  // namespace cvbell

#endif  // CVBELL_SWEEP_HPP

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

#include "cvbell/sweep.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <stdexcept>
#include <thread>

#include "cvbell/errors.hpp"

namespace cvbell {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("bad boolean: " + s);
}

int point_count(const SweepSpec& spec) {
  if (!(spec.step > 0.0)) throw std::invalid_argument("step must be positive");
  if (spec.stop < spec.start) {
    throw std::invalid_argument("sweep range is empty");
  }
  return static_cast<int>(std::floor((spec.stop - spec.start) / spec.step +
                                     1e-9)) +
         1;
}

void validate(const SweepSpec& spec) {
  point_count(spec);
  if (spec.kappa <= 0.0 || spec.kappa > 1.0) {
    throw std::invalid_argument("kappa must lie in (0, 1]");
  }
  if (spec.transmittance < 0.0 || spec.transmittance > 1.0) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
  if (spec.v_rule != "v=-u" && spec.v_rule != "v=0") {
    throw std::invalid_argument("v_rule must be 'v=-u' or 'v=0'");
  }
  if (spec.q < 0) throw std::invalid_argument("q must be nonnegative");
  if (spec.cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");
  if (spec.psi != "psi1" && spec.psi != "psi2") {
    throw std::invalid_argument("psi must be 'psi1' or 'psi2'");
  }
  if (spec.grid_density < 4) {
    throw std::invalid_argument("grid_density must be >= 4");
  }
  const bool gaussian_family = spec.family == Family::pure_gaussian ||
                               spec.family == Family::squeezed_thermal ||
                               spec.family == Family::leakage;
  if (spec.backend == BackendChoice::gaussian && !gaussian_family) {
    throw std::invalid_argument(
        "gaussian backend is only valid for Gaussian families");
  }
  if (spec.backend == BackendChoice::fock &&
      (spec.family == Family::squeezed_thermal ||
       spec.family == Family::leakage)) {
    throw std::invalid_argument(
        "fock backend does not support mixed Gaussian families");
  }
}

FockState two_photon_state(const std::string& which, int cutoff) {
  const std::array<int, 4> cuts = {cutoff, cutoff, cutoff, cutoff};
  FockState s(cuts);
  if (which == "psi1") {
    s.at(1, 0, 1, 0) = 0.5;
    s.at(1, 0, 0, 1) = -0.5;
    s.at(0, 1, 1, 0) = -0.5;
    s.at(0, 1, 0, 1) = 0.5;
  } else {
    s.at(1, 1, 0, 0) = 0.5;
    s.at(1, 0, 0, 1) = -0.5;
    s.at(0, 1, 1, 0) = -0.5;
    s.at(0, 0, 1, 1) = 0.5;
  }
  return s;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::pure_gaussian: return "pure_gaussian";
    case Family::squeezed_thermal: return "squeezed_thermal";
    case Family::leakage: return "leakage";
    case Family::pcs: return "pcs";
    case Family::ecs: return "ecs";
    case Family::two_photon: return "two_photon";
  }
  return "?";
}

std::string to_string(BackendChoice b) {
  switch (b) {
    case BackendChoice::gaussian: return "gaussian";
    case BackendChoice::fock: return "fock";
    case BackendChoice::automatic: return "auto";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "pure_gaussian") return Family::pure_gaussian;
  if (s == "squeezed_thermal") return Family::squeezed_thermal;
  if (s == "leakage") return Family::leakage;
  if (s == "pcs") return Family::pcs;
  if (s == "ecs") return Family::ecs;
  if (s == "two_photon") return Family::two_photon;
  throw std::invalid_argument("unknown family: " + s);
}

BackendChoice backend_from_string(const std::string& s) {
  if (s == "gaussian") return BackendChoice::gaussian;
  if (s == "fock") return BackendChoice::fock;
  if (s == "auto") return BackendChoice::automatic;
  throw std::invalid_argument("unknown backend: " + s);
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line has no '=': " + line);
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

SweepSpec spec_from_kv(const std::map<std::string, std::string>& kv) {
  SweepSpec spec;
  double t1 = spec.angles.theta1, t2 = spec.angles.theta2;
  double t1p = spec.angles.theta1p, t2p = spec.angles.theta2p;
  for (const auto& [key, value] : kv) {
    if (key == "family") spec.family = family_from_string(value);
    else if (key == "sweep") spec.sweep_name = value;
    else if (key == "start") spec.start = parse_double(value);
    else if (key == "stop") spec.stop = parse_double(value);
    else if (key == "step") spec.step = parse_double(value);
    else if (key == "theta1") t1 = parse_double(value);
    else if (key == "theta2") t2 = parse_double(value);
    else if (key == "theta1p") t1p = parse_double(value);
    else if (key == "theta2p") t2p = parse_double(value);
    else if (key == "optimize") spec.optimize = parse_bool(value);
    else if (key == "grid_density") spec.grid_density = parse_int(value);
    else if (key == "kappa") spec.kappa = parse_double(value);
    else if (key == "transmittance") spec.transmittance = parse_double(value);
    else if (key == "v_rule") spec.v_rule = value;
    else if (key == "q") spec.q = parse_int(value);
    else if (key == "cutoff") spec.cutoff = parse_int(value);
    else if (key == "psi") spec.psi = value;
    else if (key == "backend") spec.backend = backend_from_string(value);
    else throw std::invalid_argument("unknown spec key: " + key);
  }
  spec.angles = BellAngles(t1, t2, t1p, t2p);
  validate(spec);
  return spec;
}

std::map<std::string, std::string> spec_to_kv(const SweepSpec& spec) {
  std::map<std::string, std::string> kv;
  kv["family"] = to_string(spec.family);
  kv["sweep"] = spec.sweep_name;
  kv["start"] = format_double(spec.start);
  kv["stop"] = format_double(spec.stop);
  kv["step"] = format_double(spec.step);
  kv["theta1"] = format_double(spec.angles.theta1);
  kv["theta2"] = format_double(spec.angles.theta2);
  kv["theta1p"] = format_double(spec.angles.theta1p);
  kv["theta2p"] = format_double(spec.angles.theta2p);
  kv["optimize"] = spec.optimize ? "true" : "false";
  kv["grid_density"] = std::to_string(spec.grid_density);
  kv["kappa"] = format_double(spec.kappa);
  kv["transmittance"] = format_double(spec.transmittance);
  kv["v_rule"] = spec.v_rule;
  kv["q"] = std::to_string(spec.q);
  kv["cutoff"] = std::to_string(spec.cutoff);
  kv["psi"] = spec.psi;
  kv["backend"] = to_string(spec.backend);
  return kv;
}

std::vector<std::string> preset_names() {
  return {"fig-pure", "fig-thermal", "fig-leakage",
          "fig-pcs",  "fig-ecs",     "two-photon"};
}

std::vector<SweepSpec> preset(const std::string& name) {
  // Sweep ranges are reconstructions; the figure captions fix the angles
  // but not the axis extents.
  std::vector<SweepSpec> specs;
  if (name == "fig-pure") {
    SweepSpec s;
    s.family = Family::pure_gaussian;
    s.sweep_name = "u[v=-u]";
    s.v_rule = "v=-u";
    specs.push_back(s);
    s.sweep_name = "u[v=0]";
    s.v_rule = "v=0";
    specs.push_back(s);
  } else if (name == "fig-thermal") {
    for (double kappa : {1.0, 0.8, 0.7}) {
      SweepSpec s;
      s.family = Family::squeezed_thermal;
      s.kappa = kappa;
      s.sweep_name = "u[kappa=" + format_double(kappa) + "]";
      specs.push_back(s);
    }
  } else if (name == "fig-leakage") {
    for (double t : {1.0, 0.8, 0.6}) {
      SweepSpec s;
      s.family = Family::leakage;
      s.transmittance = t;
      s.sweep_name = "u[T=" + format_double(t) + "]";
      specs.push_back(s);
    }
  } else if (name == "fig-pcs") {
    SweepSpec s;
    s.family = Family::pcs;
    s.sweep_name = "re_zeta";
    s.start = 0.2;
    s.stop = 2.0;
    s.step = 0.2;
    s.q = 0;
    s.cutoff = 10;
    s.optimize = true;
    s.grid_density = 8;
    specs.push_back(s);
  } else if (name == "fig-ecs") {
    SweepSpec s;
    s.family = Family::ecs;
    s.sweep_name = "re_alpha";
    s.start = 0.05;
    s.stop = 2.0;
    s.step = 0.05;
    s.cutoff = 24;
    s.angles = BellAngles(2.67, 5.59, 1.88, 3.24);
    specs.push_back(s);
  } else if (name == "two-photon") {
    for (const char* which : {"psi1", "psi2"}) {
      SweepSpec s;
      s.family = Family::two_photon;
      s.psi = which;
      s.sweep_name = std::string("theta1[") + which + "]";
      s.start = 0.0;
      s.stop = 6.2;
      s.step = 0.1;
      s.cutoff = 3;
      s.angles = BellAngles(0.0, M_PI / 4, M_PI / 2, 3 * M_PI / 4);
      specs.push_back(s);
    }
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return specs;
}

RateKernel make_kernel(const SweepSpec& spec, double value,
                       std::string* backend_name, double* tail) {
  auto set = [&](const std::string& name, double t) {
    if (backend_name) *backend_name = name;
    if (tail) *tail = t;
  };
  const bool want_fock = spec.backend == BackendChoice::fock;
  switch (spec.family) {
    case Family::pure_gaussian: {
      const double u = value;
      const double v = spec.v_rule == "v=-u" ? -u : 0.0;
      if (want_fock) {
        FockState s = basis_state({0, 0, 0, 0}, {spec.cutoff, spec.cutoff,
                                                 spec.cutoff, spec.cutoff});
        s = apply_squeeze(s, 1, u);
        s = apply_squeeze(s, 2, u);
        s = apply_squeeze(s, 3, v);
        s = apply_squeeze(s, 4, v);
        s = apply_passive(s, max_entangling_unitary());
        set("fock", s.tail());
        return fock_kernel(s);
      }
      set("gaussian", 0.0);
      return gaussian_kernel(four_mode_squeezed(u, v, 1.0));
    }
    case Family::squeezed_thermal:
      set("gaussian", 0.0);
      return gaussian_kernel(four_mode_squeezed(value, -value, spec.kappa));
    case Family::leakage:
      set("gaussian", 0.0);
      return gaussian_kernel(
          attenuate(four_mode_squeezed(value, -value, 1.0),
                    spec.transmittance));
    case Family::pcs: {
      FockState s = pcs_pair({Complex(value, 0.0), spec.q}, spec.cutoff);
      set("fock", s.tail());
      return fock_kernel(s);
    }
    case Family::ecs: {
      // Closed-form single-polarizer terms plus Fock joint terms.
      FockState probe = ecs_pair({Complex(value, 0.0)}, spec.cutoff);
      set("fock", probe.tail());
      return ecs_kernel(value, spec.cutoff);
    }
    case Family::two_photon: {
      FockState s = two_photon_state(spec.psi, spec.cutoff);
      set("fock", s.tail());
      return fock_kernel(s);
    }
  }
  throw std::invalid_argument("unhandled family");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs) {
  validate(spec);
  if (jobs < 1) jobs = 1;
  const int n = point_count(spec);
  std::vector<SweepRow> rows(n);

  auto eval_row = [&spec](int idx) {
    SweepRow row;
    row.sweep_name = spec.sweep_name;
    row.value = spec.start + idx * spec.step;
    try {
      double tail = 0.0;
      std::string backend;
      const RateKernel kernel = make_kernel(spec, row.value, &backend, &tail);
      row.backend = backend;
      row.tail = tail;
      if (spec.family == Family::two_photon) {
        // The sweep variable is the first polarizer angle.
        BellAngles a(row.value, spec.angles.theta2, spec.angles.theta1p,
                     spec.angles.theta2p);
        row.report = spec.optimize
                         ? optimize_angles(kernel, spec.grid_density).report
                         : bell_functional(kernel, a);
      } else if (spec.optimize) {
        row.report = optimize_angles(kernel, spec.grid_density).report;
      } else {
        row.report = bell_functional(kernel, spec.angles);
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    return row;
  };

  if (jobs == 1) {
    for (int i = 0; i < n; ++i) rows[i] = eval_row(i);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        rows[i] = eval_row(i);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "sweep_name,sweep_value,p_t1t2,p_t1t2p,p_t1pt2,p_t1pt2p,p_t1p_x,"
         "p_x_t2,p_xx,f,lower_margin,violated,backend,tail\n";
  for (const auto& row : rows) {
    const auto& r = row.report;
    out << row.sweep_name << ',' << format_double(row.value) << ','
        << format_double(r.p_t1t2) << ',' << format_double(r.p_t1t2p) << ','
        << format_double(r.p_t1pt2) << ',' << format_double(r.p_t1pt2p) << ','
        << format_double(r.p_t1p_x) << ',' << format_double(r.p_x_t2) << ','
        << format_double(r.p_xx) << ',' << format_double(r.f) << ','
        << format_double(r.lower_margin) << ',' << (r.violated ? 1 : 0) << ','
        << row.backend << ',' << format_double(row.tail) << '\n';
  }
}

void emit_json(const std::vector<SweepRow>& rows,
               const std::map<std::string, std::string>& meta,
               std::ostream& out) {
  nlohmann::json doc;
  doc["version"] = kVersion;
  const auto now = std::chrono::system_clock::now();
  doc["timestamp_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
          .count();
  doc["spec"] = meta;
  auto& arr = doc["rows"] = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j;
    j["sweep_name"] = row.sweep_name;
    j["sweep_value"] = row.value;
    j["p_t1t2"] = row.report.p_t1t2;
    j["p_t1t2p"] = row.report.p_t1t2p;
    j["p_t1pt2"] = row.report.p_t1pt2;
    j["p_t1pt2p"] = row.report.p_t1pt2p;
    j["p_t1p_x"] = row.report.p_t1p_x;
    j["p_x_t2"] = row.report.p_x_t2;
    j["p_xx"] = row.report.p_xx;
    j["f"] = row.report.f;
    j["lower_margin"] = row.report.lower_margin;
    j["upper_margin"] = row.report.upper_margin;
    j["violated"] = row.report.violated;
    j["backend"] = row.backend;
    j["tail"] = row.tail;
    if (!row.ok) j["error"] = row.error;
    arr.push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace cvbell

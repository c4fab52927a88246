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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "cvbell/sweep.hpp"

namespace py = pybind11;
using namespace cvbell;

namespace {

std::map<std::string, std::string> kwargs_to_kv(const py::kwargs& kwargs) {
  std::map<std::string, std::string> kv;
  for (const auto& item : kwargs) {
    kv[py::str(item.first)] = py::str(item.second);
  }
  return kv;
}

py::dict report_to_dict(const BellReport& r) {
  py::dict d;
  d["p_t1t2"] = r.p_t1t2;
  d["p_t1t2p"] = r.p_t1t2p;
  d["p_t1pt2"] = r.p_t1pt2;
  d["p_t1pt2p"] = r.p_t1pt2p;
  d["p_t1p_x"] = r.p_t1p_x;
  d["p_x_t2"] = r.p_x_t2;
  d["p_xx"] = r.p_xx;
  d["f"] = r.f;
  d["lower_margin"] = r.lower_margin;
  d["upper_margin"] = r.upper_margin;
  d["violated"] = r.violated;
  return d;
}

py::dict angles_to_dict(const BellAngles& a) {
  py::dict d;
  d["theta1"] = a.theta1;
  d["theta2"] = a.theta2;
  d["theta1p"] = a.theta1p;
  d["theta2p"] = a.theta2p;
  return d;
}

SweepSpec spec_from_kwargs(const py::kwargs& kwargs) {
  return spec_from_kv(kwargs_to_kv(kwargs));
}

}  // namespace

PYBIND11_MODULE(_cvbell, m) {
  m.doc() =
      "Bell-type inequality evaluation for four-mode optical states: "
      "Gaussian covariance and truncated Fock backends.";

  m.def(
      "four_mode_squeezed_cov",
      [](double u, double v, double kappa) {
        return four_mode_squeezed(u, v, kappa).covariance();
      },
      py::arg("u"), py::arg("v"), py::arg("kappa") = 1.0,
      "8x8 covariance of the squeezed (thermal) four-mode state, "
      "(q1..q4, p1..p4) ordering.");

  m.def(
      "vacuum_overlap",
      [](const Mat8& cov, const std::vector<int>& modes, double theta1,
         double theta2) {
        ModeMask mask = 0;
        for (int mode : modes) {
          if (mode < 1 || mode > 4) {
            throw std::invalid_argument("modes are 1-based indices 1..4");
          }
          mask |= 1u << (mode - 1);
        }
        return vacuum_overlap(GaussianState(cov), mask, theta1, theta2);
      },
      py::arg("cov"), py::arg("modes"), py::arg("theta1") = 0.0,
      py::arg("theta2") = 0.0,
      "Probability that every listed mode is vacuum after the polarizer "
      "rotation.");

  m.def("ecs_vacuum_prob_closed", &ecs_vacuum_prob_closed, py::arg("d"),
        py::arg("theta"),
        "Closed-form single-polarizer vacuum probability of the entangled "
        "coherent state; d = sqrt(2) * Re(alpha).");

  m.def(
      "bell_report",
      [](const std::string& family, double value, py::object angles,
         const py::kwargs& kwargs) {
        auto kv = kwargs_to_kv(kwargs);
        kv["family"] = family;
        SweepSpec spec = spec_from_kv(kv);
        if (!angles.is_none()) {
          const auto t = angles.cast<std::array<double, 4>>();
          spec.angles = BellAngles(t[0], t[1], t[2], t[3]);
        }
        const RateKernel kernel = make_kernel(spec, value);
        return report_to_dict(bell_functional(kernel, spec.angles));
      },
      py::arg("family"), py::arg("value"), py::arg("angles") = py::none(),
      "Six coincidence rates, functional value and margins for one state. "
      "Extra keyword arguments set family parameters (kappa, q, cutoff, "
      "...).");

  m.def(
      "optimize",
      [](const std::string& family, double value, int grid_density,
         const py::kwargs& kwargs) {
        auto kv = kwargs_to_kv(kwargs);
        kv["family"] = family;
        const SweepSpec spec = spec_from_kv(kv);
        const RateKernel kernel = make_kernel(spec, value);
        const OptimizeResult best = optimize_angles(kernel, grid_density);
        py::dict d;
        d["angles"] = angles_to_dict(best.angles);
        d["report"] = report_to_dict(best.report);
        return d;
      },
      py::arg("family"), py::arg("value"), py::arg("grid_density") = 12,
      "Maximize the functional over the four polarizer angles.");

  m.def(
      "sweep",
      [](int jobs, const py::kwargs& kwargs) {
        const SweepSpec spec = spec_from_kwargs(kwargs);
        py::list out;
        for (const SweepRow& row : run_sweep(spec, jobs)) {
          py::dict d = report_to_dict(row.report);
          d["sweep_name"] = row.sweep_name;
          d["sweep_value"] = row.value;
          d["backend"] = row.backend;
          d["tail"] = row.tail;
          d["ok"] = row.ok;
          if (!row.ok) d["error"] = row.error;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("jobs") = 1,
      "Run a parameter sweep; keyword arguments mirror the CLI config "
      "keys.");

  m.def("preset_names", &preset_names, "Names of the built-in presets.");
}

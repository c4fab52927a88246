# Copyright 2026 The cvbell Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import cvbell


def test_vacuum_covariance_and_overlap():
    cov = cvbell.four_mode_squeezed_cov(0.0, 0.0, kappa=1.0)
    assert cov.shape == (8, 8)
    assert cov[0][0] == pytest.approx(0.5)
    assert cvbell.vacuum_overlap(cov, [1], 0.4, 0.0) == pytest.approx(1.0)


def test_thermal_overlap_closed_value():
    kappa = 0.5
    cov = cvbell.four_mode_squeezed_cov(0.0, 0.0, kappa=kappa)
    expected = 2 * kappa / (kappa + 1)
    assert cvbell.vacuum_overlap(cov, [1]) == pytest.approx(expected)
    assert cvbell.vacuum_overlap(cov, [1, 3]) == pytest.approx(expected**2)


def test_bell_report_pure_state_violates():
    report = cvbell.bell_report(
        "pure_gaussian", 0.4, angles=(1.32, 0.93, 3.66, 3.32)
    )
    assert report["violated"]
    assert report["f"] > 0
    assert report["f"] == pytest.approx(
        report["p_t1t2"]
        - report["p_t1t2p"]
        + report["p_t1pt2"]
        + report["p_t1pt2p"]
        - report["p_t1p_x"]
        - report["p_x_t2"]
    )


def test_optimize_two_photon_quantum_maximum():
    best = cvbell.optimize("two_photon", 0.0, grid_density=10, psi="psi2",
                           cutoff=3)
    assert best["report"]["f"] == pytest.approx(
        (2 * math.sqrt(2) - 2) / 8, abs=1e-6
    )


def test_sweep_rows_and_backends():
    rows = cvbell.sweep(family="pure_gaussian", start=0.0, stop=0.2,
                        step=0.1)
    assert len(rows) == 3
    assert rows[0]["backend"] == "gaussian"
    assert rows[0]["f"] == pytest.approx(0.0)
    assert rows[2]["sweep_value"] == pytest.approx(0.2)


def test_ecs_closed_form_limit():
    for theta in (0.0, 0.7, 2.67):
        limit = (9 - math.cos(4 * theta)) / 16
        assert cvbell.ecs_vacuum_prob_closed(1e-7, theta) == pytest.approx(
            limit, abs=1e-10
        )


def test_invalid_spec_raises():
    with pytest.raises(ValueError):
        cvbell.sweep(family="no_such_family")


def test_presets_listed():
    names = cvbell.preset_names()
    assert "fig-pure" in names and "two-photon" in names

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

"""Bell-type inequality evaluation for four-mode optical states."""

from ._cvbell import (
    bell_report,
    ecs_vacuum_prob_closed,
    four_mode_squeezed_cov,
    optimize,
    preset_names,
    sweep,
    vacuum_overlap,
)

__all__ = [
    "bell_report",
    "ecs_vacuum_prob_closed",
    "four_mode_squeezed_cov",
    "optimize",
    "preset_names",
    "sweep",
    "vacuum_overlap",
]

__version__ = "0.1.0"

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

import os

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup

ParallelCompile("CVBELL_NUM_BUILD_JOBS", default=os.cpu_count() or 1).install()

EIGEN_INCLUDE = os.environ.get("EIGEN3_INCLUDE_DIR", "/usr/include/eigen3")

ext = Pybind11Extension(
    "cvbell._cvbell",
    sources=[
        "python/bindings.cpp",
        "src/symplectic.cpp",
        "src/gaussian.cpp",
        "src/fock.cpp",
        "src/bell.cpp",
        "src/sweep.cpp",
    ],
    include_dirs=["include", "vendor", EIGEN_INCLUDE],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})

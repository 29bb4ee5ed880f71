# Copyright 2026 The pqc-forge Authors.
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

"""Greedy Clifford+T replacement of rotations in parametrized circuits."""

from ._core import (
    Circuit,
    DataError,
    Dataset,
    Model,
    ParseError,
    StructuralError,
    __version__,
    accuracy,
    approx_gate,
    build_ansatz,
    build_model,
    exhaustive_oracle,
    expect_z,
    optimize,
    retrain,
    simulate,
    sweep,
    train,
)

__all__ = [
    "Circuit",
    "DataError",
    "Dataset",
    "Model",
    "ParseError",
    "StructuralError",
    "__version__",
    "accuracy",
    "approx_gate",
    "build_ansatz",
    "build_model",
    "exhaustive_oracle",
    "expect_z",
    "optimize",
    "retrain",
    "simulate",
    "sweep",
    "train",
]

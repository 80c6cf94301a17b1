# Copyright 2026 The blindeep Authors.
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

"""Blind extraction of external equitable partitions from low-pass graph signals."""

from blindeep._blindeep import (
    EvalReport,
    ExtractionResult,
    Graph,
    GraphFilter,
    InvalidArgument,
    NumericFailure,
    ParseError,
    Partition,
    PlantedInstance,
    QuotientGraph,
    be_eeps,
    cost_fc,
    filter_matrix,
    generate,
    group_accuracy,
    is_eep,
    low_pass_ratio,
    matched_accuracy,
    quotient,
    sample,
    verify,
)

__version__ = "0.1.0"

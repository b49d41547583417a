# Copyright 2026 The hybridbell Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Heralded microwave-optical Bell pairs: simulation and resource estimates."""

from ._core import (
    ConfigError,
    CountingScenario,
    Graph,
    HardwareParams,
    TransducerParams,
    blocks_needed,
    check_thresholds,
    compute_budget,
    dispersive_shift,
    extract_optical,
    ghz_cost,
    herald_probability,
    mean_phonon_ode,
    multiphoton_noise,
    pair_distribution,
    ring_cost_linear_optics,
    run,
    scattering_rate,
    scenario_names,
    simulate,
    squeeze_gains,
    verify_cz_decomposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]

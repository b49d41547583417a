// Copyright 2026 The hybridbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYBRIDBELL_RESOURCE_COUNT_H
#define HYBRIDBELL_RESOURCE_COUNT_H

#include <iosfwd>
#include <vector>

namespace hybridbell {

/// Expected-cost inputs for building a ring from GHZ states with linear optics versus heralded
/// Bell-pair blocks. Defaults are the 6-ring comparison.
struct CountingScenario {
    int ghz_photons = 6;
    double ghz_success = 1.0 / 32;
    int n_ghz_per_ring = 3;
    int n_fusions = 3;
    double fusion_success = 0.5;
    int ring_size = 6;
    double p_block = 0.2;
    double margin = 2;

    /// Throws std::invalid_argument for probabilities outside (0, 1] or counts below 1
    /// (n_fusions may be 0).
    void validate() const;
};

double ghz_cost(const CountingScenario &s);

/// n_ghz_per_ring * ghz_cost / fusion_success^n_fusions. Failed fusions discard both inputs.
double ring_cost_linear_optics(const CountingScenario &s);

/// ceil(margin * ring_size / p_block).
long blocks_needed(int ring_size, double p_block, double margin = 2);

struct ScalingRow {
    int ring_size;
    long blocks_needed;
    double linear_optics_photons;
};

/// Ring sizes scale the GHZ count and fusion count of `s` proportionally (rounded up).
std::vector<ScalingRow> scaling_curves(const std::vector<int> &sizes, const CountingScenario &s);

/// Columns ring_size, blocks_needed, linear_optics_photons.
void write_scaling_csv(const std::vector<ScalingRow> &rows, std::ostream &out);

}  // namespace hybridbell

#endif

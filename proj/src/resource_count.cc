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

#include "hybridbell/resource_count.h"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hybridbell {

namespace {

void check_probability(double p, const char *name) {
    if (!(p > 0 && p <= 1)) {
        throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
    }
}

}  // namespace

void CountingScenario::validate() const {
    check_probability(ghz_success, "ghz_success");
    check_probability(fusion_success, "fusion_success");
    check_probability(p_block, "p_block");
    if (ghz_photons < 1 || n_ghz_per_ring < 1 || ring_size < 1 || n_fusions < 0) {
        throw std::invalid_argument("photon, GHZ and ring counts must be >= 1 and n_fusions >= 0");
    }
    if (!(margin > 0)) {
        throw std::invalid_argument("margin must be positive");
    }
}

double ghz_cost(const CountingScenario &s) {
    s.validate();
    return s.ghz_photons / s.ghz_success;
}

double ring_cost_linear_optics(const CountingScenario &s) {
    return s.n_ghz_per_ring * ghz_cost(s) / std::pow(s.fusion_success, s.n_fusions);
}

long blocks_needed(int ring_size, double p_block, double margin) {
    check_probability(p_block, "p_block");
    if (ring_size < 1 || !(margin > 0)) {
        throw std::invalid_argument("ring size must be >= 1 and margin positive");
    }
    // The small slack keeps exact quotients such as 12 / 0.2 from rounding up to 61.
    return (long)std::ceil(margin * ring_size / p_block - 1e-9);
}

std::vector<ScalingRow> scaling_curves(const std::vector<int> &sizes, const CountingScenario &s) {
    s.validate();
    std::vector<ScalingRow> rows;
    for (int n : sizes) {
        if (n < 1) {
            throw std::invalid_argument("ring sizes must be >= 1");
        }
        CountingScenario scaled = s;
        scaled.ring_size = n;
        scaled.n_ghz_per_ring = (int)std::ceil((double)n * s.n_ghz_per_ring / s.ring_size - 1e-9);
        scaled.n_fusions = (int)std::ceil((double)n * s.n_fusions / s.ring_size - 1e-9);
        rows.push_back({n, blocks_needed(n, s.p_block, s.margin), ring_cost_linear_optics(scaled)});
    }
    return rows;
}

void write_scaling_csv(const std::vector<ScalingRow> &rows, std::ostream &out) {
    out << "ring_size,blocks_needed,linear_optics_photons\n";
    char buf[96];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%ld,%.10g\n", r.ring_size, r.blocks_needed, r.linear_optics_photons);
        out << buf;
    }
}

}  // namespace hybridbell

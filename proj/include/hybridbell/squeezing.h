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

#ifndef HYBRIDBELL_SQUEEZING_H
#define HYBRIDBELL_SQUEEZING_H

#include <cstddef>
#include <vector>

// Closed-form analytics of the pumped (blue-detuned) optomechanical interaction. All rates in
// rad/ns, durations in ns. These functions double as the oracle for the numeric dynamics.
namespace hybridbell {

/// Gamma_OM * tau above this marks the edge of the weak-squeezing analysis.
inline constexpr double kWeakSqueezingLimit = 0.3;

/// Default number of phonon-photon pairs kept in the herald and noise arithmetic.
inline constexpr size_t kDefaultPairCutoff = 3;

struct SqueezeParams {
    double gamma_om = 0;  // optomechanical scattering rate
    double tau = 0;       // square pulse duration
    double alpha = 0;     // mechanical linewidth / gamma_om
};

struct SqueezeResult {
    double gain_a = 1;  // coefficient of b(0) in b(tau)
    double gain_b = 0;  // coefficient of the conjugate input partner
    double r = 0;       // squeezing parameter, cosh r = exp(gamma_om tau / 2)
    double lambda = 0;  // tanh r
    double p0 = 1;      // vacuum weight 1 / cosh^2 r
    bool outside_weak_squeezing = false;

    double p1() const {
        return p0 * lambda * lambda;
    }
};

/// 4 G^2 / kappa. Throws std::invalid_argument when kappa <= 0.
double scattering_rate(double g, double kappa);

/// Qubit-induced mechanical frequency shift in the dispersive regime. Throws std::domain_error at
/// the poles delta = 0 and delta = e_c_over_hbar.
double dispersive_shift(double g_qm, double e_c_over_hbar, double delta);

SqueezeResult squeeze_gains(const SqueezeParams &p);

/// p0 (1 - p0)^n for n = 0..n_max. Not renormalized.
std::vector<double> pair_distribution(double p0, size_t n_max);

/// Probability that the total pair count over two identically pumped rails is odd, keeping
/// joint terms with n + m <= n_max.
double herald_probability(double p0, size_t n_max = kDefaultPairCutoff);

struct MultiphotonNoise {
    double exact;       // fraction of odd-parity heralds carrying >= 3 pairs
    double p1_squared;  // leading-order estimate
};

/// Throws std::domain_error for p0 outside (0, 1).
MultiphotonNoise multiphoton_noise(double p0, size_t n_max = kDefaultPairCutoff);

/// Lowest-order single-pair probability, p1 ~ Gamma_OM tau.
double p1_scaling(double gamma_om, double tau);

bool in_weak_squeezing_regime(double gamma_om, double tau);

}  // namespace hybridbell

#endif

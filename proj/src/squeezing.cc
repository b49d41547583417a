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

#include "hybridbell/squeezing.h"

#include <cmath>
#include <stdexcept>

namespace hybridbell {

double scattering_rate(double g, double kappa) {
    if (!(kappa > 0)) {
        throw std::invalid_argument("optical linewidth kappa must be positive");
    }
    return 4 * g * g / kappa;
}

double dispersive_shift(double g_qm, double e_c_over_hbar, double delta) {
    double denom = delta * (delta - e_c_over_hbar);
    double scale = std::max({std::abs(delta), std::abs(e_c_over_hbar), 1e-300});
    if (std::abs(denom) <= 1e-12 * scale * scale) {
        throw std::domain_error("dispersive shift is singular at delta = 0 or delta = E_C/hbar");
    }
    return -g_qm * g_qm * e_c_over_hbar / denom;
}

SqueezeResult squeeze_gains(const SqueezeParams &p) {
    if (p.gamma_om < 0 || p.tau < 0 || p.alpha < 0) {
        throw std::invalid_argument("squeeze parameters must be non-negative");
    }
    double x = p.gamma_om * p.tau;
    double one_minus_alpha = 1 - p.alpha;

    SqueezeResult out;
    out.outside_weak_squeezing = x > kWeakSqueezingLimit;
    out.gain_a = std::exp(0.5 * one_minus_alpha * x);
    if (std::abs(one_minus_alpha) < 1e-6) {
        out.gain_b = std::sqrt(x);
    } else {
        // expm1 keeps the small-x regime accurate.
        out.gain_b = std::sqrt(std::expm1(one_minus_alpha * x) / one_minus_alpha);
    }
    double cosh_r = std::exp(0.5 * x);
    out.r = std::acosh(cosh_r);
    out.lambda = std::tanh(out.r);
    out.p0 = 1 / (cosh_r * cosh_r);
    return out;
}

static void require_p0(double p0) {
    if (!(p0 > 0 && p0 <= 1)) {
        throw std::invalid_argument("vacuum probability p0 must lie in (0, 1]");
    }
}

std::vector<double> pair_distribution(double p0, size_t n_max) {
    require_p0(p0);
    std::vector<double> p(n_max + 1);
    double q = 1 - p0;
    double w = p0;
    for (size_t n = 0; n <= n_max; n++) {
        p[n] = w;
        w *= q;
    }
    return p;
}

double herald_probability(double p0, size_t n_max) {
    auto p = pair_distribution(p0, n_max);
    double total = 0;
    for (size_t n = 0; n <= n_max; n++) {
        for (size_t m = 0; n + m <= n_max; m++) {
            if ((n + m) % 2 == 1) {
                total += p[n] * p[m];
            }
        }
    }
    return total;
}

MultiphotonNoise multiphoton_noise(double p0, size_t n_max) {
    if (!(p0 > 0 && p0 < 1)) {
        throw std::domain_error("multiphoton noise needs 0 < p0 < 1");
    }
    auto p = pair_distribution(p0, n_max);
    double noisy = 0;
    double heralded = 0;
    for (size_t n = 0; n <= n_max; n++) {
        for (size_t m = 0; n + m <= n_max; m++) {
            if ((n + m) % 2 == 1) {
                heralded += p[n] * p[m];
                if (n + m >= 3) {
                    noisy += p[n] * p[m];
                }
            }
        }
    }
    return {noisy / heralded, p[1] * p[1]};
}

double p1_scaling(double gamma_om, double tau) {
    if (gamma_om < 0 || tau < 0) {
        throw std::invalid_argument("rate and duration must be non-negative");
    }
    return gamma_om * tau;
}

bool in_weak_squeezing_regime(double gamma_om, double tau) {
    return gamma_om * tau <= kWeakSqueezingLimit;
}

}  // namespace hybridbell

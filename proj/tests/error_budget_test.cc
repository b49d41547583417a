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

#include "hybridbell/error_budget.h"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "hybridbell/units.h"

namespace hybridbell {
namespace {

// Order-of-magnitude values of the published budget, in table order.
const double kTableValues[] = {0.10, 0.10, 0.01, 0.01, 0.01, 0.01, 0.01, 0.001, 0.001, 0.0001};

std::vector<ErrorChannel> single_channel(ErrorType t, double rate) {
    return {{"test", "test", "r", t, rate}};
}

TEST(Budget, NominalMatchesTableWithinFactorThree) {
    auto ch = compute_budget(HardwareParams::nominal());
    ASSERT_EQ(ch.size(), 10u);
    for (size_t k = 0; k < ch.size(); k++) {
        double ratio = ch[k].rate / kTableValues[k];
        EXPECT_GE(ratio, 1.0 / 3) << ch[k].source;
        EXPECT_LE(ratio, 3.0) << ch[k].source;
    }
}

TEST(Budget, PhotonExtractionFromQualityFactor) {
    HardwareParams h = HardwareParams::nominal();
    double omega_o = units::kTwoPi * 193e3;  // 193 THz in rad/ns
    h.kappa_i = omega_o / 2e6;
    h.kappa_e = units::ghz(1);
    double e = compute_budget(h)[0].rate;
    EXPECT_NEAR(e, 0.0880, 5e-4);
    EXPECT_GE(e, 0.08);
    EXPECT_LE(e, 0.10);
}

TEST(Budget, TableExamples) {
    HardwareParams h = HardwareParams::nominal();
    h.Gamma_OM_tau = 0.1;
    h.eta_RO = 0.99;
    auto ch = compute_budget(h);
    EXPECT_NEAR(ch[2].rate, 0.01, 1e-15);
    EXPECT_NEAR(ch[5].rate, 0.01, 1e-12);
    EXPECT_NEAR(ch[9].rate, 1e-4, 1e-15);
    EXPECT_EQ(ch[2].etype, ErrorType::Leakage);
    EXPECT_EQ(ch[3].etype, ErrorType::Leakage);
    EXPECT_EQ(ch[1].etype, ErrorType::Erasure);
    EXPECT_EQ(ch[9].etype, ErrorType::Pauli);
    EXPECT_EQ(error_type_name(ErrorType::Leakage), "Leakage");
}

TEST(Budget, ExtraLossAddsToExtraction) {
    HardwareParams h = HardwareParams::nominal();
    double base = compute_budget(h)[0].rate;
    h.extra_loss = 0.05;
    EXPECT_NEAR(compute_budget(h)[0].rate, 1 - (1 - base) * 0.95, 1e-15);
}

TEST(Budget, Validation) {
    HardwareParams h = HardwareParams::nominal();
    h.eta_PC = 0;
    EXPECT_THROW(compute_budget(h), std::invalid_argument);
    h = HardwareParams::nominal();
    h.eta_RO = 1.1;
    EXPECT_THROW(compute_budget(h), std::invalid_argument);
    h = HardwareParams::nominal();
    h.T_phi_m = -1;
    EXPECT_THROW(compute_budget(h), std::invalid_argument);
    h = HardwareParams::nominal();
    h.eta_PC = 1.0;
    EXPECT_NO_THROW(compute_budget(h));
}

TEST(Budget, RatesStayInUnitInterval) {
    HardwareParams h = HardwareParams::nominal();
    h.n_b_gamma_b = 1.0;
    h.t_cycle = 1e9;
    for (const auto &c : compute_budget(h)) {
        EXPECT_GE(c.rate, 0.0);
        EXPECT_LE(c.rate, 1.0);
    }
}

TEST(Budget, Monotone) {
    const HardwareParams base = HardwareParams::nominal();
    auto rates = [](const HardwareParams &h) {
        std::vector<double> r;
        for (const auto &c : compute_budget(h)) {
            r.push_back(c.rate);
        }
        return r;
    };
    auto ref = rates(base);
    std::vector<std::function<void(HardwareParams &)>> worse = {
        [](HardwareParams &h) { h.kappa_i *= 1.5; },
        [](HardwareParams &h) { h.kappa_e *= 0.7; },
        [](HardwareParams &h) { h.extra_loss += 0.02; },
        [](HardwareParams &h) { h.tau *= 1.5; },
        [](HardwareParams &h) { h.t_swap *= 1.5; },
        [](HardwareParams &h) { h.t_cycle *= 1.5; },
        [](HardwareParams &h) { h.gamma *= 1.5; },
        [](HardwareParams &h) { h.n_b_gamma_b *= 1.5; },
        [](HardwareParams &h) { h.Gamma_OM_tau *= 1.5; },
        [](HardwareParams &h) { h.eta_PC -= 0.05; },
        [](HardwareParams &h) { h.eta_RO -= 0.05; },
        [](HardwareParams &h) { h.T_phi_m *= 0.5; },
        [](HardwareParams &h) { h.T_phi_DR *= 0.5; },
        [](HardwareParams &h) { h.T_1_DR *= 0.5; },
    };
    for (size_t k = 0; k < worse.size(); k++) {
        HardwareParams h = base;
        worse[k](h);
        auto r = rates(h);
        bool some_increase = false;
        for (size_t j = 0; j < r.size(); j++) {
            EXPECT_GE(r[j], ref[j]) << "change " << k << " channel " << j;
            some_increase = some_increase || r[j] > ref[j];
        }
        EXPECT_TRUE(some_increase) << k;
    }
    EXPECT_EQ(rates(base), ref);
}

TEST(Thresholds, NominalFailsLocatedBudget) {
    auto r = check_thresholds(compute_budget(HardwareParams::nominal()));
    EXPECT_NEAR(r.located_total, 0.2148, 5e-4);
    EXPECT_FALSE(r.located_pass);
    EXPECT_NEAR(r.located_margin, 0.10 / r.located_total, 1e-15);
    EXPECT_NEAR(r.erasure_total + r.leakage_total, r.located_total, 1e-15);
}

TEST(Thresholds, SimpleCases) {
    auto zero = check_thresholds({});
    EXPECT_TRUE(zero.located_pass);
    EXPECT_TRUE(zero.pauli_pass);
    EXPECT_TRUE(std::isinf(zero.pauli_margin));
    auto half = check_thresholds(single_channel(ErrorType::Pauli, 0.005));
    EXPECT_TRUE(half.pauli_pass);
    EXPECT_NEAR(half.pauli_margin, 2.0, 1e-12);
    auto over = check_thresholds(single_channel(ErrorType::Pauli, 0.02));
    EXPECT_FALSE(over.pauli_pass);
    auto leak = check_thresholds(single_channel(ErrorType::Leakage, 0.05));
    EXPECT_TRUE(leak.located_pass);
    EXPECT_NEAR(leak.leakage_total, 0.05, 1e-15);
}

TEST(Sampling, ZeroRatesAreIntact) {
    auto ch = compute_budget(HardwareParams::nominal());
    for (auto &c : ch) {
        c.rate = 0;
    }
    auto s = sample_resource_state(Graph::ring(6), ch, 5000, 1);
    EXPECT_EQ(s.fully_intact_fraction, 1.0);
    EXPECT_EQ(s.intact_histogram[6], 5000u);
    EXPECT_EQ(s.located_rate, 0.0);
}

TEST(Sampling, SingleErasureMatchesBinomial) {
    double e = 0.03;
    size_t n = 6, trials = 100000;
    auto s = sample_resource_state(Graph::ring(n), single_channel(ErrorType::Erasure, e), trials, 42);
    double expect = std::pow(1 - e, double(n));
    double sigma = std::sqrt(expect * (1 - expect) / double(trials));
    EXPECT_NEAR(s.fully_intact_fraction, expect, 3 * sigma);
    double per = std::sqrt(e * (1 - e) / double(trials * n));
    EXPECT_NEAR(s.channel_rates[0], e, 3 * per);
    EXPECT_NEAR(s.located_rate, e, 3 * per);
    uint64_t total = 0;
    for (auto c : s.intact_histogram) {
        total += c;
    }
    EXPECT_EQ(total, trials);
}

TEST(Sampling, MarginalsConvergeToChannelRates) {
    auto ch = compute_budget(HardwareParams::nominal());
    size_t trials = 100000;
    auto s = sample_resource_state(Graph::ring(6), ch, trials, 7);
    double draws = double(trials) * 6;
    for (size_t k = 0; k < ch.size(); k++) {
        double sigma = std::sqrt(ch[k].rate * (1 - ch[k].rate) / draws);
        EXPECT_NEAR(s.channel_rates[k], ch[k].rate, std::max(3 * sigma, 1.0 / draws)) << ch[k].source;
    }
}

TEST(Sampling, IndependentOfThreadCount) {
    auto ch = compute_budget(HardwareParams::nominal());
    auto a = sample_resource_state(Graph::ring(6), ch, 20000, 99, {1000, 1});
    auto b = sample_resource_state(Graph::ring(6), ch, 20000, 99, {1000, 4});
    EXPECT_EQ(a.intact_histogram, b.intact_histogram);
    EXPECT_EQ(a.channel_rates, b.channel_rates);
    auto c = sample_resource_state(Graph::ring(6), ch, 20000, 100, {1000, 1});
    EXPECT_NE(a.intact_histogram, c.intact_histogram);
}

TEST(Sampling, NominalRingRegression) {
    auto ch = compute_budget(HardwareParams::nominal());
    auto s = sample_resource_state(Graph::ring(6), ch, 100000, 7);
    // Independent channels: every qubit untouched with probability prod(1 - r).
    double clean = 1;
    for (const auto &c : ch) {
        clean *= 1 - c.rate;
    }
    double expect = std::pow(clean, 6.0);
    double sigma = std::sqrt(expect * (1 - expect) / 1e5);
    EXPECT_NEAR(s.fully_intact_fraction, expect, 3 * sigma);
    auto again = sample_resource_state(Graph::ring(6), ch, 100000, 7);
    EXPECT_EQ(s.fully_intact_fraction, again.fully_intact_fraction);
    EXPECT_THROW(sample_resource_state(Graph::ring(6), ch, 0, 7), std::invalid_argument);
}

TEST(Budget, CsvLayout) {
    std::ostringstream out;
    write_budget_csv(compute_budget(HardwareParams::nominal()), out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "source,effect,scaling_expr,rate,error_type");
    size_t rows = 0;
    while (std::getline(in, line)) {
        rows++;
    }
    EXPECT_EQ(rows, 10u);
}

}  // namespace
}  // namespace hybridbell

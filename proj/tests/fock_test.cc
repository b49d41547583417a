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

#include "hybridbell/fock.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

namespace hybridbell {
namespace {

TEST(Fock, BasisIndexRoundTrip) {
    Space s{{"q", 3}, {"m", 4}, {"o", 2}};
    EXPECT_EQ(space_dim(s), 24u);
    for (size_t i = 0; i < 24; i++) {
        auto occ = occupation_of(s, i);
        EXPECT_EQ(basis_index(s, occ), i);
    }
    std::vector<size_t> occ{1, 2, 1};
    EXPECT_EQ(basis_index(s, occ), 1u * 8 + 2u * 2 + 1u);
    std::vector<size_t> bad{3, 0, 0};
    EXPECT_THROW(basis_index(s, bad), std::out_of_range);
}

TEST(Fock, ValidateSpaceRejectsDuplicatesAndTinyModes) {
    EXPECT_THROW(validate_space({{"a", 2}, {"a", 3}}), std::invalid_argument);
    EXPECT_THROW(validate_space({{"a", 1}}), std::invalid_argument);
    EXPECT_THROW(validate_space({}), std::invalid_argument);
}

TEST(Fock, CommutatorIsIdentityBelowTruncation) {
    for (size_t dim : {2u, 5u, 9u}) {
        auto b = annihilation(dim);
        auto bd = creation(dim);
        CMatrix c = (b * bd - bd * b).matrix();
        for (size_t k = 0; k + 1 < dim; k++) {
            EXPECT_NEAR(std::abs(c(k, k) - cd(1)), 0, 1e-14);
        }
        EXPECT_NEAR(c(dim - 1, dim - 1).real(), 1.0 - double(dim), 1e-12);
        CMatrix off = c;
        off.diagonal().setZero();
        EXPECT_LT(off.norm(), 1e-14);
    }
}

TEST(Fock, NumberOperatorMatchesLadder) {
    auto b = annihilation(6);
    auto n = number(6);
    EXPECT_LT(((b.adjoint() * b) - n).matrix().norm(), 1e-13);
    EXPECT_LT((b.adjoint() - creation(6)).matrix().norm(), 1e-15);
}

TEST(Fock, LiftPlacesOperatorOnItsMode) {
    Space s{{"q", 2}, {"m", 3}};
    auto bm = lift(annihilation(3, "m"), s);
    auto direct = tensor({identity({{"q", 2}}), annihilation(3, "m")});
    EXPECT_LT((bm.matrix() - direct.matrix()).norm(), 1e-15);
    EXPECT_THROW(lift(annihilation(4, "m"), s), std::invalid_argument);
}

TEST(Fock, TransmonLadderIsAnharmonic) {
    auto h = transmon_hamiltonian(30.0, 0.2, 4);
    double ec = 2 * M_PI * 0.2;
    EXPECT_NEAR(h.matrix()(1, 1).real(), 30.0, 1e-12);
    EXPECT_NEAR(h.matrix()(2, 2).real(), 60.0 - ec, 1e-12);
    EXPECT_NEAR(h.matrix()(3, 3).real(), 90.0 - 3 * ec, 1e-12);
}

TEST(Fock, DensityMatrixConstructionChecks) {
    Space s{{"a", 2}};
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 0.5;
    EXPECT_THROW(DensityMatrix(s, m), std::invalid_argument);
    m(1, 1) = 0.5;
    m(0, 1) = cd(0, 0.1);
    EXPECT_THROW(DensityMatrix(s, m), std::invalid_argument);
    m(1, 0) = cd(0, -0.1);
    EXPECT_NO_THROW(DensityMatrix(s, m));
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.2;
    neg(1, 1) = -0.2;
    EXPECT_THROW(DensityMatrix(s, neg), std::invalid_argument);
}

TEST(Fock, PartialTraceOfProductState) {
    Space sa{{"a", 2}}, sb{{"b", 3}};
    CVector pa(2), pb(3);
    pa << 0.6, cd(0, 0.8);
    pb << 1, 1, cd(0, 1);
    auto ra = DensityMatrix::pure(sa, pa);
    auto rb = DensityMatrix::pure(sb, pb);
    auto rab = tensor(ra, rb);
    EXPECT_LT((partial_trace(rab, {"a"}).matrix() - ra.matrix()).norm(), 1e-14);
    EXPECT_LT((partial_trace(rab, {"b"}).matrix() - rb.matrix()).norm(), 1e-14);
    auto both = partial_trace(rab, {"b", "a"});
    EXPECT_EQ(both.space()[0].label, "a");
    EXPECT_LT((both.matrix() - rab.matrix()).norm(), 1e-14);
}

TEST(Fock, PartialTracePreservesTraceOnRandomState) {
    Space s{{"x", 2}, {"y", 3}, {"z", 2}};
    CMatrix a = CMatrix::Random(12, 12);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace();
    DensityMatrix r(s, rho);
    for (auto keep : {std::vector<std::string>{"x"}, {"y"}, {"z"}, {"x", "z"}}) {
        auto red = partial_trace(r, keep);
        EXPECT_NEAR(red.trace(), 1.0, 1e-12);
        EXPECT_GT(red.min_eigenvalue(), -1e-12);
    }
    // Tracing in two stages equals tracing at once.
    auto xz = partial_trace(r, {"x", "z"});
    auto x1 = partial_trace(xz, {"x"});
    auto x2 = partial_trace(r, {"x"});
    EXPECT_LT((x1.matrix() - x2.matrix()).norm(), 1e-13);
}

TEST(Fock, TwoModeSqueezedVacuumStatistics) {
    double lambda = 0.3;
    size_t dim = 12;
    auto rho = two_mode_squeezed_vacuum(lambda, dim);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
    double p0 = 1 - lambda * lambda;
    for (size_t n = 0; n < 5; n++) {
        EXPECT_NEAR(fock_population(rho, {n, n}), p0 * std::pow(lambda, 2.0 * n), 1e-10);
        if (n > 0) {
            EXPECT_NEAR(fock_population(rho, {n, 0}), 0, 1e-15);
        }
    }
    // Each reduced mode is thermal with mean lambda^2 / (1 - lambda^2).
    auto m = partial_trace(rho, {"m"});
    double mean = m.expectation(number(dim, "m"));
    EXPECT_NEAR(mean, lambda * lambda / p0, 1e-8);
    EXPECT_THROW(two_mode_squeezed_vacuum(1.0, 4), std::invalid_argument);
}

TEST(Fock, FockPopulationFloorsRoundOff) {
    Space s{{"a", 2}};
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1 + 5e-11;
    m(1, 1) = -5e-11;
    DensityMatrix r(s, m);
    EXPECT_EQ(fock_population(r, {1}), 0.0);
}

TEST(Fock, ProductsAssociate) {
    Space s{{"a", 2}, {"b", 3}};
    Operator x(s, CMatrix::Random(6, 6));
    Operator y(s, CMatrix::Random(6, 6));
    Operator z(s, CMatrix::Random(6, 6));
    EXPECT_LT(((x * y) * z - x * (y * z)).matrix().norm(), 1e-12);
    auto a = annihilation(2, "a"), b = annihilation(3, "b"), c = creation(2, "c");
    auto left = tensor({tensor({a, b}), c});
    auto right = tensor({a, tensor({b, c})});
    EXPECT_LT((left.matrix() - right.matrix()).norm(), 1e-12);
}

TEST(Fock, PopulationsSumToOne) {
    Space s{{"q", 3}, {"m", 2}};
    CMatrix a = CMatrix::Random(6, 6);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace();
    DensityMatrix r(s, rho);
    double sum = 0;
    for (size_t i = 0; i < 6; i++) {
        sum += fock_population(r, occupation_of(s, i));
    }
    EXPECT_NEAR(sum, 1.0, 1e-8);
}

TEST(Fock, TwoModeSqueezedExample) {
    auto rho = two_mode_squeezed_vacuum(0.3, 30);
    EXPECT_NEAR(fock_population(rho, {1, 1}), 0.0819, 1e-12);
}

}  // namespace
}  // namespace hybridbell

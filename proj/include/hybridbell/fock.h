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

#ifndef HYBRIDBELL_FOCK_H
#define HYBRIDBELL_FOCK_H

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hybridbell {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// One truncated bosonic (or anharmonic) mode. Levels 0..dim-1 are kept.
struct ModeSpec {
    std::string label;
    size_t dim;

    bool operator==(const ModeSpec &other) const = default;
};

/// Ordered list of modes. The first mode is the most significant index of the
/// Kronecker product, i.e. |n0 n1 ...> lives at n0 * (d1 * d2 ...) + n1 * (d2 ...) + ...
using Space = std::vector<ModeSpec>;

size_t space_dim(const Space &space);
size_t mode_index(const Space &space, const std::string &label);
void validate_space(const Space &space);

/// Flat basis index of an occupation tuple. Throws std::out_of_range.
size_t basis_index(const Space &space, std::span<const size_t> occupation);
std::vector<size_t> occupation_of(const Space &space, size_t index);

class Operator {
   public:
    Operator(Space space, CMatrix matrix);

    const Space &space() const {
        return space_;
    }
    const CMatrix &matrix() const {
        return matrix_;
    }
    size_t dim() const {
        return (size_t)matrix_.rows();
    }

    Operator adjoint() const;
    Operator operator*(const Operator &other) const;
    Operator operator+(const Operator &other) const;
    Operator operator-(const Operator &other) const;
    Operator operator*(cd scale) const;

   private:
    void require_same_space(const Operator &other) const;

    Space space_;
    CMatrix matrix_;
};

inline Operator operator*(cd scale, const Operator &op) {
    return op * scale;
}

/// Lowering operator with <n-1|b|n> = sqrt(n). The top level is a hard truncation
/// boundary: [b, b^dag] = I fails on the last diagonal entry.
Operator annihilation(size_t dim, const std::string &label = "b");
Operator creation(size_t dim, const std::string &label = "b");
Operator number(size_t dim, const std::string &label = "b");
Operator identity(const Space &space);

/// Kronecker product in list order.
Operator tensor(std::span<const Operator> ops);
Operator tensor(std::initializer_list<Operator> ops);

/// Embeds a single-mode operator into a larger space, padding with identities.
Operator lift(const Operator &local, const Space &full);

/// Diagonal transmon ladder: omega_q * n - (E_C / 2) n (n - 1), with E_C = 2 pi * e_c_over_h.
/// omega_q is angular (rad/ns), e_c_over_h is an ordinary frequency (GHz).
Operator transmon_hamiltonian(double omega_q, double e_c_over_h, size_t dim, const std::string &label = "q");

/// Acceptance tolerances for density-matrix construction.
struct StateTolerance {
    double trace = 1e-9;
    double hermiticity = 1e-12;
    double min_eigenvalue = -1e-10;
};

/// Tolerances used for states produced by the time integrator.
inline constexpr StateTolerance kIntegratorTolerance{1e-6, 1e-8, -1e-6};

class DensityMatrix {
   public:
    DensityMatrix(Space space, CMatrix matrix, StateTolerance tol = {});

    static DensityMatrix pure(Space space, const CVector &psi);
    static DensityMatrix basis_state(Space space, std::span<const size_t> occupation);
    static DensityMatrix vacuum(Space space);

    const Space &space() const {
        return space_;
    }
    const CMatrix &matrix() const {
        return matrix_;
    }
    size_t dim() const {
        return (size_t)matrix_.rows();
    }
    double trace() const {
        return matrix_.trace().real();
    }
    double min_eigenvalue() const;

    /// <psi|rho|psi> for a normalized vector.
    double overlap(const CVector &psi) const;
    double expectation(const Operator &op) const;

   private:
    Space space_;
    CMatrix matrix_;
};

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced state over `keep`. Kept modes appear in their original order.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::string> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::string> keep);

/// <n0 n1 ...|rho|n0 n1 ...>. Round-off negatives down to -1e-10 are floored to zero; anything
/// more negative throws std::domain_error.
double fock_population(const DensityMatrix &rho, std::span<const size_t> occupation);
double fock_population(const DensityMatrix &rho, std::initializer_list<size_t> occupation);

/// sqrt(1 - lambda^2) sum_n lambda^n |n n>, truncated at `dim` levels per mode and renormalized.
DensityMatrix two_mode_squeezed_vacuum(
    double lambda, size_t dim, const std::string &label_a = "m", const std::string &label_b = "o");

}  // namespace hybridbell

#endif

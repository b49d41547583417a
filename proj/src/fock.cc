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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace hybridbell {

size_t space_dim(const Space &space) {
    size_t d = 1;
    for (const auto &m : space) {
        d *= m.dim;
    }
    return d;
}

void validate_space(const Space &space) {
    if (space.empty()) {
        throw std::invalid_argument("empty mode space");
    }
    for (size_t k = 0; k < space.size(); k++) {
        if (space[k].dim < 2) {
            throw std::invalid_argument("mode '" + space[k].label + "' has dimension < 2");
        }
        for (size_t j = 0; j < k; j++) {
            if (space[j].label == space[k].label) {
                throw std::invalid_argument("duplicate mode label '" + space[k].label + "'");
            }
        }
    }
}

size_t mode_index(const Space &space, const std::string &label) {
    for (size_t k = 0; k < space.size(); k++) {
        if (space[k].label == label) {
            return k;
        }
    }
    throw std::invalid_argument("unknown mode label '" + label + "'");
}

size_t basis_index(const Space &space, std::span<const size_t> occupation) {
    if (occupation.size() != space.size()) {
        throw std::out_of_range("occupation tuple length does not match mode count");
    }
    size_t index = 0;
    for (size_t k = 0; k < space.size(); k++) {
        if (occupation[k] >= space[k].dim) {
            throw std::out_of_range(
                "occupation " + std::to_string(occupation[k]) + " outside mode '" + space[k].label + "'");
        }
        index = index * space[k].dim + occupation[k];
    }
    return index;
}

std::vector<size_t> occupation_of(const Space &space, size_t index) {
    std::vector<size_t> occ(space.size());
    for (size_t k = space.size(); k-- > 0;) {
        occ[k] = index % space[k].dim;
        index /= space[k].dim;
    }
    return occ;
}

Operator::Operator(Space space, CMatrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
    validate_space(space_);
    size_t d = space_dim(space_);
    if ((size_t)matrix_.rows() != d || (size_t)matrix_.cols() != d) {
        throw std::invalid_argument("operator matrix does not match the product of mode dimensions");
    }
}

void Operator::require_same_space(const Operator &other) const {
    if (space_ != other.space_) {
        throw std::invalid_argument("operators act on different mode spaces");
    }
}

Operator Operator::adjoint() const {
    return Operator(space_, matrix_.adjoint());
}

Operator Operator::operator*(const Operator &other) const {
    require_same_space(other);
    return Operator(space_, matrix_ * other.matrix_);
}

Operator Operator::operator+(const Operator &other) const {
    require_same_space(other);
    return Operator(space_, matrix_ + other.matrix_);
}

Operator Operator::operator-(const Operator &other) const {
    require_same_space(other);
    return Operator(space_, matrix_ - other.matrix_);
}

Operator Operator::operator*(cd scale) const {
    return Operator(space_, matrix_ * scale);
}

Operator annihilation(size_t dim, const std::string &label) {
    if (dim < 2) {
        throw std::invalid_argument("annihilation operator needs dim >= 2");
    }
    CMatrix m = CMatrix::Zero(dim, dim);
    for (size_t n = 1; n < dim; n++) {
        m(n - 1, n) = std::sqrt((double)n);
    }
    return Operator({{label, dim}}, std::move(m));
}

Operator creation(size_t dim, const std::string &label) {
    return annihilation(dim, label).adjoint();
}

Operator number(size_t dim, const std::string &label) {
    if (dim < 2) {
        throw std::invalid_argument("number operator needs dim >= 2");
    }
    CMatrix m = CMatrix::Zero(dim, dim);
    for (size_t n = 0; n < dim; n++) {
        m(n, n) = (double)n;
    }
    return Operator({{label, dim}}, std::move(m));
}

Operator identity(const Space &space) {
    size_t d = space_dim(space);
    return Operator(space, CMatrix::Identity(d, d));
}

static CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Operator tensor(std::span<const Operator> ops) {
    if (ops.empty()) {
        throw std::invalid_argument("tensor of an empty operator list");
    }
    Space space = ops[0].space();
    CMatrix m = ops[0].matrix();
    for (size_t k = 1; k < ops.size(); k++) {
        space.insert(space.end(), ops[k].space().begin(), ops[k].space().end());
        m = kron(m, ops[k].matrix());
    }
    return Operator(std::move(space), std::move(m));
}

Operator tensor(std::initializer_list<Operator> ops) {
    return tensor(std::span<const Operator>(ops.begin(), ops.size()));
}

Operator lift(const Operator &local, const Space &full) {
    if (local.space().size() != 1) {
        throw std::invalid_argument("lift expects a single-mode operator");
    }
    size_t k = mode_index(full, local.space()[0].label);
    if (full[k].dim != local.dim()) {
        throw std::invalid_argument("mode '" + full[k].label + "' dimension mismatch in lift");
    }
    size_t before = 1;
    size_t after = 1;
    for (size_t j = 0; j < k; j++) {
        before *= full[j].dim;
    }
    for (size_t j = k + 1; j < full.size(); j++) {
        after *= full[j].dim;
    }
    CMatrix m = kron(kron(CMatrix::Identity(before, before), local.matrix()), CMatrix::Identity(after, after));
    return Operator(full, std::move(m));
}

Operator transmon_hamiltonian(double omega_q, double e_c_over_h, size_t dim, const std::string &label) {
    if (dim < 2) {
        throw std::invalid_argument("transmon needs dim >= 2");
    }
    double e_c = 2 * std::numbers::pi * e_c_over_h;
    CMatrix m = CMatrix::Zero(dim, dim);
    for (size_t n = 0; n < dim; n++) {
        double nd = (double)n;
        m(n, n) = omega_q * nd - 0.5 * e_c * nd * (nd - 1);
    }
    return Operator({{label, dim}}, std::move(m));
}

DensityMatrix::DensityMatrix(Space space, CMatrix matrix, StateTolerance tol)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    validate_space(space_);
    size_t d = space_dim(space_);
    if ((size_t)matrix_.rows() != d || (size_t)matrix_.cols() != d) {
        throw std::invalid_argument("density matrix does not match the product of mode dimensions");
    }
    cd tr = matrix_.trace();
    if (std::abs(tr - 1.0) > tol.trace) {
        throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) + " is not 1");
    }
    double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.hermiticity) {
        throw std::invalid_argument("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    double lo = min_eigenvalue();
    if (lo < tol.min_eigenvalue) {
        throw std::invalid_argument("density matrix has negative eigenvalue " + std::to_string(lo));
    }
}

DensityMatrix DensityMatrix::pure(Space space, const CVector &psi) {
    double norm = psi.norm();
    if (norm == 0) {
        throw std::invalid_argument("zero state vector");
    }
    CVector v = psi / norm;
    return DensityMatrix(std::move(space), v * v.adjoint());
}

DensityMatrix DensityMatrix::basis_state(Space space, std::span<const size_t> occupation) {
    validate_space(space);
    CVector v = CVector::Zero(space_dim(space));
    v(basis_index(space, occupation)) = 1.0;
    return pure(std::move(space), v);
}

DensityMatrix DensityMatrix::vacuum(Space space) {
    std::vector<size_t> zeros(space.size(), 0);
    return basis_state(std::move(space), zeros);
}

double DensityMatrix::min_eigenvalue() const {
    CMatrix h = 0.5 * (matrix_ + matrix_.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::overlap(const CVector &psi) const {
    return (psi.adjoint() * matrix_ * psi)(0, 0).real();
}

double DensityMatrix::expectation(const Operator &op) const {
    if (op.space() != space_) {
        throw std::invalid_argument("operator and state act on different spaces");
    }
    return (op.matrix() * matrix_).trace().real();
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    Space space = a.space();
    space.insert(space.end(), b.space().begin(), b.space().end());
    return DensityMatrix(std::move(space), kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::string> keep) {
    const Space &space = rho.space();
    std::vector<bool> kept(space.size(), false);
    for (const auto &label : keep) {
        kept[mode_index(space, label)] = true;
    }
    Space out_space;
    for (size_t k = 0; k < space.size(); k++) {
        if (kept[k]) {
            out_space.push_back(space[k]);
        }
    }
    if (out_space.empty()) {
        throw std::invalid_argument("partial trace must keep at least one mode");
    }
    Space traced_space;
    for (size_t k = 0; k < space.size(); k++) {
        if (!kept[k]) {
            traced_space.push_back(space[k]);
        }
    }

    size_t d_out = space_dim(out_space);
    CMatrix out = CMatrix::Zero(d_out, d_out);
    size_t d = rho.dim();
    std::vector<size_t> out_index(d);
    std::vector<size_t> env_index(d);
    for (size_t i = 0; i < d; i++) {
        auto occ = occupation_of(space, i);
        size_t oi = 0;
        size_t ei = 0;
        for (size_t k = 0; k < space.size(); k++) {
            if (kept[k]) {
                oi = oi * space[k].dim + occ[k];
            } else {
                ei = ei * space[k].dim + occ[k];
            }
        }
        out_index[i] = oi;
        env_index[i] = ei;
    }
    const CMatrix &m = rho.matrix();
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            if (env_index[i] == env_index[j]) {
                out(out_index[i], out_index[j]) += m(i, j);
            }
        }
    }
    StateTolerance tol;
    tol.trace = 1e-9;
    tol.hermiticity = 1e-10;
    tol.min_eigenvalue = -1e-6;
    return DensityMatrix(std::move(out_space), std::move(out), tol);
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::string> keep) {
    return partial_trace(rho, std::span<const std::string>(keep.begin(), keep.size()));
}

double fock_population(const DensityMatrix &rho, std::span<const size_t> occupation) {
    size_t i = basis_index(rho.space(), occupation);
    double p = rho.matrix()(i, i).real();
    if (p < -1e-10) {
        throw std::domain_error("negative population " + std::to_string(p));
    }
    return std::clamp(p, 0.0, 1.0);
}

double fock_population(const DensityMatrix &rho, std::initializer_list<size_t> occupation) {
    return fock_population(rho, std::span<const size_t>(occupation.begin(), occupation.size()));
}

DensityMatrix two_mode_squeezed_vacuum(double lambda, size_t dim, const std::string &label_a, const std::string &label_b) {
    if (!(std::abs(lambda) < 1)) {
        throw std::invalid_argument("|lambda| must be < 1");
    }
    Space space{{label_a, dim}, {label_b, dim}};
    validate_space(space);
    CVector psi = CVector::Zero(dim * dim);
    double amp = std::sqrt(1 - lambda * lambda);
    for (size_t n = 0; n < dim; n++) {
        psi(n * dim + n) = amp * std::pow(lambda, (double)n);
    }
    return DensityMatrix::pure(std::move(space), psi);
}

}  // namespace hybridbell

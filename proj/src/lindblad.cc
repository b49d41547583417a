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

#include "hybridbell/lindblad.h"

#include <cmath>
#include <stdexcept>

namespace hybridbell {

namespace {

using Triplet = Eigen::Triplet<cd>;

// kron(a, b) for dense inputs, keeping only nonzero entries.
SparseSuperop sparse_kron(const CMatrix &a, const CMatrix &b) {
    std::vector<Triplet> trips;
    Eigen::Index rb = b.rows();
    Eigen::Index cb = b.cols();
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            if (a(i, j) == cd(0)) {
                continue;
            }
            for (Eigen::Index k = 0; k < rb; k++) {
                for (Eigen::Index l = 0; l < cb; l++) {
                    cd v = a(i, j) * b(k, l);
                    if (v != cd(0)) {
                        trips.emplace_back(i * rb + k, j * cb + l, v);
                    }
                }
            }
        }
    }
    SparseSuperop out(a.rows() * rb, a.cols() * cb);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace

LindbladModel::LindbladModel(Space space) : space_(std::move(space)) {
    validate_space(space_);
    dim_ = space_dim(space_);
}

void LindbladModel::add_hamiltonian(const Operator &h, Coefficient c) {
    if (h.space() != space_) {
        throw std::invalid_argument("Hamiltonian term acts on a different space");
    }
    CMatrix id = CMatrix::Identity(dim_, dim_);
    // vec(H rho) = (I kron H) vec(rho); vec(rho H) = (H^T kron I) vec(rho).
    SparseSuperop s = sparse_kron(id, h.matrix()) - sparse_kron(h.matrix().transpose(), id);
    s *= cd(0, -1);
    s.prune(cd(0));
    terms_.push_back({std::move(s), std::move(c)});
}

void LindbladModel::add_dissipator(const Operator &l, Coefficient c) {
    if (l.space() != space_) {
        throw std::invalid_argument("jump operator acts on a different space");
    }
    CMatrix id = CMatrix::Identity(dim_, dim_);
    CMatrix ldl = l.matrix().adjoint() * l.matrix();
    SparseSuperop s = sparse_kron(l.matrix().conjugate(), l.matrix());
    s -= 0.5 * sparse_kron(id, ldl);
    s -= 0.5 * sparse_kron(ldl.transpose(), id);
    s.prune(cd(0));
    terms_.push_back({std::move(s), std::move(c)});
}

void LindbladModel::apply(double t, const CVector &vec_rho, CVector &out) const {
    out.setZero(vec_rho.size());
    for (const auto &term : terms_) {
        double c = term.coefficient(t);
        if (c != 0) {
            out.noalias() += c * (term.superop * vec_rho);
        }
    }
}

void LindbladModel::step_rk4(double t, double h, CVector &v) const {
    apply(t, v, k1_);
    tmp_ = v + (0.5 * h) * k1_;
    apply(t + 0.5 * h, tmp_, k2_);
    tmp_ = v + (0.5 * h) * k2_;
    apply(t + 0.5 * h, tmp_, k3_);
    tmp_ = v + h * k3_;
    apply(t + h, tmp_, k4_);
    v += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
}

void LindbladModel::propagate(CVector &v, double t0, double t1, double max_dt) const {
    if (!(max_dt > 0)) {
        throw std::invalid_argument("time step must be positive");
    }
    double span = t1 - t0;
    if (span < 0) {
        throw std::invalid_argument("cannot propagate backwards in time");
    }
    if (span == 0) {
        return;
    }
    auto steps = (size_t)std::ceil(span / max_dt - 1e-9);
    steps = std::max<size_t>(steps, 1);
    double h = span / (double)steps;
    for (size_t k = 0; k < steps; k++) {
        step_rk4(t0 + (double)k * h, h, v);
    }
}

CVector vectorize(const CMatrix &rho) {
    return Eigen::Map<const CVector>(rho.data(), rho.size());
}

CMatrix unvectorize(const CVector &vec_rho, size_t dim) {
    return Eigen::Map<const CMatrix>(vec_rho.data(), (Eigen::Index)dim, (Eigen::Index)dim);
}

}  // namespace hybridbell

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

#ifndef HYBRIDBELL_LINDBLAD_H
#define HYBRIDBELL_LINDBLAD_H

#include <functional>
#include <vector>

#include <Eigen/Sparse>

#include "hybridbell/fock.h"

namespace hybridbell {

using SparseSuperop = Eigen::SparseMatrix<cd, Eigen::RowMajor>;
using Coefficient = std::function<double(double)>;

/// Time-dependent Lindblad generator written as sum_k c_k(t) S_k, where each S_k is a fixed sparse
/// superoperator acting on column-major vec(rho).
class LindbladModel {
   public:
    explicit LindbladModel(Space space);

    /// Adds -i c(t) [h, rho].
    void add_hamiltonian(const Operator &h, Coefficient c);
    /// Adds c(t) (L rho L^dag - {L^dag L, rho} / 2).
    void add_dissipator(const Operator &l, Coefficient c);

    const Space &space() const {
        return space_;
    }
    size_t dim() const {
        return dim_;
    }
    size_t term_count() const {
        return terms_.size();
    }

    /// out = L(t) vec(rho).
    void apply(double t, const CVector &vec_rho, CVector &out) const;
    /// Classic fixed-step fourth-order Runge-Kutta, in place.
    void step_rk4(double t, double h, CVector &vec_rho) const;
    /// Integrates from t0 to t1 in equal steps no longer than max_dt.
    void propagate(CVector &vec_rho, double t0, double t1, double max_dt) const;

   private:
    struct Term {
        SparseSuperop superop;
        Coefficient coefficient;
    };

    Space space_;
    size_t dim_;
    std::vector<Term> terms_;
    mutable CVector k1_, k2_, k3_, k4_, tmp_;
};

CVector vectorize(const CMatrix &rho);
CMatrix unvectorize(const CVector &vec_rho, size_t dim);

}  // namespace hybridbell

#endif

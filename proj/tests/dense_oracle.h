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

#ifndef HYBRIDBELL_TESTS_DENSE_ORACLE_H
#define HYBRIDBELL_TESTS_DENSE_ORACLE_H

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "hybridbell/graph_state.h"

// Brute-force state-vector reference for the stabilizer tableau. Tableau qubit k is bit k of the
// amplitude index.
namespace hybridbell::testing {

class DenseState {
   public:
    using cd = std::complex<double>;

    explicit DenseState(size_t n) : n_(n), amp_(size_t{1} << n, 0.0) {
        amp_[0] = 1;
    }

    size_t qubits() const {
        return n_;
    }

    void h(size_t q) {
        size_t bit = size_t{1} << q;
        double s = 1 / std::sqrt(2.0);
        for (size_t i = 0; i < amp_.size(); i++) {
            if (!(i & bit)) {
                cd a = amp_[i];
                cd b = amp_[i | bit];
                amp_[i] = s * (a + b);
                amp_[i | bit] = s * (a - b);
            }
        }
    }

    void cz(size_t a, size_t b) {
        size_t mask = (size_t{1} << a) | (size_t{1} << b);
        for (size_t i = 0; i < amp_.size(); i++) {
            if ((i & mask) == mask) {
                amp_[i] = -amp_[i];
            }
        }
    }

    // Returns P|psi> without normalizing.
    std::vector<cd> apply(const PauliString &p) const {
        std::vector<cd> out(amp_.size());
        for (size_t i = 0; i < amp_.size(); i++) {
            size_t j = i;
            cd phase = p.negative ? -1.0 : 1.0;
            for (size_t q = 0; q < n_; q++) {
                bool bit = (i >> q) & 1;
                if (p.z[q] && bit) {
                    phase = -phase;
                }
                if (p.x[q]) {
                    j ^= size_t{1} << q;
                    if (p.z[q]) {
                        // Y = i X Z
                        phase *= cd(0, 1);
                    }
                }
            }
            out[j] += phase * amp_[i];
        }
        return out;
    }

    double expectation(const PauliString &p) const {
        auto v = apply(p);
        cd s = 0;
        for (size_t i = 0; i < amp_.size(); i++) {
            s += std::conj(amp_[i]) * v[i];
        }
        return s.real();
    }

    // Projects with (I + outcome * P) / 2 and renormalizes; returns the outcome probability.
    double project(const PauliString &p, int outcome) {
        auto v = apply(p);
        double norm = 0;
        for (size_t i = 0; i < amp_.size(); i++) {
            amp_[i] = 0.5 * (amp_[i] + double(outcome) * v[i]);
            norm += std::norm(amp_[i]);
        }
        if (norm > 0) {
            for (auto &a : amp_) {
                a /= std::sqrt(norm);
            }
        }
        return norm;
    }

    // |<stabilizer state of t|psi>|^2, via the product of (I + S) / 2 over the generators.
    double fidelity(const StabilizerTableau &t) const {
        DenseState cur = *this;
        double keep = 1;
        for (const auto &row : t.rows()) {
            keep *= cur.project(row, +1);
        }
        return keep;
    }

    const std::vector<cd> &amplitudes() const {
        return amp_;
    }

   private:
    size_t n_;
    std::vector<cd> amp_;
};

// Bell pairs per block followed by CZ on microwave qubits, built gate by gate.
inline DenseState dense_hybrid_graph(const Graph &g) {
    DenseState s(2 * g.size());
    for (size_t b = 0; b < g.size(); b++) {
        s.h(2 * b);
        // CNOT from microwave to optical as H CZ H.
        s.h(2 * b + 1);
        s.cz(2 * b, 2 * b + 1);
        s.h(2 * b + 1);
    }
    for (auto [u, v] : g.edges()) {
        s.cz(2 * u, 2 * v);
    }
    return s;
}

// Random spanning tree plus extra edges with probability 1/3; always connected.
inline Graph random_connected_graph(std::mt19937_64 &rng, size_t lo, size_t hi) {
    size_t n = lo + rng() % (hi - lo + 1);
    Graph g(n);
    for (size_t v = 1; v < n; v++) {
        g.add_edge(v, rng() % v);
    }
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            if (rng() % 3 == 0) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

}  // namespace hybridbell::testing

#endif

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

#ifndef HYBRIDBELL_GRAPH_STATE_H
#define HYBRIDBELL_GRAPH_STATE_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hybridbell {

enum class Domain : uint8_t { Microwave, Optical };

/// One dual-rail qubit. Block b owns tableau qubits 2b (microwave) and 2b + 1 (optical).
struct QubitLabel {
    size_t block;
    Domain domain;

    bool operator==(const QubitLabel &other) const = default;
    size_t index() const {
        return 2 * block + (domain == Domain::Optical ? 1 : 0);
    }
    std::string str() const;
};

QubitLabel microwave(size_t block);
QubitLabel optical(size_t block);

/// Undirected simple graph on vertices 0..n-1. Edges are stored as sorted (u < v) pairs.
class Graph {
   public:
    explicit Graph(size_t n_vertices = 0);
    Graph(size_t n_vertices, const std::vector<std::pair<size_t, size_t>> &edges);

    size_t size() const {
        return n_;
    }
    const std::vector<std::pair<size_t, size_t>> &edges() const {
        return edges_;
    }
    /// Throws std::invalid_argument for self-loops and out-of-range vertices. Duplicates are ignored.
    void add_edge(size_t u, size_t v);
    bool has_edge(size_t u, size_t v) const;
    std::vector<size_t> neighbors(size_t v) const;
    Eigen::MatrixXi adjacency() const;
    bool connected() const;

    bool operator==(const Graph &other) const = default;

    static Graph ring(size_t n);
    static Graph path(size_t n);
    static Graph complete(size_t n);
    static Graph star(size_t n);
    /// "ring:6", "path:4", "complete:3", "star:5".
    static Graph named(const std::string &spec);

   private:
    size_t n_;
    std::vector<std::pair<size_t, size_t>> edges_;
};

/// One `u v` pair per line. Blank lines and `#` comments are skipped; the vertex count is one past
/// the largest index unless `n_vertices` is larger.
Graph read_edge_list(std::istream &in, size_t n_vertices = 0);
void write_edge_list(const Graph &g, std::ostream &out);

enum class Basis { X, Z };

/// A Pauli string on n qubits: x, z bits and a sign bit (phase +1 or -1).
struct PauliString {
    std::vector<uint8_t> x;
    std::vector<uint8_t> z;
    bool negative = false;

    size_t size() const {
        return x.size();
    }
    bool is_identity() const;
    /// "+XZ_Y" style; `_` is identity.
    std::string str() const;
    static PauliString single(size_t n, size_t q, char pauli);
};

bool commute(const PauliString &a, const PauliString &b);

/// n independent commuting stabilizer generators on n qubits.
class StabilizerTableau {
   public:
    StabilizerTableau(std::vector<PauliString> rows, std::vector<QubitLabel> labels);

    size_t size() const {
        return rows_.size();
    }
    const std::vector<PauliString> &rows() const {
        return rows_;
    }
    const std::vector<QubitLabel> &labels() const {
        return labels_;
    }
    size_t index_of(const QubitLabel &q) const;

    /// Rows pairwise commute and have full GF(2) rank.
    bool valid() const;

    void h(size_t q);
    void cz(size_t a, size_t b);
    /// Multiplies row `target` by row `source`, tracking the phase.
    void multiply_row(size_t target, size_t source);
    void replace_row(size_t r, PauliString p);

   private:
    std::vector<PauliString> rows_;
    std::vector<QubitLabel> labels_;
};

/// n_blocks Bell pairs, stabilized by X_mw X_opt and Z_mw Z_opt.
StabilizerTableau prepare_blocks(size_t n_blocks);

/// Throws std::invalid_argument when a == b.
StabilizerTableau apply_cz(const StabilizerTableau &t, const QubitLabel &a, const QubitLabel &b);
StabilizerTableau apply_h(const StabilizerTableau &t, const QubitLabel &q);

struct MeasurementResult {
    int outcome;  // +1 or -1
    bool deterministic;
    /// Pauli on the unmeasured qubits relating this outcome's post-measurement state to the +1 one.
    PauliString byproduct;
    StabilizerTableau tableau;
};

/// Random outcomes are drawn from `seed`.
MeasurementResult measure(const StabilizerTableau &t, const QubitLabel &q, Basis basis, uint64_t seed);

/// Bell pairs followed by CZ on microwave qubits along every edge.
StabilizerTableau build_hybrid_graph(const Graph &g);

struct PauliCorrection {
    size_t qubit;  // optical qubit = block index
    char pauli;
};

struct ExtractionResult {
    Graph graph;
    std::vector<PauliCorrection> corrections;
    std::vector<int> outcomes;  // X outcomes per microwave qubit
    StabilizerTableau optical_tableau;  // rows X_v Z_N(v) with outcome signs, on the optical qubits
};

/// Measures every microwave qubit in X and reduces the optical stabilizers to graph form.
/// Throws InternalConsistencyError if the residual group is not a graph state.
ExtractionResult extract_optical(const StabilizerTableau &t, uint64_t seed);

/// Columns qubit, pauli.
void write_corrections_csv(const std::vector<PauliCorrection> &corrections, std::ostream &out);

/// Counter-based seed stream: SplitMix64 of seed + index.
uint64_t split_seed(uint64_t seed, uint64_t index);

struct EffectiveCoupling {
    double omega;
    double g_xx;
};

/// Omega = 2 g12 (1 + 6 gc^2 / Delta^2), g_XX = -4 gc^2 E_C / (Delta^2 - E_C^2). All rates in one unit.
/// Throws std::domain_error at Delta = 0 or Delta^2 = E_C^2.
EffectiveCoupling effective_coupling(double g_c, double g_12, double delta, double e_c_over_hbar);

/// Duration with constant g_XX accumulating a pi/4 XX rotation.
double xx_gate_time(double g_xx);

using Matrix4c = Eigen::Matrix4cd;
using Matrix2c = Eigen::Matrix2cd;

Matrix4c sqrt_iswap();
Matrix2c rotation(char axis, double theta);  // exp(-i theta sigma / 2)
Matrix4c cz_gate();

/// The two-logical-qubit CZ circuit as a dense unitary. `drop_swap` replaces that (0 or 1)
/// sqrt(iSWAP) with the identity; -1 keeps both.
Matrix4c cz_circuit_unitary(int drop_swap = -1);

/// min over phi of max |U - e^{i phi} CZ|.
double phase_free_deviation(const Matrix4c &u, const Matrix4c &target);

struct ZDressing {
    double phi_1;
    double phi_2;
    double deviation;
};

/// Best (Rz(phi_1) x Rz(phi_2)) U against CZ.
ZDressing minimal_z_dressing(const Matrix4c &u);

struct CzVerification {
    double raw_deviation;
    ZDressing dressing;
};

CzVerification verify_cz_circuit();
double verify_cz_decomposition();

}  // namespace hybridbell

#endif

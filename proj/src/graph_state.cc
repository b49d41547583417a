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

#include "hybridbell/graph_state.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hybridbell/errors.h"

namespace hybridbell {

std::string QubitLabel::str() const {
    return (domain == Domain::Microwave ? "mw" : "opt") + std::to_string(block);
}

QubitLabel microwave(size_t block) {
    return {block, Domain::Microwave};
}

QubitLabel optical(size_t block) {
    return {block, Domain::Optical};
}

Graph::Graph(size_t n_vertices) : n_(n_vertices) {
}

Graph::Graph(size_t n_vertices, const std::vector<std::pair<size_t, size_t>> &edges) : n_(n_vertices) {
    for (auto [u, v] : edges) {
        add_edge(u, v);
    }
}

void Graph::add_edge(size_t u, size_t v) {
    if (u == v) {
        throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    }
    if (u >= n_ || v >= n_) {
        throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
    }
    std::pair<size_t, size_t> e{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) {
        edges_.insert(it, e);
    }
}

bool Graph::has_edge(size_t u, size_t v) const {
    std::pair<size_t, size_t> e{std::min(u, v), std::max(u, v)};
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<size_t> Graph::neighbors(size_t v) const {
    std::vector<size_t> out;
    for (auto [a, b] : edges_) {
        if (a == v) {
            out.push_back(b);
        } else if (b == v) {
            out.push_back(a);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Eigen::MatrixXi Graph::adjacency() const {
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero((Eigen::Index)n_, (Eigen::Index)n_);
    for (auto [u, v] : edges_) {
        a((Eigen::Index)u, (Eigen::Index)v) = 1;
        a((Eigen::Index)v, (Eigen::Index)u) = 1;
    }
    return a;
}

bool Graph::connected() const {
    if (n_ == 0) {
        return true;
    }
    std::vector<bool> seen(n_, false);
    std::vector<size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        size_t v = stack.back();
        stack.pop_back();
        for (size_t u : neighbors(v)) {
            if (!seen[u]) {
                seen[u] = true;
                stack.push_back(u);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

Graph Graph::ring(size_t n) {
    if (n < 3) {
        throw std::invalid_argument("a ring needs at least 3 vertices");
    }
    Graph g(n);
    for (size_t v = 0; v < n; v++) {
        g.add_edge(v, (v + 1) % n);
    }
    return g;
}

Graph Graph::path(size_t n) {
    Graph g(n);
    for (size_t v = 0; v + 1 < n; v++) {
        g.add_edge(v, v + 1);
    }
    return g;
}

Graph Graph::complete(size_t n) {
    Graph g(n);
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            g.add_edge(u, v);
        }
    }
    return g;
}

Graph Graph::star(size_t n) {
    Graph g(n);
    for (size_t v = 1; v < n; v++) {
        g.add_edge(0, v);
    }
    return g;
}

Graph Graph::named(const std::string &spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("graph name must look like ring:6");
    }
    std::string kind = spec.substr(0, colon);
    std::string count = spec.substr(colon + 1);
    size_t n = 0;
    try {
        size_t used = 0;
        n = std::stoul(count, &used);
        if (used != count.size()) {
            throw std::invalid_argument(count);
        }
    } catch (const std::exception &) {
        throw std::invalid_argument("bad vertex count in graph name '" + spec + "'");
    }
    if (kind == "ring") {
        return ring(n);
    }
    if (kind == "path") {
        return path(n);
    }
    if (kind == "complete") {
        return complete(n);
    }
    if (kind == "star") {
        return star(n);
    }
    throw std::invalid_argument("unknown graph family '" + kind + "'");
}

Graph read_edge_list(std::istream &in, size_t n_vertices) {
    std::vector<std::pair<size_t, size_t>> edges;
    std::string line;
    size_t line_no = 0;
    size_t n = n_vertices;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream ss(line);
        long long u;
        long long v;
        std::string rest;
        if (!(ss >> u >> v) || (ss >> rest) || u < 0 || v < 0) {
            throw std::invalid_argument("edge list line " + std::to_string(line_no) + ": expected 'u v'");
        }
        edges.emplace_back((size_t)u, (size_t)v);
        n = std::max(n, (size_t)std::max(u, v) + 1);
    }
    return Graph(n, edges);
}

void write_edge_list(const Graph &g, std::ostream &out) {
    for (auto [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
}

bool PauliString::is_identity() const {
    for (size_t q = 0; q < size(); q++) {
        if (x[q] || z[q]) {
            return false;
        }
    }
    return true;
}

std::string PauliString::str() const {
    std::string s(1, negative ? '-' : '+');
    for (size_t q = 0; q < size(); q++) {
        s += "_XZY"[x[q] + 2 * z[q]];
    }
    return s;
}

PauliString PauliString::single(size_t n, size_t q, char pauli) {
    PauliString p{std::vector<uint8_t>(n, 0), std::vector<uint8_t>(n, 0), false};
    if (q >= n) {
        throw std::out_of_range("qubit index out of range");
    }
    switch (pauli) {
        case 'X':
            p.x[q] = 1;
            break;
        case 'Y':
            p.x[q] = 1;
            p.z[q] = 1;
            break;
        case 'Z':
            p.z[q] = 1;
            break;
        case 'I':
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli '") + pauli + "'");
    }
    return p;
}

bool commute(const PauliString &a, const PauliString &b) {
    int s = 0;
    for (size_t q = 0; q < a.size(); q++) {
        s ^= (a.x[q] & b.z[q]) ^ (a.z[q] & b.x[q]);
    }
    return s == 0;
}

namespace {

// Power of i picked up on one qubit when multiplying Pauli (x1, z1) by (x2, z2).
int phase_exponent(int x1, int z1, int x2, int z2) {
    if (x1 == 0 && z1 == 0) {
        return 0;
    }
    if (x1 == 1 && z1 == 1) {
        return z2 - x2;
    }
    if (x1 == 1) {
        return z2 * (2 * x2 - 1);
    }
    return x2 * (1 - 2 * z2);
}

// target <- source * target for commuting Hermitian Paulis.
void multiply_into(PauliString &target, const PauliString &source) {
    int e = 2 * (int)target.negative + 2 * (int)source.negative;
    for (size_t q = 0; q < target.size(); q++) {
        e += phase_exponent(source.x[q], source.z[q], target.x[q], target.z[q]);
        target.x[q] ^= source.x[q];
        target.z[q] ^= source.z[q];
    }
    e = ((e % 4) + 4) % 4;
    if (e % 2 != 0) {
        throw InternalConsistencyError("product of anticommuting stabilizer rows");
    }
    target.negative = e == 2;
}

// GF(2) rank of the rows' (x | z) bit vectors.
size_t symplectic_rank(const std::vector<PauliString> &rows) {
    if (rows.empty()) {
        return 0;
    }
    size_t n = rows[0].size();
    std::vector<std::vector<uint8_t>> m;
    for (const auto &r : rows) {
        std::vector<uint8_t> v(r.x);
        v.insert(v.end(), r.z.begin(), r.z.end());
        m.push_back(std::move(v));
    }
    size_t rank = 0;
    for (size_t col = 0; col < 2 * n && rank < m.size(); col++) {
        size_t pivot = rank;
        while (pivot < m.size() && !m[pivot][col]) {
            pivot++;
        }
        if (pivot == m.size()) {
            continue;
        }
        std::swap(m[rank], m[pivot]);
        for (size_t r = 0; r < m.size(); r++) {
            if (r != rank && m[r][col]) {
                for (size_t c = 0; c < 2 * n; c++) {
                    m[r][c] ^= m[rank][c];
                }
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace

StabilizerTableau::StabilizerTableau(std::vector<PauliString> rows, std::vector<QubitLabel> labels)
    : rows_(std::move(rows)), labels_(std::move(labels)) {
    for (const auto &r : rows_) {
        if (r.size() != labels_.size()) {
            throw std::invalid_argument("stabilizer row length does not match the qubit count");
        }
    }
    if (rows_.size() != labels_.size()) {
        throw std::invalid_argument("a stabilizer tableau needs one generator per qubit");
    }
}

size_t StabilizerTableau::index_of(const QubitLabel &q) const {
    for (size_t k = 0; k < labels_.size(); k++) {
        if (labels_[k] == q) {
            return k;
        }
    }
    throw std::out_of_range("qubit " + q.str() + " not in tableau");
}

bool StabilizerTableau::valid() const {
    for (size_t a = 0; a < rows_.size(); a++) {
        for (size_t b = a + 1; b < rows_.size(); b++) {
            if (!commute(rows_[a], rows_[b])) {
                return false;
            }
        }
    }
    return symplectic_rank(rows_) == rows_.size();
}

void StabilizerTableau::h(size_t q) {
    for (auto &r : rows_) {
        r.negative ^= (r.x[q] & r.z[q]) != 0;
        std::swap(r.x[q], r.z[q]);
    }
}

void StabilizerTableau::cz(size_t a, size_t b) {
    if (a == b) {
        throw std::invalid_argument("CZ needs two distinct qubits");
    }
    for (auto &r : rows_) {
        r.negative ^= (r.x[a] & r.x[b] & (r.z[a] ^ r.z[b])) != 0;
        r.z[a] ^= r.x[b];
        r.z[b] ^= r.x[a];
    }
}

void StabilizerTableau::multiply_row(size_t target, size_t source) {
    multiply_into(rows_.at(target), rows_.at(source));
}

void StabilizerTableau::replace_row(size_t r, PauliString p) {
    if (p.size() != labels_.size()) {
        throw std::invalid_argument("replacement row has the wrong length");
    }
    rows_.at(r) = std::move(p);
}

StabilizerTableau prepare_blocks(size_t n_blocks) {
    if (n_blocks == 0) {
        throw std::invalid_argument("need at least one block");
    }
    size_t n = 2 * n_blocks;
    std::vector<QubitLabel> labels;
    std::vector<PauliString> rows;
    for (size_t b = 0; b < n_blocks; b++) {
        labels.push_back(microwave(b));
        labels.push_back(optical(b));
    }
    for (size_t b = 0; b < n_blocks; b++) {
        PauliString xx = PauliString::single(n, 2 * b, 'X');
        xx.x[2 * b + 1] = 1;
        PauliString zz = PauliString::single(n, 2 * b, 'Z');
        zz.z[2 * b + 1] = 1;
        rows.push_back(std::move(xx));
        rows.push_back(std::move(zz));
    }
    return StabilizerTableau(std::move(rows), std::move(labels));
}

StabilizerTableau apply_cz(const StabilizerTableau &t, const QubitLabel &a, const QubitLabel &b) {
    if (a == b) {
        throw std::invalid_argument("CZ on a single qubit " + a.str());
    }
    StabilizerTableau out = t;
    out.cz(t.index_of(a), t.index_of(b));
    return out;
}

StabilizerTableau apply_h(const StabilizerTableau &t, const QubitLabel &q) {
    StabilizerTableau out = t;
    out.h(t.index_of(q));
    return out;
}

namespace {

// Solves for the stabilizer-group element equal to p up to sign; returns it with the correct sign.
PauliString express_in_group(const std::vector<PauliString> &rows, const PauliString &p) {
    size_t n = p.size();
    size_t m = rows.size();
    // Columns of the augmented system: 2n bit columns, plus m tracking bits per row.
    std::vector<std::vector<uint8_t>> a;
    for (size_t r = 0; r < m; r++) {
        std::vector<uint8_t> v(rows[r].x);
        v.insert(v.end(), rows[r].z.begin(), rows[r].z.end());
        v.resize(2 * n + m, 0);
        v[2 * n + r] = 1;
        a.push_back(std::move(v));
    }
    std::vector<uint8_t> target(p.x);
    target.insert(target.end(), p.z.begin(), p.z.end());
    target.resize(2 * n + m, 0);

    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < 2 * n && rank < m; col++) {
        size_t piv = rank;
        while (piv < m && !a[piv][col]) {
            piv++;
        }
        if (piv == m) {
            continue;
        }
        std::swap(a[rank], a[piv]);
        for (size_t r = 0; r < m; r++) {
            if (r != rank && a[r][col]) {
                for (size_t c = 0; c < a[r].size(); c++) {
                    a[r][c] ^= a[rank][c];
                }
            }
        }
        pivot_col.push_back(col);
        rank++;
    }
    for (size_t k = 0; k < rank; k++) {
        if (target[pivot_col[k]]) {
            for (size_t c = 0; c < target.size(); c++) {
                target[c] ^= a[k][c];
            }
        }
    }
    for (size_t c = 0; c < 2 * n; c++) {
        if (target[c]) {
            throw InternalConsistencyError("deterministic measurement operator is not in the stabilizer group");
        }
    }
    PauliString acc{std::vector<uint8_t>(n, 0), std::vector<uint8_t>(n, 0), false};
    for (size_t r = 0; r < m; r++) {
        if (target[2 * n + r]) {
            multiply_into(acc, rows[r]);
        }
    }
    return acc;
}

}  // namespace

MeasurementResult measure(const StabilizerTableau &t, const QubitLabel &q, Basis basis, uint64_t seed) {
    size_t k = t.index_of(q);
    size_t n = t.size();
    PauliString p = PauliString::single(n, k, basis == Basis::X ? 'X' : 'Z');

    const auto &rows = t.rows();
    std::vector<size_t> anti;
    for (size_t r = 0; r < rows.size(); r++) {
        if (!commute(rows[r], p)) {
            anti.push_back(r);
        }
    }
    PauliString identity{std::vector<uint8_t>(n, 0), std::vector<uint8_t>(n, 0), false};
    if (anti.empty()) {
        PauliString element = express_in_group(rows, p);
        return {element.negative ? -1 : +1, true, identity, t};
    }
    StabilizerTableau out = t;
    size_t lead = anti.front();
    for (size_t j = 1; j < anti.size(); j++) {
        out.multiply_row(anti[j], lead);
    }
    PauliString flip = out.rows()[lead];
    flip.x[k] = 0;
    flip.z[k] = 0;
    flip.negative = false;
    std::mt19937_64 rng(seed);
    bool minus = (rng() >> 63) != 0;
    p.negative = minus;
    out.replace_row(lead, p);
    return {minus ? -1 : +1, false, minus ? flip : identity, std::move(out)};
}

StabilizerTableau build_hybrid_graph(const Graph &g) {
    StabilizerTableau t = prepare_blocks(std::max<size_t>(g.size(), 1));
    for (auto [u, v] : g.edges()) {
        t.cz(microwave(u).index(), microwave(v).index());
    }
    return t;
}

uint64_t split_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ExtractionResult extract_optical(const StabilizerTableau &t, uint64_t seed) {
    std::vector<size_t> mw_qubits;
    std::vector<size_t> opt_qubits;
    for (size_t k = 0; k < t.size(); k++) {
        (t.labels()[k].domain == Domain::Microwave ? mw_qubits : opt_qubits).push_back(k);
    }
    StabilizerTableau cur = t;
    std::vector<int> outcomes;
    for (size_t j = 0; j < mw_qubits.size(); j++) {
        MeasurementResult m = measure(cur, cur.labels()[mw_qubits[j]], Basis::X, split_seed(seed, j));
        outcomes.push_back(m.outcome);
        cur = std::move(m.tableau);
    }

    // Strip the known X_mw factors so every generator lives on the optical qubits.
    std::vector<PauliString> rows = cur.rows();
    for (size_t j = 0; j < mw_qubits.size(); j++) {
        PauliString xq = PauliString::single(t.size(), mw_qubits[j], 'X');
        xq.negative = outcomes[j] < 0;
        for (auto &r : rows) {
            if (r.z[mw_qubits[j]]) {
                throw InternalConsistencyError("generator anticommutes with a measured X");
            }
            if (r.x[mw_qubits[j]]) {
                multiply_into(r, xq);
            }
        }
    }
    size_t m = opt_qubits.size();
    std::vector<PauliString> opt_rows;
    for (const auto &r : rows) {
        PauliString o{std::vector<uint8_t>(m), std::vector<uint8_t>(m), r.negative};
        for (size_t v = 0; v < m; v++) {
            o.x[v] = r.x[opt_qubits[v]];
            o.z[v] = r.z[opt_qubits[v]];
        }
        opt_rows.push_back(std::move(o));
    }

    // Reduced row echelon form on the X block, lowest qubit index first.
    size_t rank = 0;
    for (size_t col = 0; col < m; col++) {
        size_t piv = rank;
        while (piv < opt_rows.size() && !opt_rows[piv].x[col]) {
            piv++;
        }
        if (piv == opt_rows.size()) {
            throw InternalConsistencyError("optical X block is singular; residual state is not in graph form");
        }
        std::swap(opt_rows[rank], opt_rows[piv]);
        for (size_t r = 0; r < opt_rows.size(); r++) {
            if (r != rank && opt_rows[r].x[col]) {
                multiply_into(opt_rows[r], opt_rows[rank]);
            }
        }
        rank++;
    }
    for (size_t r = m; r < opt_rows.size(); r++) {
        if (!opt_rows[r].is_identity() || opt_rows[r].negative) {
            throw InternalConsistencyError("leftover generator after optical reduction");
        }
    }
    opt_rows.resize(m);

    ExtractionResult out{Graph(m), {}, outcomes, prepare_blocks(1)};
    std::vector<QubitLabel> labels;
    for (size_t v = 0; v < m; v++) {
        labels.push_back(t.labels()[opt_qubits[v]]);
        if (opt_rows[v].z[v]) {
            throw InternalConsistencyError("graph-form generator has Z on its own vertex");
        }
        for (size_t u = 0; u < m; u++) {
            if (opt_rows[v].z[u] != opt_rows[u].z[v]) {
                throw InternalConsistencyError("graph-form Z block is not symmetric");
            }
            if (u > v && opt_rows[v].z[u]) {
                out.graph.add_edge(v, u);
            }
        }
        if (opt_rows[v].negative) {
            out.corrections.push_back({labels.back().block, 'Z'});
        }
    }
    out.optical_tableau = StabilizerTableau(std::move(opt_rows), std::move(labels));
    return out;
}

void write_corrections_csv(const std::vector<PauliCorrection> &corrections, std::ostream &out) {
    out << "qubit,pauli\n";
    for (const auto &c : corrections) {
        out << c.qubit << ',' << c.pauli << '\n';
    }
}

EffectiveCoupling effective_coupling(double g_c, double g_12, double delta, double e_c_over_hbar) {
    double d2 = delta * delta;
    double e2 = e_c_over_hbar * e_c_over_hbar;
    double scale = std::max({d2, e2, 1e-300});
    if (d2 == 0 || std::abs(d2 - e2) <= 1e-12 * scale) {
        throw std::domain_error("effective coupling is singular at Delta = 0 or Delta^2 = E_C^2");
    }
    return {2 * g_12 * (1 + 6 * g_c * g_c / d2), -4 * g_c * g_c * e_c_over_hbar / (d2 - e2)};
}

double xx_gate_time(double g_xx) {
    if (g_xx == 0) {
        throw std::domain_error("g_XX = 0 never accumulates a rotation");
    }
    return (M_PI / 4) / std::abs(g_xx);
}

Matrix4c sqrt_iswap() {
    using cd = std::complex<double>;
    double h = 1 / std::sqrt(2.0);
    Matrix4c u = Matrix4c::Zero();
    u(0, 0) = 1;
    u(3, 3) = 1;
    u(1, 1) = h;
    u(2, 2) = h;
    u(1, 2) = cd(0, h);
    u(2, 1) = cd(0, h);
    return u;
}

Matrix2c rotation(char axis, double theta) {
    using cd = std::complex<double>;
    Matrix2c sigma;
    switch (axis) {
        case 'X':
            sigma << 0, 1, 1, 0;
            break;
        case 'Y':
            sigma << 0, cd(0, -1), cd(0, 1), 0;
            break;
        case 'Z':
            sigma << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument(std::string("unknown rotation axis '") + axis + "'");
    }
    return std::cos(theta / 2) * Matrix2c::Identity() - cd(0, std::sin(theta / 2)) * sigma;
}

Matrix4c cz_gate() {
    Matrix4c u = Matrix4c::Identity();
    u(3, 3) = -1;
    return u;
}

namespace {

Matrix4c kron(const Matrix2c &a, const Matrix2c &b) {
    Matrix4c out;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

double max_abs(const Matrix4c &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

Matrix4c cz_circuit_unitary(int drop_swap) {
    Matrix2c id = Matrix2c::Identity();
    Matrix2c x;
    x << 0, 1, 1, 0;
    Matrix2c h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Matrix4c swap0 = drop_swap == 0 ? Matrix4c::Identity() : sqrt_iswap();
    Matrix4c swap1 = drop_swap == 1 ? Matrix4c::Identity() : sqrt_iswap();
    // Time order, logical qubit 1 on the left tensor factor.
    std::vector<Matrix4c> steps{
        kron(x, h),
        kron(rotation('Y', M_PI / 2), id),
        swap0,
        kron(x, id),
        swap1,
        kron(rotation('X', -M_PI / 2), rotation('X', -M_PI / 2)),
        kron(rotation('Y', -M_PI / 2), id),
        kron(x, h),
    };
    Matrix4c u = Matrix4c::Identity();
    for (const auto &s : steps) {
        u = s * u;
    }
    return u;
}

double phase_free_deviation(const Matrix4c &u, const Matrix4c &target) {
    auto dev = [&](double phi) { return max_abs(u - std::polar(1.0, phi) * target); };
    double phi0 = std::arg((target.adjoint() * u).trace());
    double best = dev(phi0);
    double a = phi0 - 0.5;
    double b = phi0 + 0.5;
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = dev(c);
    double fd = dev(d);
    for (int it = 0; it < 100; it++) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = dev(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = dev(d);
        }
    }
    return std::min({best, fc, fd});
}

ZDressing minimal_z_dressing(const Matrix4c &u) {
    Matrix4c cz = cz_gate();
    auto dev = [&](double p1, double p2) {
        return phase_free_deviation(kron(rotation('Z', p1), rotation('Z', p2)) * u, cz);
    };
    constexpr int kGrid = 48;
    double step = 2 * M_PI / kGrid;
    ZDressing best{0, 0, dev(0, 0)};
    for (int i = 0; i < kGrid; i++) {
        for (int j = 0; j < kGrid; j++) {
            double d = dev(i * step, j * step);
            if (d < best.deviation) {
                best = {i * step, j * step, d};
            }
        }
    }
    // Coordinate refinement with a shrinking bracket.
    double span = step;
    for (int round = 0; round < 60 && best.deviation > 1e-13; round++) {
        for (int axis = 0; axis < 2; axis++) {
            for (double sgn : {-1.0, 1.0}) {
                ZDressing trial = best;
                (axis == 0 ? trial.phi_1 : trial.phi_2) += sgn * span;
                trial.deviation = dev(trial.phi_1, trial.phi_2);
                if (trial.deviation < best.deviation) {
                    best = trial;
                }
            }
        }
        span *= 0.7;
    }
    return best;
}

CzVerification verify_cz_circuit() {
    Matrix4c u = cz_circuit_unitary();
    return {phase_free_deviation(u, cz_gate()), minimal_z_dressing(u)};
}

double verify_cz_decomposition() {
    return phase_free_deviation(cz_circuit_unitary(), cz_gate());
}

}  // namespace hybridbell

#pragma once

// Test-side reference helpers. Nothing here calls into the library's
// execution paths, so tests can check the library against them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "pimsim/circuit.hpp"
#include "pimsim/gauss_int.hpp"

namespace testsupport {

using pimsim::Complex;
using pimsim::GateKind;
using pimsim::GaussInt;

inline bool bit(std::size_t x, unsigned q) { return (x >> q) & 1; }

// Image of basis index j under a permutation gate, from its truth table.
inline std::size_t permute_index(GateKind kind, const std::vector<pimsim::Qubit>& q, std::size_t j) {
    switch (kind) {
        case GateKind::X: return j ^ (std::size_t{1} << q[0]);
        case GateKind::CNOT: return bit(j, q[0]) ? j ^ (std::size_t{1} << q[1]) : j;
        case GateKind::SWAP:
            return bit(j, q[0]) == bit(j, q[1]) ? j : j ^ (std::size_t{1} << q[0]) ^ (std::size_t{1} << q[1]);
        case GateKind::CCX: return bit(j, q[0]) && bit(j, q[1]) ? j ^ (std::size_t{1} << q[2]) : j;
        default: throw std::logic_error("not a permutation gate");
    }
}

// Full 2^n x 2^n 0/1 matrix of a permutation gate, column j has its 1 in row image(j).
inline std::vector<std::vector<int>> dense_permutation(GateKind kind, const std::vector<pimsim::Qubit>& q,
                                                       std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::vector<int>> m(dim, std::vector<int>(dim, 0));
    for (std::size_t j = 0; j < dim; ++j) m[permute_index(kind, q, j)][j] = 1;
    return m;
}

inline std::vector<GaussInt> mat_vec(const std::vector<std::vector<int>>& m, const std::vector<GaussInt>& v) {
    std::vector<GaussInt> out(v.size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c)
            if (m[r][c]) out[r] = out[r] + v[c] * GaussInt(m[r][c]);
    return out;
}

// Embeds a gate-sized unitary (operands[0] most significant local bit) into
// the full 2^n space by explicit index arithmetic.
inline std::vector<std::vector<Complex>> embed(const pimsim::ComplexMatrix& g, const std::vector<pimsim::Qubit>& q,
                                               std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t k = q.size();
    std::vector<std::vector<Complex>> m(dim, std::vector<Complex>(dim, 0.0));
    auto local = [&](std::size_t j) {
        std::size_t l = 0;
        for (std::size_t t = 0; t < k; ++t) l = (l << 1) | bit(j, q[t]);
        return l;
    };
    std::size_t mask = 0;
    for (auto x : q) mask |= std::size_t{1} << x;
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if ((r & ~mask) == (c & ~mask)) m[r][c] = g.at(local(r), local(c));
    return m;
}

// Dense reference simulation: multiply full matrices onto |0...0>.
inline std::vector<Complex> dense_simulate(const pimsim::CircuitIR& c) {
    const std::size_t dim = std::size_t{1} << c.n_qubits;
    std::vector<Complex> v(dim, 0.0);
    v[0] = 1;
    for (const auto& op : c.ops) {
        const auto m = embed(pimsim::gate_unitary(op.gate), op.qubits, c.n_qubits);
        std::vector<Complex> w(dim, 0.0);
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t col = 0; col < dim; ++col) w[r] += m[r][col] * v[col];
        v = std::move(w);
    }
    return v;
}

inline double max_dev(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Random circuit over the exact-representable catalog (no T/Tdg).
inline pimsim::CircuitIR random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t gates,
                                        const std::vector<GateKind>& kinds) {
    pimsim::CircuitIR c;
    c.n_qubits = n;
    const auto angles = pimsim::all_angles();
    for (std::size_t g = 0; g < gates; ++g) {
        GateKind kind;
        do {
            kind = kinds[rng() % kinds.size()];
        } while (pimsim::gate_arity(kind) > n);
        std::vector<pimsim::Qubit> qs;
        while (qs.size() < pimsim::gate_arity(kind)) {
            const auto q = static_cast<pimsim::Qubit>(rng() % n);
            if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
        }
        std::optional<pimsim::Angle> angle;
        if (pimsim::is_rotation(kind)) angle = angles[rng() % angles.size()];
        c.add(kind, qs, angle);
    }
    return c;
}

inline const std::vector<GateKind>& exact_kinds() {
    static const std::vector<GateKind> k = {GateKind::H,  GateKind::X,    GateKind::Y,    GateKind::Z,
                                            GateKind::S,  GateKind::Sdg,  GateKind::RX,   GateKind::RY,
                                            GateKind::RZ, GateKind::CNOT, GateKind::CZ,   GateKind::SWAP,
                                            GateKind::CCX};
    return k;
}

}  // namespace testsupport

#include "pimsim/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace pimsim {

double FloatState::norm_squared() const {
    double s = 0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

FloatState zero_state(std::size_t n_qubits, std::size_t max_qubits) {
    if (n_qubits == 0) throw InvalidArgument("state needs at least one qubit");
    if (n_qubits > max_qubits)
        throw CapacityError("oracle: " + std::to_string(n_qubits) + " qubits exceed the host budget of " +
                            std::to_string(max_qubits));
    FloatState s;
    s.n_qubits = n_qubits;
    s.amps.assign(std::size_t{1} << n_qubits, Complex{0, 0});
    s.amps[0] = 1;
    return s;
}

void apply_matrix(FloatState& state, const ComplexMatrix& m, const std::vector<Qubit>& qubits) {
    const std::size_t k = qubits.size();
    if (m.dim != (std::size_t{1} << k)) throw InvalidArgument("apply_matrix: matrix size does not match operands");
    std::size_t mask = 0;
    for (Qubit q : qubits) {
        if (q >= state.n_qubits) throw InvalidArgument("apply_matrix: qubit out of range");
        mask |= std::size_t{1} << q;
    }
    // offset of local basis index l within a block
    std::vector<std::size_t> offset(m.dim, 0);
    for (std::size_t l = 0; l < m.dim; ++l)
        for (std::size_t i = 0; i < k; ++i)
            if ((l >> (k - 1 - i)) & 1) offset[l] |= std::size_t{1} << qubits[i];

    std::vector<Complex> in(m.dim);
    for (std::size_t base = 0; base < state.dim(); ++base) {
        if (base & mask) continue;
        for (std::size_t l = 0; l < m.dim; ++l) in[l] = state.amps[base | offset[l]];
        for (std::size_t r = 0; r < m.dim; ++r) {
            Complex acc{0, 0};
            for (std::size_t c = 0; c < m.dim; ++c) acc += m.at(r, c) * in[c];
            state.amps[base | offset[r]] = acc;
        }
    }
}

FloatState simulate(const CircuitIR& circuit, std::size_t max_qubits) {
    const auto violations = validate(circuit);
    if (!violations.empty()) throw InvalidArgument("oracle: invalid circuit: " + violations.front().reason);
    FloatState s = zero_state(circuit.n_qubits, max_qubits);
    for (const auto& op : circuit.ops) apply_matrix(s, gate_unitary(op.gate), op.qubits);
    return s;
}

Comparison compare(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
    if (a.size() != b.size())
        throw InvalidArgument("compare: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
    Comparison c;
    for (std::size_t j = 0; j < a.size(); ++j) c.max_deviation = std::max(c.max_deviation, std::abs(a[j] - b[j]));
    c.pass = c.max_deviation <= tol;
    return c;
}

Comparison compare(const FloatState& a, const FloatState& b, double tol) { return compare(a.amps, b.amps, tol); }

Comparison compare(const QState& a, const FloatState& b, double tol) { return compare(amplitudes(a), b.amps, tol); }

Comparison compare(const QState& a, const QState& b, double tol) {
    if (a.dim() != b.dim()) return compare(amplitudes(a), amplitudes(b), tol);
    if (amplitudes_equal(a, b)) return {0.0, tol >= 0};
    return compare(amplitudes(a), amplitudes(b), tol);
}

}  // namespace pimsim

#pragma once

#include <cstddef>
#include <vector>

#include "pimsim/circuit.hpp"
#include "pimsim/intstate.hpp"

namespace pimsim {

/// Dense double-precision state; qubit 0 is the least significant index bit.
struct FloatState {
    std::size_t n_qubits = 0;
    std::vector<Complex> amps;

    [[nodiscard]] std::size_t dim() const { return amps.size(); }
    [[nodiscard]] double norm_squared() const;
};

FloatState zero_state(std::size_t n_qubits, std::size_t max_qubits = 26);

/// Applies a gate-sized matrix to the listed qubits (qubits[0] is the most
/// significant local bit) by strided update over the 2^n / dim blocks.
void apply_matrix(FloatState& state, const ComplexMatrix& m, const std::vector<Qubit>& qubits);

/// Reference simulation from |0...0>. Throws InvalidArgument on an invalid
/// circuit and CapacityError above max_qubits.
FloatState simulate(const CircuitIR& circuit, std::size_t max_qubits = 26);

struct Comparison {
    double max_deviation = 0;
    bool pass = false;
};

/// Direct elementwise comparison (no global-phase freedom). Throws
/// InvalidArgument on a dimension mismatch.
Comparison compare(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol);
Comparison compare(const FloatState& a, const FloatState& b, double tol);
Comparison compare(const QState& a, const FloatState& b, double tol);
Comparison compare(const QState& a, const QState& b, double tol);

}  // namespace pimsim

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pimsim/circuit.hpp"
#include "pimsim/int_matrix.hpp"

namespace pimsim {

/// Exact integer matrix application; operands live in the matrix.
struct IntMatrixApply {
    IntGateMatrix matrix;
    friend bool operator==(const IntMatrixApply&, const IntMatrixApply&) = default;
};

/// Basis relabeling on the operand qubits. `image[c]` is where local basis
/// state c goes; operands[0] is the most significant local bit.
struct PermApply {
    std::optional<GateKind> kind;  // set when the permutation is a catalog gate
    std::vector<Qubit> qubits;
    std::vector<std::uint8_t> image;
    friend bool operator==(const PermApply&, const PermApply&) = default;
};

/// Gate executed through software-emulated floating point.
struct FloatEmuApply {
    Gate gate;
    std::vector<Qubit> qubits;
    friend bool operator==(const FloatEmuApply&, const FloatEmuApply&) = default;
};

using ProgramStep = std::variant<IntMatrixApply, PermApply, FloatEmuApply>;

PermApply make_perm(GateKind kind, std::vector<Qubit> qubits);

const std::vector<Qubit>& step_qubits(const ProgramStep& step);
ComplexMatrix step_unitary(const ProgramStep& step);
/// sqrt(2) exponent the step adds to the state denominator.
unsigned step_half_shift(const ProgramStep& step);

/// Bytes a step occupies when shipped to a DPU: an 8-byte header, 4 bytes per
/// operand, then 16 bytes per matrix entry or 1 byte per permutation entry.
std::size_t payload_bytes(const ProgramStep& step);

struct ProgramStats {
    std::size_t int_matrix_steps = 0;
    std::size_t perm_steps = 0;
    std::size_t float_emu_steps = 0;
    std::size_t merged_pairs = 0;        // 1-qubit blocks paired by tensor product
    std::size_t fused_gates = 0;         // source gates absorbed into multi-gate blocks
    std::size_t identities_dropped = 0;  // fused blocks that collapsed to I
    std::size_t odd_residual = 0;        // matrix steps left with odd half-shift
    std::size_t permutations_lowered = 0;
    std::size_t total_half_shift = 0;

    friend bool operator==(const ProgramStats&, const ProgramStats&) = default;
};

struct LoweredProgram {
    std::size_t n_qubits = 0;
    std::vector<ProgramStep> steps;
    unsigned scale_k = 0;
    ProgramStats stats;

    /// Recomputes the per-variant counters, odd_residual and total_half_shift
    /// from the steps; pass-specific counters are left alone.
    void recount();
    [[nodiscard]] std::size_t payload_bytes() const;
};

}  // namespace pimsim

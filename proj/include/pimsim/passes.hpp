#pragma once

#include <cstddef>
#include <vector>

#include "pimsim/circuit.hpp"
#include "pimsim/dpu_config.hpp"
#include "pimsim/program.hpp"

namespace pimsim {

/// Naive lowering: every gate becomes a FloatEmuApply (matrix-vector product
/// in emulated floating point). This is the "no passes" program.
LoweredProgram lower_naive(const CircuitIR& circuit);

/// Gate merging.
///
/// Runs of 1-qubit gates on the same qubit (no op touching that qubit in
/// between) fuse into one exact integer matrix. Blocks left with an odd
/// sqrt(2) exponent pair up by tensor product with another odd block on a
/// different qubit when both can be placed at the same point of the circuit,
/// giving a 4x4 matrix whose denominator is a power of two. Multi-qubit gates
/// become d = 0 integer matrices. T and Tdg that no neighbour absorbs stay as
/// FloatEmuApply. Nothing is commuted past an op on the same qubit.
LoweredProgram merge_gates(const CircuitIR& circuit);

/// Row swapping: every step whose unitary is a 0/1 permutation becomes a
/// PermApply. Idempotent.
LoweredProgram lower_permutations(const LoweredProgram& program);

/// Minimal quantization exponent k of the program: with the initial amplitude
/// scaled to 2^k, the even part of every prefix denominator is realizable by
/// exact right shifts. Throws CapacityError above max_qubits.
unsigned quantize_program(const LoweredProgram& program, std::size_t max_qubits = 20);

/// quantize_program(lower_permutations(merge_gates(circuit))).
unsigned quantize(const CircuitIR& circuit, std::size_t max_qubits = 20);

struct Component {
    /// Global qubits in ascending order; local qubit i is qubits[i].
    std::vector<Qubit> qubits;
    CircuitIR circuit;
};

struct PartitionPlan {
    std::size_t n_qubits = 0;
    std::vector<Component> components;
    /// DPU id per component; empty until pack().
    std::vector<std::size_t> assignment;
    std::size_t num_dpus = 0;

    [[nodiscard]] bool assigned() const { return assignment.size() == components.size() && !components.empty(); }
    [[nodiscard]] std::size_t dpus_used() const;
};

/// Connected components of the qubit interaction graph, ordered by their
/// lowest qubit. Each component carries the source ops restricted to it.
PartitionPlan partition(const CircuitIR& circuit);

/// The whole circuit as a single component (no vector partitioning).
PartitionPlan whole_plan(const CircuitIR& circuit);

/// Assigns components to DPUs, largest state first, each to the least-loaded
/// DPU that still has room (ties: lowest id). Throws CapacityError when a
/// component alone exceeds MRAM or the components do not fit num_dpus DPUs.
PartitionPlan pack(PartitionPlan plan, std::size_t num_dpus, const DpuConfig& cfg);

}  // namespace pimsim

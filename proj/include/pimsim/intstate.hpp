#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "pimsim/gauss_int.hpp"
#include "pimsim/program.hpp"

namespace pimsim {

/// Kernel operation counters. Native counters cover the DPU's integer
/// whitelist; emulated_float_ops, muls and divs are only ever charged by
/// FloatEmuApply steps.
struct KernelLedger {
    std::uint64_t adds = 0;
    std::uint64_t subs = 0;
    std::uint64_t negs = 0;
    std::uint64_t reim_swaps = 0;
    std::uint64_t shifts = 0;
    std::uint64_t element_swaps = 0;
    std::uint64_t emulated_float_ops = 0;
    std::uint64_t muls = 0;
    std::uint64_t divs = 0;
    std::uint64_t bytes_touched = 0;

    [[nodiscard]] std::uint64_t native_ops() const {
        return adds + subs + negs + reim_swaps + shifts + element_swaps;
    }

    KernelLedger& operator+=(const KernelLedger& o);
    friend bool operator==(const KernelLedger&, const KernelLedger&) = default;
};

/// Integer state vector. Amplitude j is nums[j] / (2^scale_k * sqrt(2)^half_shift);
/// qubit 0 is the least significant bit of j.
struct QState {
    std::size_t n_qubits = 0;
    std::vector<GaussInt> nums;
    unsigned half_shift = 0;
    unsigned scale_k = 0;

    [[nodiscard]] std::size_t dim() const { return nums.size(); }
};

/// |0...0> with numerator 2^scale_k. Throws CapacityError when n exceeds
/// max_qubits and InvalidArgument for n == 0.
QState init_state(std::size_t n_qubits, unsigned scale_k, std::size_t max_qubits = 26);

void apply_int_matrix(QState& state, const IntGateMatrix& m, KernelLedger& ledger);
void apply_permutation(QState& state, const PermApply& p, KernelLedger& ledger);
/// Same result as the exact path, charged as software floating point.
void apply_float_emu(QState& state, const FloatEmuApply& g, KernelLedger& ledger);
void apply_step(QState& state, const ProgramStep& step, KernelLedger& ledger);

/// Halves every numerator and lowers half_shift by 2 while all numerators are
/// even and half_shift >= 2. Charges two shifts per amplitude per halving when
/// a ledger is given.
void canonicalize(QState& state, KernelLedger* ledger = nullptr);

using StepObserver = std::function<void(std::size_t step_index, const QState& state)>;

void run_program(QState& state, const LoweredProgram& program, KernelLedger& ledger,
                 const StepObserver& observer = {});

/// sum |nums|^2 == 4^scale_k * 2^half_shift, exactly.
bool normalization_holds(const QState& state);

std::vector<DyadicRational> probabilities(const QState& state);

Complex amplitude(const QState& state, std::size_t index);
std::vector<Complex> amplitudes(const QState& state);

/// Exact equality of the represented amplitude vectors, independent of how
/// each state splits its denominator.
bool amplitudes_equal(const QState& a, const QState& b);

}  // namespace pimsim

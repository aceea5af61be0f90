#include "pimsim/intstate.hpp"

#include <array>
#include <cmath>

namespace pimsim {

namespace {

constexpr std::size_t kMaxLocalDim = 8;

// Global index offset of each local basis state; operands[0] is the most
// significant local bit.
std::array<std::size_t, kMaxLocalDim> local_offsets(const std::vector<Qubit>& operands, std::size_t& mask) {
    std::array<std::size_t, kMaxLocalDim> off{};
    const std::size_t k = operands.size();
    mask = 0;
    for (Qubit q : operands) mask |= std::size_t{1} << q;
    for (std::size_t l = 0; l < (std::size_t{1} << k); ++l) {
        std::size_t o = 0;
        for (std::size_t t = 0; t < k; ++t)
            if ((l >> (k - 1 - t)) & 1) o |= std::size_t{1} << operands[t];
        off[l] = o;
    }
    return off;
}

void check_operands(const QState& state, const std::vector<Qubit>& operands, std::size_t expected_dim) {
    if (operands.empty() || operands.size() > 3 || (std::size_t{1} << operands.size()) != expected_dim)
        throw InvalidArgument("operand count does not match gate dimension");
    std::size_t seen = 0;
    for (Qubit q : operands) {
        if (q >= state.n_qubits) throw InvalidArgument("operand out of range");
        if (seen & (std::size_t{1} << q)) throw InvalidArgument("duplicate operand");
        seen |= std::size_t{1} << q;
    }
}

// Visits the base index of every group of amplitudes the operands couple.
template <class F>
void for_each_group(std::size_t dim, std::size_t mask, F&& f) {
    for (std::size_t base = 0; base < dim; ++base)
        if ((base & mask) == 0) f(base);
}

// acc (+)= coeff * v using shifts, adds and negation only.
void accumulate_scaled(GaussInt& acc, bool& empty, std::int64_t coeff, const GaussInt& v, KernelLedger& ledger) {
    if (coeff == 0) return;
    const bool negative = coeff < 0;
    auto mag = static_cast<std::uint64_t>(negative ? -static_cast<__int128>(coeff) : coeff);
    GaussInt prod;
    bool have = false;
    for (unsigned bit = 0; mag != 0; ++bit, mag >>= 1) {
        if ((mag & 1) == 0) continue;
        GaussInt term = v;
        if (bit > 0) {
            term = v.shl(bit);
            ledger.shifts += 2;
        }
        if (have) {
            prod += term;
            ledger.adds += 2;
        } else {
            prod = term;
            have = true;
        }
    }
    if (empty) {
        if (negative) {
            acc = -prod;
            ledger.negs += 2;
        } else {
            acc = prod;
        }
        empty = false;
    } else if (negative) {
        acc -= prod;
        ledger.subs += 2;
    } else {
        acc += prod;
        ledger.adds += 2;
    }
}

void apply_matrix_kernel(QState& state, const IntGateMatrix& m, KernelLedger& ledger) {
    std::size_t mask = 0;
    const auto off = local_offsets(m.operands, mask);
    const std::size_t d = m.dim;
    std::array<GaussInt, kMaxLocalDim> in{};
    std::array<GaussInt, kMaxLocalDim> out{};
    for_each_group(state.dim(), mask, [&](std::size_t base) {
        for (std::size_t l = 0; l < d; ++l) in[l] = state.nums[base + off[l]];
        for (std::size_t r = 0; r < d; ++r) {
            GaussInt acc;
            bool empty = true;
            for (std::size_t c = 0; c < d; ++c) {
                const GaussInt& e = m.at(r, c);
                if (e.is_zero()) continue;
                accumulate_scaled(acc, empty, e.re, in[c], ledger);
                if (e.im != 0) {
                    const GaussInt rotated = in[c].times_i();
                    ledger.reim_swaps += 1;
                    ledger.negs += 1;
                    accumulate_scaled(acc, empty, e.im, rotated, ledger);
                }
            }
            out[r] = acc;
        }
        for (std::size_t l = 0; l < d; ++l) state.nums[base + off[l]] = out[l];
        ledger.bytes_touched += 2 * 16 * d;
    });
    state.half_shift += m.half_shift;
}

void charge_float_emulation(const QState& state, std::size_t dim, unsigned half_shift, KernelLedger& ledger) {
    const std::uint64_t groups = state.dim() / dim;
    const std::uint64_t outputs = groups * dim;
    // Per output amplitude: dim complex multiplies (4 mul + 2 add), dim-1
    // complex adds, and a complex divide by sqrt(2)^d when d > 0.
    const std::uint64_t per_out = dim * 6 + (dim - 1) * 2 + (half_shift > 0 ? 2 : 0);
    ledger.emulated_float_ops += outputs * per_out;
    ledger.muls += outputs * dim * 4;
    ledger.divs += half_shift > 0 ? outputs * 2 : 0;
    ledger.bytes_touched += outputs * 2 * 16;
}

// T and Tdg: exact only when the operand qubit is not in superposition.
void apply_phase_eighth(QState& state, const FloatEmuApply& g) {
    const Qubit q = g.qubits.at(0);
    const std::size_t bit = std::size_t{1} << q;
    bool ones_zero = true, zeros_zero = true;
    for (std::size_t j = 0; j < state.dim(); ++j) {
        if (state.nums[j].is_zero()) continue;
        ((j & bit) ? ones_zero : zeros_zero) = false;
    }
    if (ones_zero) return;
    if (!zeros_zero)
        throw ContractViolation(std::string(gate_name(g.gate.kind)) +
                                " on a superposed qubit has no exact Gaussian-integer form");
    const GaussInt phase = g.gate.kind == GateKind::T ? GaussInt(1, 1) : GaussInt(1, -1);
    for (std::size_t j = 0; j < state.dim(); ++j)
        if (j & bit) state.nums[j] = state.nums[j] * phase;
    state.half_shift += 1;
}

}  // namespace

KernelLedger& KernelLedger::operator+=(const KernelLedger& o) {
    adds += o.adds;
    subs += o.subs;
    negs += o.negs;
    reim_swaps += o.reim_swaps;
    shifts += o.shifts;
    element_swaps += o.element_swaps;
    emulated_float_ops += o.emulated_float_ops;
    muls += o.muls;
    divs += o.divs;
    bytes_touched += o.bytes_touched;
    return *this;
}

QState init_state(std::size_t n_qubits, unsigned scale_k, std::size_t max_qubits) {
    if (n_qubits == 0) throw InvalidArgument("state needs at least one qubit");
    if (n_qubits > max_qubits)
        throw CapacityError(std::to_string(n_qubits) + "-qubit state exceeds host budget of " +
                            std::to_string(max_qubits) + " qubits");
    if (scale_k >= 62) throw OverflowError("quantization scale too large");
    QState s;
    s.n_qubits = n_qubits;
    s.nums.assign(std::size_t{1} << n_qubits, GaussInt{});
    s.nums[0] = GaussInt(std::int64_t{1} << scale_k);
    s.scale_k = scale_k;
    return s;
}

void canonicalize(QState& state, KernelLedger* ledger) {
    while (state.half_shift >= 2) {
        for (const auto& z : state.nums)
            if (!z.is_even()) return;
        for (auto& z : state.nums) z = z.shr(1);
        state.half_shift -= 2;
        if (ledger) ledger->shifts += 2 * state.nums.size();
    }
}

void apply_int_matrix(QState& state, const IntGateMatrix& m, KernelLedger& ledger) {
    check_operands(state, m.operands, m.dim);
    apply_matrix_kernel(state, m, ledger);
    canonicalize(state, &ledger);
}

void apply_permutation(QState& state, const PermApply& p, KernelLedger& ledger) {
    check_operands(state, p.qubits, p.image.size());
    std::size_t mask = 0;
    const auto off = local_offsets(p.qubits, mask);
    const std::size_t d = p.image.size();

    // Cycle decomposition: each cycle of length L costs L-1 element swaps.
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<bool> seen(d, false);
    for (std::size_t c = 0; c < d; ++c) {
        if (seen[c] || p.image[c] == c) continue;
        std::vector<std::size_t> cycle;
        for (std::size_t x = c; !seen[x]; x = p.image[x]) {
            seen[x] = true;
            cycle.push_back(x);
        }
        cycles.push_back(std::move(cycle));
    }
    if (cycles.empty()) return;

    for_each_group(state.dim(), mask, [&](std::size_t base) {
        for (const auto& cycle : cycles) {
            // Amplitude at cycle[i] moves to cycle[i+1], the last one wraps to cycle[0].
            for (std::size_t i = 1; i < cycle.size(); ++i) {
                std::swap(state.nums[base + off[cycle[0]]], state.nums[base + off[cycle[i]]]);
                ledger.element_swaps += 1;
                ledger.bytes_touched += 4 * 16;
            }
        }
    });
}

void apply_float_emu(QState& state, const FloatEmuApply& g, KernelLedger& ledger) {
    const std::size_t dim = std::size_t{1} << g.qubits.size();
    if (g.qubits.size() != gate_arity(g.gate.kind)) throw InvalidArgument("operand count does not match gate arity");
    const auto form = gate_int_form(g.gate);
    if (form) {
        IntGateMatrix m = *form;
        m.operands = g.qubits;
        check_operands(state, m.operands, m.dim);
        KernelLedger discarded;
        apply_matrix_kernel(state, m, discarded);
        charge_float_emulation(state, dim, form->half_shift, ledger);
    } else {
        check_operands(state, g.qubits, dim);
        apply_phase_eighth(state, g);
        charge_float_emulation(state, dim, 1, ledger);
    }
    canonicalize(state, nullptr);
}

void apply_step(QState& state, const ProgramStep& step, KernelLedger& ledger) {
    if (const auto* m = std::get_if<IntMatrixApply>(&step)) {
        apply_int_matrix(state, m->matrix, ledger);
    } else if (const auto* p = std::get_if<PermApply>(&step)) {
        apply_permutation(state, *p, ledger);
    } else {
        apply_float_emu(state, std::get<FloatEmuApply>(step), ledger);
    }
}

void run_program(QState& state, const LoweredProgram& program, KernelLedger& ledger, const StepObserver& observer) {
    if (program.n_qubits != state.n_qubits) throw InvalidArgument("program and state qubit counts differ");
    for (std::size_t i = 0; i < program.steps.size(); ++i) {
        apply_step(state, program.steps[i], ledger);
        if (observer) observer(i, state);
    }
}

bool normalization_holds(const QState& state) {
    const unsigned exp = 2 * state.scale_k + state.half_shift;
    if (exp >= 127) return false;
    const unsigned __int128 target = static_cast<unsigned __int128>(1) << exp;
    unsigned __int128 sum = 0;
    for (const auto& z : state.nums) {
        const unsigned __int128 n = z.norm();
        if (n > target - sum) return false;
        sum += n;
    }
    return sum == target;
}

std::vector<DyadicRational> probabilities(const QState& state) {
    const unsigned exp = 2 * state.scale_k + state.half_shift;
    if (exp >= 127) throw OverflowError("probability denominator exceeds 127 bits");
    std::vector<DyadicRational> out;
    out.reserve(state.dim());
    for (const auto& z : state.nums) out.push_back(DyadicRational::make(z.norm(), exp));
    return out;
}

Complex amplitude(const QState& state, std::size_t index) {
    const GaussInt& z = state.nums.at(index);
    const int exp2 = -static_cast<int>(state.scale_k) - static_cast<int>(state.half_shift / 2);
    double scale = std::ldexp(1.0, exp2);
    if (state.half_shift % 2) scale *= 0.70710678118654752440;
    return {static_cast<double>(z.re) * scale, static_cast<double>(z.im) * scale};
}

std::vector<Complex> amplitudes(const QState& state) {
    std::vector<Complex> out(state.dim());
    for (std::size_t j = 0; j < state.dim(); ++j) out[j] = amplitude(state, j);
    return out;
}

bool amplitudes_equal(const QState& a, const QState& b) {
    if (a.n_qubits != b.n_qubits || a.dim() != b.dim()) return false;
    // Denominators are sqrt(2)^(2k + s).
    const unsigned ea = 2 * a.scale_k + a.half_shift;
    const unsigned eb = 2 * b.scale_k + b.half_shift;
    if ((ea - eb) % 2 != 0) {
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (!a.nums[j].is_zero() || !b.nums[j].is_zero()) return false;
        return true;
    }
    const bool a_larger = ea >= eb;
    const QState& hi = a_larger ? a : b;
    const QState& lo = a_larger ? b : a;
    const unsigned shift = (a_larger ? ea - eb : eb - ea) / 2;
    for (std::size_t j = 0; j < a.dim(); ++j) {
        if (shift >= 63) {
            if (!lo.nums[j].is_zero()) return false;
            if (!hi.nums[j].is_zero()) return false;
            continue;
        }
        const __int128 f = static_cast<__int128>(1) << shift;
        if (static_cast<__int128>(lo.nums[j].re) * f != hi.nums[j].re ||
            static_cast<__int128>(lo.nums[j].im) * f != hi.nums[j].im)
            return false;
    }
    return true;
}

}  // namespace pimsim

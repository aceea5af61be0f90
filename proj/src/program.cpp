#include "pimsim/program.hpp"

namespace pimsim {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

PermApply make_perm(GateKind kind, std::vector<Qubit> qubits) {
    if (!is_permutation_kind(kind)) throw InvalidArgument("gate is not a permutation");
    const auto form = gate_int_form(Gate{kind, std::nullopt});
    return PermApply{kind, std::move(qubits), form->permutation_image()};
}

const std::vector<Qubit>& step_qubits(const ProgramStep& step) {
    return std::visit(overloaded{[](const IntMatrixApply& s) -> const std::vector<Qubit>& { return s.matrix.operands; },
                                 [](const PermApply& s) -> const std::vector<Qubit>& { return s.qubits; },
                                 [](const FloatEmuApply& s) -> const std::vector<Qubit>& { return s.qubits; }},
                      step);
}

ComplexMatrix step_unitary(const ProgramStep& step) {
    return std::visit(overloaded{[](const IntMatrixApply& s) { return s.matrix.to_complex(); },
                                 [](const PermApply& s) {
                                     ComplexMatrix m(s.image.size());
                                     for (std::size_t c = 0; c < s.image.size(); ++c) m.at(s.image[c], c) = 1.0;
                                     return m;
                                 },
                                 [](const FloatEmuApply& s) { return gate_unitary(s.gate); }},
                      step);
}

unsigned step_half_shift(const ProgramStep& step) {
    if (const auto* m = std::get_if<IntMatrixApply>(&step)) return m->matrix.half_shift;
    if (const auto* f = std::get_if<FloatEmuApply>(&step)) {
        const auto form = gate_int_form(f->gate);
        // T and Tdg put one sqrt(2) on the phase entry, (1 +- i) / sqrt(2)
        return form ? form->half_shift : 1;
    }
    return 0;
}

std::size_t payload_bytes(const ProgramStep& step) {
    const std::size_t header = 8 + 4 * step_qubits(step).size();
    return std::visit(overloaded{[&](const IntMatrixApply& s) { return header + 16 * s.matrix.entries.size(); },
                                 [&](const PermApply& s) { return header + s.image.size(); },
                                 [&](const FloatEmuApply& s) {
                                     const std::size_t dim = std::size_t{1} << s.qubits.size();
                                     return header + 16 * dim * dim;
                                 }},
                      step);
}

void LoweredProgram::recount() {
    stats.int_matrix_steps = stats.perm_steps = stats.float_emu_steps = 0;
    stats.odd_residual = stats.total_half_shift = 0;
    for (const auto& step : steps) {
        if (const auto* m = std::get_if<IntMatrixApply>(&step)) {
            ++stats.int_matrix_steps;
            stats.odd_residual += m->matrix.half_shift % 2;
        } else if (std::holds_alternative<PermApply>(step)) {
            ++stats.perm_steps;
        } else {
            ++stats.float_emu_steps;
        }
        stats.total_half_shift += step_half_shift(step);
    }
}

std::size_t LoweredProgram::payload_bytes() const {
    std::size_t total = 0;
    for (const auto& s : steps) total += pimsim::payload_bytes(s);
    return total;
}

}  // namespace pimsim

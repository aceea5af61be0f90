#include "pimsim/circuit.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace pimsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// cos and sin of units * pi/4, exact for the rotation domain.
std::pair<double, double> half_angle_trig(int units) {
    switch (units) {
        case 1: return {kInvSqrt2, kInvSqrt2};
        case -1: return {kInvSqrt2, -kInvSqrt2};
        case 3: return {-kInvSqrt2, kInvSqrt2};
        case -3: return {-kInvSqrt2, -kInvSqrt2};
        case 2: return {0.0, 1.0};
    }
    throw InvalidArgument("angle outside supported domain");
}

const Angle& require_angle(const Gate& gate) {
    if (!gate.angle) throw InvalidArgument(std::string("rotation gate ") + std::string(gate_name(gate.kind)) +
                                           " requires an angle");
    return *gate.angle;
}

}  // namespace

std::optional<Angle> Angle::from_half_pi_units(int units) {
    switch (units) {
        case 1:
        case -1:
        case 3:
        case -3:
        case 2: return Angle(units);
    }
    return std::nullopt;
}

std::optional<Angle> Angle::from_radians(double radians, double tol) {
    for (const Angle& a : all_angles())
        if (std::abs(a.radians() - radians) <= tol) return a;
    return std::nullopt;
}

double Angle::radians() const {
    return units_ * std::numbers::pi / 2.0;
}

std::string_view Angle::qasm() const {
    switch (units_) {
        case 1: return "pi/2";
        case -1: return "-pi/2";
        case 3: return "3*pi/2";
        case -3: return "-3*pi/2";
        default: return "pi";
    }
}

std::vector<Angle> all_angles() {
    return {Angle::half_pi(), Angle::neg_half_pi(), Angle::three_half_pi(), Angle::neg_three_half_pi(),
            Angle::pi()};
}

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "Sdg";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "Tdg";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::CCX: return "CCX";
    }
    return "?";
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
    for (GateKind k : kAllGateKinds)
        if (gate_name(k) == name) return k;
    return std::nullopt;
}

std::size_t gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP: return 2;
        case GateKind::CCX: return 3;
        default: return 1;
    }
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
}

bool is_permutation_kind(GateKind kind) {
    return kind == GateKind::X || kind == GateKind::CNOT || kind == GateKind::SWAP || kind == GateKind::CCX;
}

ComplexMatrix gate_unitary(const Gate& gate) {
    const Complex i(0.0, 1.0);
    const double r = kInvSqrt2;
    switch (gate.kind) {
        case GateKind::H: return ComplexMatrix(2, {r, r, r, -r});
        case GateKind::X: return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0});
        case GateKind::Y: return ComplexMatrix(2, {0.0, -i, i, 0.0});
        case GateKind::Z: return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
        case GateKind::S: return ComplexMatrix(2, {1.0, 0.0, 0.0, i});
        case GateKind::Sdg: return ComplexMatrix(2, {1.0, 0.0, 0.0, -i});
        case GateKind::T: return ComplexMatrix(2, {1.0, 0.0, 0.0, Complex(r, r)});
        case GateKind::Tdg: return ComplexMatrix(2, {1.0, 0.0, 0.0, Complex(r, -r)});
        case GateKind::RX: {
            const auto [c, s] = half_angle_trig(require_angle(gate).half_pi_units());
            return ComplexMatrix(2, {c, -i * s, -i * s, c});
        }
        case GateKind::RY: {
            const auto [c, s] = half_angle_trig(require_angle(gate).half_pi_units());
            return ComplexMatrix(2, {c, -s, s, c});
        }
        case GateKind::RZ: {
            const auto [c, s] = half_angle_trig(require_angle(gate).half_pi_units());
            return ComplexMatrix(2, {Complex(c, -s), 0.0, 0.0, Complex(c, s)});
        }
        case GateKind::CNOT: {
            ComplexMatrix m(4);
            m.at(0, 0) = m.at(1, 1) = m.at(2, 3) = m.at(3, 2) = 1.0;
            return m;
        }
        case GateKind::CZ: {
            ComplexMatrix m = ComplexMatrix::identity(4);
            m.at(3, 3) = -1.0;
            return m;
        }
        case GateKind::SWAP: {
            ComplexMatrix m(4);
            m.at(0, 0) = m.at(1, 2) = m.at(2, 1) = m.at(3, 3) = 1.0;
            return m;
        }
        case GateKind::CCX: {
            ComplexMatrix m = ComplexMatrix::identity(8);
            m.at(6, 6) = m.at(7, 7) = 0.0;
            m.at(6, 7) = m.at(7, 6) = 1.0;
            return m;
        }
    }
    throw InvalidArgument("unknown gate kind");
}

std::optional<IntGateMatrix> gate_int_form(const Gate& gate) {
    return int_form_of(gate_unitary(gate));
}

CircuitIR& CircuitIR::add(GateKind kind, std::vector<Qubit> qubits, std::optional<Angle> angle) {
    ops.push_back(GateOp{Gate{kind, angle}, std::move(qubits)});
    return *this;
}

std::size_t CircuitIR::single_qubit_count() const {
    std::size_t n = 0;
    for (const auto& op : ops) n += gate_arity(op.gate.kind) == 1;
    return n;
}

std::size_t CircuitIR::multi_qubit_count() const {
    return ops.size() - single_qubit_count();
}

bool CircuitIR::same_structure(const CircuitIR& other) const {
    return n_qubits == other.n_qubits && ops == other.ops;
}

std::vector<Violation> validate(const CircuitIR& circuit) {
    std::vector<Violation> out;
    if (circuit.n_qubits == 0) out.push_back({0, "circuit has no qubits"});
    for (std::size_t idx = 0; idx < circuit.ops.size(); ++idx) {
        const GateOp& op = circuit.ops[idx];
        const std::string at = " at op " + std::to_string(idx);
        if (op.qubits.size() != gate_arity(op.gate.kind)) {
            out.push_back({idx, "wrong operand count" + at});
            continue;
        }
        if (is_rotation(op.gate.kind) && !op.gate.angle) {
            out.push_back({idx, "rotation without angle" + at});
            continue;
        }
        if (!is_rotation(op.gate.kind) && op.gate.angle) {
            out.push_back({idx, "unexpected angle" + at});
            continue;
        }
        bool in_range = true;
        for (Qubit q : op.qubits) in_range = in_range && q < circuit.n_qubits;
        if (!in_range) {
            out.push_back({idx, "qubit index out of range" + at});
            continue;
        }
        if (std::set<Qubit>(op.qubits.begin(), op.qubits.end()).size() != op.qubits.size())
            out.push_back({idx, "duplicate operand" + at});
    }
    return out;
}

}  // namespace pimsim

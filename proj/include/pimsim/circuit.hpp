#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pimsim/int_matrix.hpp"

namespace pimsim {

enum class GateKind { H, X, Y, Z, S, Sdg, T, Tdg, RX, RY, RZ, CNOT, CZ, SWAP, CCX };

inline constexpr GateKind kAllGateKinds[] = {
    GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,    GateKind::S,
    GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::RX,  GateKind::RY,
    GateKind::RZ, GateKind::CNOT, GateKind::CZ, GateKind::SWAP, GateKind::CCX};

/// Rotation angle restricted to the exact-integer domain, stored in units of
/// pi/2: {1, -1, 3, -3, 2} stand for pi/2, -pi/2, 3pi/2, -3pi/2, pi.
class Angle {
public:
    static std::optional<Angle> from_half_pi_units(int units);
    static Angle half_pi() { return Angle(1); }
    static Angle neg_half_pi() { return Angle(-1); }
    static Angle three_half_pi() { return Angle(3); }
    static Angle neg_three_half_pi() { return Angle(-3); }
    static Angle pi() { return Angle(2); }

    /// Nearest domain member to a radian value, if within tol.
    static std::optional<Angle> from_radians(double radians, double tol = 1e-9);

    [[nodiscard]] int half_pi_units() const { return units_; }
    [[nodiscard]] double radians() const;
    /// QASM spelling: "pi/2", "-pi/2", "3*pi/2", "-3*pi/2", "pi".
    [[nodiscard]] std::string_view qasm() const;

    friend bool operator==(const Angle&, const Angle&) = default;

private:
    explicit Angle(int units) : units_(units) {}
    int units_;
};

std::vector<Angle> all_angles();

/// Gate identity: kind plus the angle for rotation kinds.
struct Gate {
    GateKind kind = GateKind::H;
    std::optional<Angle> angle;

    friend bool operator==(const Gate&, const Gate&) = default;
};

std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);
std::size_t gate_arity(GateKind kind);
bool is_rotation(GateKind kind);

/// Kinds whose unitary is a 0/1 permutation matrix (row-swap candidates).
bool is_permutation_kind(GateKind kind);

/// Standard unitary of the gate. Multi-qubit matrices take the first operand
/// as the most significant local bit (CNOT is control-major).
ComplexMatrix gate_unitary(const Gate& gate);

/// Minimal-denominator integer form, or nullopt when no uniform sqrt(2)
/// power clears every entry (T and Tdg).
std::optional<IntGateMatrix> gate_int_form(const Gate& gate);

struct GateOp {
    Gate gate;
    std::vector<Qubit> qubits;

    friend bool operator==(const GateOp&, const GateOp&) = default;
};

struct CircuitIR {
    std::size_t n_qubits = 0;
    std::vector<GateOp> ops;
    std::string name;
    /// Generator parameters and other provenance, as ordered key/value pairs.
    std::map<std::string, std::string> metadata;

    CircuitIR& add(GateKind kind, std::vector<Qubit> qubits, std::optional<Angle> angle = std::nullopt);

    [[nodiscard]] std::size_t single_qubit_count() const;
    [[nodiscard]] std::size_t multi_qubit_count() const;

    /// Structural equality: qubit count and op sequence.
    [[nodiscard]] bool same_structure(const CircuitIR& other) const;
};

struct Violation {
    std::size_t op_index = 0;
    std::string reason;
};

/// Empty iff every op is well formed for this circuit.
std::vector<Violation> validate(const CircuitIR& circuit);

}  // namespace pimsim

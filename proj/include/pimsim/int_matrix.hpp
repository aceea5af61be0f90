#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pimsim/gauss_int.hpp"

namespace pimsim {

using Qubit = std::uint32_t;
using Complex = std::complex<double>;

/// Small dense row-major complex matrix (gate-sized: 2x2 .. 8x8).
struct ComplexMatrix {
    std::size_t dim = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t d) : dim(d), data(d * d) {}
    ComplexMatrix(std::size_t d, std::vector<Complex> values);

    static ComplexMatrix identity(std::size_t d);

    Complex& at(std::size_t r, std::size_t c) { return data[r * dim + c]; }
    [[nodiscard]] const Complex& at(std::size_t r, std::size_t c) const { return data[r * dim + c]; }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] double max_abs_diff(const ComplexMatrix& other) const;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Gate matrix with Gaussian-integer entries and a sqrt(2) denominator:
/// the represented unitary is entries / (sqrt 2)^half_shift.
///
/// Local index convention: operands[0] is the most significant bit of the
/// row/column index, so a two-operand matrix on (a, b) reads as A (x) B.
struct IntGateMatrix {
    std::size_t dim = 0;
    std::vector<GaussInt> entries;
    unsigned half_shift = 0;
    std::vector<Qubit> operands;

    IntGateMatrix() = default;
    IntGateMatrix(std::size_t d, std::vector<GaussInt> values, unsigned shift,
                  std::vector<Qubit> qubits = {});

    GaussInt& at(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
    [[nodiscard]] const GaussInt& at(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }

    [[nodiscard]] std::size_t arity() const;
    [[nodiscard]] ComplexMatrix to_complex() const;

    /// M * M^dagger == 2^half_shift * I in exact arithmetic.
    [[nodiscard]] bool is_unitary_exact() const;

    /// True when half_shift == 0 and the entries form a 0/1 permutation matrix.
    [[nodiscard]] bool is_permutation() const;

    /// For a permutation matrix: image[c] = r where entry (r, c) is 1, i.e. the
    /// basis state c is mapped to r. Precondition: is_permutation().
    [[nodiscard]] std::vector<std::uint8_t> permutation_image() const;

    /// Divides every entry by 2 and lowers half_shift by 2 while possible.
    void reduce();

    friend bool operator==(const IntGateMatrix&, const IntGateMatrix&) = default;
};

/// Product a * b (apply b first). Both must share dim and operands.
IntGateMatrix multiply(const IntGateMatrix& a, const IntGateMatrix& b);

/// Kronecker product a (x) b; operands are a.operands followed by b.operands.
IntGateMatrix kron(const IntGateMatrix& a, const IntGateMatrix& b);

/// Finds the minimal d such that (sqrt 2)^d * u has Gaussian-integer entries
/// (each within tol of a lattice point). Returns nullopt if no d <= max_d works.
std::optional<IntGateMatrix> int_form_of(const ComplexMatrix& u, unsigned max_d = 16, double tol = 1e-9);

}  // namespace pimsim

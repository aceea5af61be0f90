#include "pimsim/int_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace pimsim {

ComplexMatrix::ComplexMatrix(std::size_t d, std::vector<Complex> values) : dim(d), data(std::move(values)) {
    if (data.size() != d * d) throw InvalidArgument("ComplexMatrix: value count does not match dim^2");
}

ComplexMatrix ComplexMatrix::identity(std::size_t d) {
    ComplexMatrix m(d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) out.at(c, r) = std::conj(at(r, c));
    return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (dim != other.dim) throw InvalidArgument("ComplexMatrix: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) worst = std::max(worst, std::abs(data[i] - other.data[i]));
    return worst;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim != b.dim) throw InvalidArgument("ComplexMatrix: dimension mismatch");
    ComplexMatrix out(a.dim);
    for (std::size_t r = 0; r < a.dim; ++r)
        for (std::size_t k = 0; k < a.dim; ++k) {
            const Complex v = a.at(r, k);
            if (v == Complex{}) continue;
            for (std::size_t c = 0; c < a.dim; ++c) out.at(r, c) += v * b.at(k, c);
        }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.dim * b.dim);
    for (std::size_t ar = 0; ar < a.dim; ++ar)
        for (std::size_t ac = 0; ac < a.dim; ++ac)
            for (std::size_t br = 0; br < b.dim; ++br)
                for (std::size_t bc = 0; bc < b.dim; ++bc)
                    out.at(ar * b.dim + br, ac * b.dim + bc) = a.at(ar, ac) * b.at(br, bc);
    return out;
}

IntGateMatrix::IntGateMatrix(std::size_t d, std::vector<GaussInt> values, unsigned shift, std::vector<Qubit> qubits)
    : dim(d), entries(std::move(values)), half_shift(shift), operands(std::move(qubits)) {
    if (entries.size() != d * d) throw InvalidArgument("IntGateMatrix: entry count does not match dim^2");
    if (!operands.empty() && (std::size_t{1} << operands.size()) != d)
        throw InvalidArgument("IntGateMatrix: operand count does not match dim");
}

std::size_t IntGateMatrix::arity() const {
    return static_cast<std::size_t>(std::countr_zero(dim));
}

ComplexMatrix IntGateMatrix::to_complex() const {
    ComplexMatrix out(dim);
    const double scale = std::pow(std::sqrt(2.0), -static_cast<double>(half_shift));
    for (std::size_t i = 0; i < entries.size(); ++i)
        out.data[i] = Complex(static_cast<double>(entries[i].re), static_cast<double>(entries[i].im)) * scale;
    return out;
}

bool IntGateMatrix::is_unitary_exact() const {
    if (half_shift >= 62) return false;
    const GaussInt diag(std::int64_t{1} << half_shift);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            GaussInt acc;
            for (std::size_t k = 0; k < dim; ++k) acc += at(r, k) * at(c, k).conj();
            if (acc != (r == c ? diag : GaussInt{})) return false;
        }
    return true;
}

bool IntGateMatrix::is_permutation() const {
    if (half_shift != 0) return false;
    std::vector<int> col_ones(dim, 0);
    for (std::size_t r = 0; r < dim; ++r) {
        int row_ones = 0;
        for (std::size_t c = 0; c < dim; ++c) {
            const GaussInt& e = at(r, c);
            if (e == GaussInt{1}) {
                ++row_ones;
                ++col_ones[c];
            } else if (!e.is_zero()) {
                return false;
            }
        }
        if (row_ones != 1) return false;
    }
    return std::all_of(col_ones.begin(), col_ones.end(), [](int n) { return n == 1; });
}

std::vector<std::uint8_t> IntGateMatrix::permutation_image() const {
    std::vector<std::uint8_t> image(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (at(r, c) == GaussInt{1}) image[c] = static_cast<std::uint8_t>(r);
    return image;
}

void IntGateMatrix::reduce() {
    while (half_shift >= 2 &&
           std::all_of(entries.begin(), entries.end(), [](const GaussInt& e) { return e.is_even(); })) {
        for (auto& e : entries) e = e.shr(1);
        half_shift -= 2;
    }
}

IntGateMatrix multiply(const IntGateMatrix& a, const IntGateMatrix& b) {
    if (a.dim != b.dim) throw InvalidArgument("IntGateMatrix multiply: dimension mismatch");
    IntGateMatrix out(a.dim, std::vector<GaussInt>(a.dim * a.dim), a.half_shift + b.half_shift, a.operands);
    for (std::size_t r = 0; r < a.dim; ++r)
        for (std::size_t k = 0; k < a.dim; ++k) {
            const GaussInt& v = a.at(r, k);
            if (v.is_zero()) continue;
            for (std::size_t c = 0; c < a.dim; ++c) out.at(r, c) += v * b.at(k, c);
        }
    out.reduce();
    return out;
}

IntGateMatrix kron(const IntGateMatrix& a, const IntGateMatrix& b) {
    const std::size_t d = a.dim * b.dim;
    std::vector<Qubit> ops = a.operands;
    ops.insert(ops.end(), b.operands.begin(), b.operands.end());
    IntGateMatrix out(d, std::vector<GaussInt>(d * d), a.half_shift + b.half_shift,
                      (ops.size() == a.arity() + b.arity()) ? ops : std::vector<Qubit>{});
    for (std::size_t ar = 0; ar < a.dim; ++ar)
        for (std::size_t ac = 0; ac < a.dim; ++ac)
            for (std::size_t br = 0; br < b.dim; ++br)
                for (std::size_t bc = 0; bc < b.dim; ++bc)
                    out.at(ar * b.dim + br, ac * b.dim + bc) = a.at(ar, ac) * b.at(br, bc);
    out.reduce();
    return out;
}

std::optional<IntGateMatrix> int_form_of(const ComplexMatrix& u, unsigned max_d, double tol) {
    double scale = 1.0;
    for (unsigned d = 0; d <= max_d; ++d, scale *= std::sqrt(2.0)) {
        std::vector<GaussInt> entries;
        entries.reserve(u.data.size());
        bool ok = true;
        for (const Complex& v : u.data) {
            const Complex s = v * scale;
            const double re = std::round(s.real());
            const double im = std::round(s.imag());
            if (std::abs(s.real() - re) > tol || std::abs(s.imag() - im) > tol) {
                ok = false;
                break;
            }
            entries.emplace_back(static_cast<std::int64_t>(re), static_cast<std::int64_t>(im));
        }
        if (ok) return IntGateMatrix(u.dim, std::move(entries), d);
    }
    return std::nullopt;
}

}  // namespace pimsim

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pimsim/circuit.hpp"

namespace pimsim {

/// The six evaluated benchmark families.
enum class Family { BB, BV, EDC, HS, QRNG, XOR };

inline constexpr Family kAllFamilies[] = {Family::BB, Family::BV, Family::EDC,
                                          Family::HS, Family::QRNG, Family::XOR};

std::string_view family_name(Family family);  // lower-case selector: "bb", "bv", ...
std::optional<Family> family_from_name(std::string_view name);

struct BenchmarkParams {
    /// BV: secret over the n-1 data qubits, '0'/'1', q0 first. Default all ones.
    std::optional<std::string> secret;
    /// BV: number of leading qubits that get the closing H layer. Default n-1.
    std::optional<std::size_t> final_layer_width;
    /// BB: per-qubit bit and basis strings of length n. Drawn from `seed` when absent.
    std::optional<std::string> bits;
    std::optional<std::string> bases;
    std::uint64_t seed = 20240917;
};

/// Generates a benchmark circuit. `n` is the family size parameter; HS
/// produces 2n qubits, every other family produces n.
///
/// Throws InvalidArgument on an invalid size or inconsistent parameters.
CircuitIR gen_benchmark(Family family, std::size_t n, const BenchmarkParams& params = {});

/// Qubit count gen_benchmark produces for (family, n).
std::size_t benchmark_qubits(Family family, std::size_t n);

}  // namespace pimsim

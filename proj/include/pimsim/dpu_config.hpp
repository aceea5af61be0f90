#pragma once

#include <cstddef>
#include <cstdint>

namespace pimsim {

/// Per-DPU capacities and the unit cost model. Costs are model units, not
/// seconds: every phase is (counted quantity) x (configured cost).
struct DpuConfig {
    std::uint64_t mram_bytes = 64ull << 20;
    std::uint64_t wram_bytes = 64ull << 10;
    std::uint64_t iram_bytes = 24ull << 10;
    std::size_t max_dpus = 2560;
    std::uint64_t bytes_per_amplitude = 16;

    double int_op_cost = 1.0;
    double float_emu_cost = 32.0;
    double c2d_bytes_per_unit = 64.0;
    double d2c_bytes_per_unit = 64.0;
    double recon_op_cost = 1.0;
    double wram_dma_bytes_per_unit = 256.0;

    /// Worker threads used by the runtime; 0 picks the hardware concurrency.
    std::size_t parallelism = 0;
    /// Return |amp|^2 instead of the full state, halving D-to-C bytes.
    bool return_probabilities_only = false;

    /// Host-side limits for the exact engine, the oracle and quantization.
    std::size_t host_max_qubits = 26;
    std::size_t quantize_max_qubits = 20;

    /// Throws InvalidArgument unless every field is positive and
    /// float_emu_cost > int_op_cost.
    void validate() const;

    /// 2^n * bytes_per_amplitude, saturating at UINT64_MAX.
    [[nodiscard]] std::uint64_t state_bytes(std::size_t n_qubits) const;
};

}  // namespace pimsim

#include "pimsim/dpu_config.hpp"

#include <limits>

#include "pimsim/errors.hpp"

namespace pimsim {

void DpuConfig::validate() const {
    if (mram_bytes == 0 || wram_bytes == 0 || iram_bytes == 0 || max_dpus == 0 || bytes_per_amplitude == 0)
        throw InvalidArgument("DPU config: capacities must be positive");
    if (!(int_op_cost > 0) || !(float_emu_cost > 0) || !(c2d_bytes_per_unit > 0) || !(d2c_bytes_per_unit > 0) ||
        !(recon_op_cost > 0) || !(wram_dma_bytes_per_unit > 0))
        throw InvalidArgument("DPU config: cost parameters must be positive");
    if (!(float_emu_cost > int_op_cost)) throw InvalidArgument("DPU config: float_emu_cost must exceed int_op_cost");
    if (host_max_qubits == 0 || quantize_max_qubits == 0) throw InvalidArgument("DPU config: qubit limits must be positive");
}

std::uint64_t DpuConfig::state_bytes(std::size_t n_qubits) const {
    if (n_qubits >= 64) return std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t amps = std::uint64_t{1} << n_qubits;
    if (amps > std::numeric_limits<std::uint64_t>::max() / bytes_per_amplitude)
        return std::numeric_limits<std::uint64_t>::max();
    return amps * bytes_per_amplitude;
}

}  // namespace pimsim

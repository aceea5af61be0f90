#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pimsim/pim_exec.hpp"

namespace pimsim {

struct PassSet {
    bool gm = false;
    bool rs = false;
    bool vp = false;

    /// Comma-separated subset of {gm, rs, vp}; empty or "none" selects nothing.
    static PassSet parse(std::string_view text);
    [[nodiscard]] std::string str() const;
    friend bool operator==(const PassSet&, const PassSet&) = default;
};

/// Lowers one (component) circuit: naive or gate merging, then row swapping,
/// then the quantization exponent when merging is on and the circuit is small
/// enough for the analysis.
LoweredProgram lower(const CircuitIR& circuit, const PassSet& passes, const DpuConfig& cfg);

/// Partitioned (vp) or whole plan, packed onto num_dpus, with one program
/// per component.
struct CompiledPlan {
    PartitionPlan plan;
    std::vector<LoweredProgram> programs;
};

CompiledPlan compile(const CircuitIR& circuit, const PassSet& passes, std::size_t num_dpus, const DpuConfig& cfg);

struct PimRun {
    CompiledPlan compiled;
    ExecutionResult execution;  // trace.recon_ops filled in after reconstruction
    QState state;
};

PimRun run_pim(const CircuitIR& circuit, const PassSet& passes, std::size_t num_dpus, const DpuConfig& cfg);

}  // namespace pimsim

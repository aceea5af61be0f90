#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pimsim/dpu_config.hpp"
#include "pimsim/intstate.hpp"
#include "pimsim/passes.hpp"

namespace pimsim {

inline constexpr std::string_view kPhaseC2D = "C-to-D Tran.";
inline constexpr std::string_view kPhaseComp = "Comp.";
inline constexpr std::string_view kPhaseD2C = "D-to-C Tran.";
inline constexpr std::string_view kPhaseRecon = "Recon.";

struct CapacityIssue {
    std::size_t dpu_id = 0;
    std::string message;
};

struct CapacityReport {
    std::vector<CapacityIssue> errors;    // MRAM overflow
    std::vector<CapacityIssue> warnings;  // WRAM tiling needed
    [[nodiscard]] bool ok() const { return errors.empty(); }
};

/// Per DPU: sum of 2^(n_c) * bytes_per_amplitude over its components plus the
/// programs' payload must fit MRAM. A component state larger than WRAM is a
/// warning (the kernel tiles through WRAM). `programs` may be empty, in which
/// case no payload is counted.
CapacityReport capacity_check(const PartitionPlan& plan, const std::vector<LoweredProgram>& programs,
                              const DpuConfig& cfg);

struct DpuTrace {
    std::size_t dpu_id = 0;
    std::vector<std::size_t> components;
    std::uint64_t footprint_bytes = 0;  // resident state bytes
    std::uint64_t c2d_bytes = 0;
    std::uint64_t d2c_bytes = 0;
    std::uint64_t wram_dma_bytes = 0;
    KernelLedger comp;
};

/// Counted quantities of one execution. Modeled units are derived from these
/// and a DpuConfig (see phase_units), so the trace does not depend on timing.
struct ExecutionTrace {
    std::size_t n_qubits = 0;
    std::vector<DpuTrace> dpus;  // one entry per DPU that received work, by id
    std::uint64_t recon_ops = 0;
    std::uint64_t recon_bytes = 0;
    std::uint64_t inter_dpu_messages = 0;

    [[nodiscard]] std::uint64_t total_c2d_bytes() const;
    [[nodiscard]] std::uint64_t total_d2c_bytes() const;
    [[nodiscard]] std::uint64_t total_footprint_bytes() const;
    [[nodiscard]] KernelLedger total_comp() const;

    friend bool operator==(const ExecutionTrace&, const ExecutionTrace&) = default;
};

inline bool operator==(const DpuTrace& a, const DpuTrace& b) {
    return a.dpu_id == b.dpu_id && a.components == b.components && a.footprint_bytes == b.footprint_bytes &&
           a.c2d_bytes == b.c2d_bytes && a.d2c_bytes == b.d2c_bytes && a.wram_dma_bytes == b.wram_dma_bytes &&
           a.comp == b.comp;
}

struct PhaseUnits {
    double c2d = 0, comp = 0, d2c = 0;
};

PhaseUnits phase_units(const DpuTrace& dpu, const DpuConfig& cfg);
double recon_units(const ExecutionTrace& trace, const DpuConfig& cfg);

/// What a DPU holds in its MRAM slice.
struct DpuMemory {
    std::vector<std::size_t> component_ids;
    std::vector<QState> states;
    std::vector<LoweredProgram> programs;
};

/// Handle a worker gets while it runs. It can reach its own memory only;
/// asking for another DPU's memory is a contract violation.
class DpuContext {
public:
    [[nodiscard]] std::size_t id() const { return id_; }
    DpuMemory& memory() { return *own_; }
    /// Returns own memory when dpu == id(); otherwise counts the attempt and
    /// throws ContractViolation.
    DpuMemory& memory_of(std::size_t dpu);
    KernelLedger& ledger() { return *ledger_; }

private:
    friend class DpuRuntime;
    DpuContext(std::size_t id, DpuMemory* own, KernelLedger* ledger, std::atomic<std::uint64_t>* messages)
        : id_(id), own_(own), ledger_(ledger), messages_(messages) {}
    std::size_t id_;
    DpuMemory* own_;
    KernelLedger* ledger_;
    std::atomic<std::uint64_t>* messages_;
};

/// Share-nothing worker pool: one memory and one ledger per DPU, launched on
/// up to `parallelism` threads. The only data paths are load() before launch
/// and memory(id) after it.
class DpuRuntime {
public:
    DpuRuntime(std::size_t num_dpus, std::size_t parallelism);

    [[nodiscard]] std::size_t num_dpus() const { return memories_.size(); }
    DpuMemory& load(std::size_t dpu) { return memories_.at(dpu); }
    [[nodiscard]] const DpuMemory& memory(std::size_t dpu) const { return memories_.at(dpu); }
    [[nodiscard]] const KernelLedger& ledger(std::size_t dpu) const { return ledgers_.at(dpu); }

    /// Runs kernel once per DPU. If any kernel throws, the exception of the
    /// lowest failing DPU id is rethrown after all workers finish.
    void launch(const std::function<void(DpuContext&)>& kernel);

    [[nodiscard]] std::uint64_t inter_dpu_messages() const { return messages_.load(); }

private:
    std::vector<DpuMemory> memories_;
    std::vector<KernelLedger> ledgers_;
    std::size_t parallelism_;
    std::atomic<std::uint64_t> messages_{0};
};

struct ExecutionResult {
    std::vector<QState> states;  // one per plan component
    ExecutionTrace trace;
};

/// Ships each component's initial state and program to its DPU, runs the
/// exact engine there in isolation, and collects the result states.
///
/// Throws CapacityError when capacity_check fails and InvalidArgument when
/// programs do not match the plan's components.
ExecutionResult execute(const PartitionPlan& plan, const std::vector<LoweredProgram>& programs,
                        const DpuConfig& cfg);

/// Host-side tensor product of the component states. Returns the full state;
/// `recon_ops` (if given) receives 2^n for a multi-component plan, else 0.
QState reconstruct(const std::vector<QState>& sub_states, const PartitionPlan& plan,
                   std::uint64_t* recon_ops = nullptr, std::size_t max_qubits = 26);

struct PhaseCost {
    std::string name;
    double units = 0;
    double fraction = 0;
};

struct DpuUsage {
    std::size_t dpu_id = 0;
    std::size_t components = 0;
    std::uint64_t footprint_bytes = 0;
    double busy_units = 0;
    double utilization = 0;  // busy / busiest DPU
};

struct CostReport {
    std::array<PhaseCost, 4> phases;
    double total_units = 0;
    std::vector<DpuUsage> dpus;
    std::uint64_t total_footprint_bytes = 0;
    std::uint64_t total_transfer_bytes = 0;
};

/// Breakdown in model units. Transfers are charged per byte, Comp per kernel
/// op (floating-point emulation at float_emu_cost), Recon per host product.
CostReport cost_report(const ExecutionTrace& trace, const DpuConfig& cfg);

}  // namespace pimsim

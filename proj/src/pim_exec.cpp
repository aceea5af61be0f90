#include "pimsim/pim_exec.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <thread>

namespace pimsim {

CapacityReport capacity_check(const PartitionPlan& plan, const std::vector<LoweredProgram>& programs,
                              const DpuConfig& cfg) {
    if (!plan.assigned()) throw InvalidArgument("capacity_check: plan has no DPU assignment");
    if (!programs.empty() && programs.size() != plan.components.size())
        throw InvalidArgument("capacity_check: one program per component required");
    CapacityReport report;
    std::map<std::size_t, unsigned __int128> mram_use;
    for (std::size_t c = 0; c < plan.components.size(); ++c) {
        const std::size_t dpu = plan.assignment[c];
        const std::uint64_t state = cfg.state_bytes(plan.components[c].qubits.size());
        mram_use[dpu] += state;
        if (!programs.empty()) mram_use[dpu] += programs[c].payload_bytes();
        if (state > cfg.wram_bytes)
            report.warnings.push_back({dpu, "component " + std::to_string(c) + " state (" + std::to_string(state) +
                                                " B) exceeds WRAM; tiled through DMA"});
    }
    for (const auto& [dpu, used] : mram_use)
        if (used > cfg.mram_bytes)
            report.errors.push_back({dpu, "MRAM overflow on DPU " + std::to_string(dpu) + ": " +
                                              u128_to_string(used) + " B > " + std::to_string(cfg.mram_bytes) + " B"});
    return report;
}

std::uint64_t ExecutionTrace::total_c2d_bytes() const {
    std::uint64_t t = 0;
    for (const auto& d : dpus) t += d.c2d_bytes;
    return t;
}

std::uint64_t ExecutionTrace::total_d2c_bytes() const {
    std::uint64_t t = 0;
    for (const auto& d : dpus) t += d.d2c_bytes;
    return t;
}

std::uint64_t ExecutionTrace::total_footprint_bytes() const {
    std::uint64_t t = 0;
    for (const auto& d : dpus) t += d.footprint_bytes;
    return t;
}

KernelLedger ExecutionTrace::total_comp() const {
    KernelLedger t;
    for (const auto& d : dpus) t += d.comp;
    return t;
}

PhaseUnits phase_units(const DpuTrace& dpu, const DpuConfig& cfg) {
    PhaseUnits u;
    u.c2d = static_cast<double>(dpu.c2d_bytes) / cfg.c2d_bytes_per_unit;
    u.d2c = static_cast<double>(dpu.d2c_bytes) / cfg.d2c_bytes_per_unit;
    u.comp = cfg.int_op_cost * static_cast<double>(dpu.comp.native_ops()) +
             cfg.float_emu_cost * static_cast<double>(dpu.comp.emulated_float_ops) +
             static_cast<double>(dpu.wram_dma_bytes) / cfg.wram_dma_bytes_per_unit;
    return u;
}

double recon_units(const ExecutionTrace& trace, const DpuConfig& cfg) {
    return cfg.recon_op_cost * static_cast<double>(trace.recon_ops);
}

DpuMemory& DpuContext::memory_of(std::size_t dpu) {
    if (dpu == id_) return *own_;
    messages_->fetch_add(1);
    throw ContractViolation("DPU " + std::to_string(id_) + " attempted to access DPU " + std::to_string(dpu) +
                            "'s memory; DPUs have no communication channel");
}

DpuRuntime::DpuRuntime(std::size_t num_dpus, std::size_t parallelism)
    : memories_(num_dpus), ledgers_(num_dpus), parallelism_(parallelism) {
    if (num_dpus == 0) throw InvalidArgument("runtime needs at least one DPU");
    if (parallelism_ == 0) parallelism_ = std::max(1u, std::thread::hardware_concurrency());
}

void DpuRuntime::launch(const std::function<void(DpuContext&)>& kernel) {
    std::vector<std::exception_ptr> errors(memories_.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t id = next.fetch_add(1); id < memories_.size(); id = next.fetch_add(1)) {
            DpuContext ctx(id, &memories_[id], &ledgers_[id], &messages_);
            try {
                kernel(ctx);
            } catch (...) {
                errors[id] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(parallelism_, memories_.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

ExecutionResult execute(const PartitionPlan& plan, const std::vector<LoweredProgram>& programs,
                        const DpuConfig& cfg) {
    cfg.validate();
    if (programs.size() != plan.components.size())
        throw InvalidArgument("execute: one program per component required");
    for (std::size_t c = 0; c < programs.size(); ++c)
        if (programs[c].n_qubits != plan.components[c].qubits.size())
            throw InvalidArgument("execute: program " + std::to_string(c) + " does not match its component");
    const CapacityReport cap = capacity_check(plan, programs, cfg);
    if (!cap.ok()) throw CapacityError(cap.errors.front().message);

    DpuRuntime runtime(plan.num_dpus, cfg.parallelism);
    std::map<std::size_t, DpuTrace> per_dpu;

    // C-to-D: initial states and serialized programs.
    for (std::size_t c = 0; c < plan.components.size(); ++c) {
        const std::size_t dpu = plan.assignment[c];
        DpuMemory& mem = runtime.load(dpu);
        mem.component_ids.push_back(c);
        mem.states.push_back(init_state(programs[c].n_qubits, programs[c].scale_k, cfg.host_max_qubits));
        mem.programs.push_back(programs[c]);
        DpuTrace& t = per_dpu[dpu];
        t.dpu_id = dpu;
        t.components.push_back(c);
        const std::uint64_t state_bytes = cfg.state_bytes(programs[c].n_qubits);
        t.footprint_bytes += state_bytes;
        t.c2d_bytes += state_bytes + programs[c].payload_bytes();
        if (state_bytes > cfg.wram_bytes) t.wram_dma_bytes += 2 * state_bytes * programs[c].steps.size();
    }

    // Comp: components resident on one DPU run one after another.
    runtime.launch([](DpuContext& ctx) {
        DpuMemory& mem = ctx.memory();
        for (std::size_t i = 0; i < mem.states.size(); ++i) run_program(mem.states[i], mem.programs[i], ctx.ledger());
    });

    // D-to-C: result states back to the host.
    ExecutionResult result;
    result.states.resize(plan.components.size());
    for (auto& [dpu, t] : per_dpu) {
        const DpuMemory& mem = runtime.memory(dpu);
        t.comp = runtime.ledger(dpu);
        for (std::size_t i = 0; i < mem.component_ids.size(); ++i) {
            const std::size_t c = mem.component_ids[i];
            const std::uint64_t bytes = cfg.state_bytes(mem.states[i].n_qubits);
            t.d2c_bytes += cfg.return_probabilities_only ? bytes / 2 : bytes;
            result.states[c] = mem.states[i];
        }
        result.trace.dpus.push_back(t);
    }
    result.trace.n_qubits = plan.n_qubits;
    result.trace.inter_dpu_messages = runtime.inter_dpu_messages();
    return result;
}

QState reconstruct(const std::vector<QState>& sub_states, const PartitionPlan& plan, std::uint64_t* recon_ops,
                   std::size_t max_qubits) {
    if (sub_states.size() != plan.components.size() || sub_states.empty())
        throw InvalidArgument("reconstruct: one state per component required");
    std::vector<int> owner(plan.n_qubits, -1);
    for (std::size_t c = 0; c < plan.components.size(); ++c) {
        if (sub_states[c].n_qubits != plan.components[c].qubits.size())
            throw InvalidArgument("reconstruct: state " + std::to_string(c) + " does not match its component");
        for (Qubit q : plan.components[c].qubits) {
            if (q >= plan.n_qubits || owner[q] != -1)
                throw InvalidArgument("reconstruct: component qubit sets are not a partition");
            owner[q] = static_cast<int>(c);
        }
    }
    if (std::find(owner.begin(), owner.end(), -1) != owner.end())
        throw InvalidArgument("reconstruct: component qubit sets are not a partition");

    if (recon_ops) *recon_ops = 0;
    if (plan.components.size() == 1) return sub_states[0];

    QState full = init_state(plan.n_qubits, 0, max_qubits);
    for (const auto& s : sub_states) {
        full.half_shift += s.half_shift;
        full.scale_k += s.scale_k;
    }
    for (std::size_t j = 0; j < full.dim(); ++j) {
        GaussInt acc(1);
        for (std::size_t c = 0; c < plan.components.size() && !acc.is_zero(); ++c) {
            const auto& qubits = plan.components[c].qubits;
            std::size_t local = 0;
            for (std::size_t i = 0; i < qubits.size(); ++i) local |= ((j >> qubits[i]) & 1) << i;
            acc = acc * sub_states[c].nums[local];
        }
        full.nums[j] = acc;
    }
    canonicalize(full, nullptr);
    if (recon_ops) *recon_ops = full.dim();
    return full;
}

CostReport cost_report(const ExecutionTrace& trace, const DpuConfig& cfg) {
    CostReport r;
    PhaseUnits sum;
    double busiest = 0;
    for (const auto& d : trace.dpus) {
        const PhaseUnits u = phase_units(d, cfg);
        sum.c2d += u.c2d;
        sum.comp += u.comp;
        sum.d2c += u.d2c;
        const double busy = u.c2d + u.comp + u.d2c;
        busiest = std::max(busiest, busy);
        r.dpus.push_back({d.dpu_id, d.components.size(), d.footprint_bytes, busy, 0.0});
        r.total_footprint_bytes += d.footprint_bytes;
        r.total_transfer_bytes += d.c2d_bytes + d.d2c_bytes;
    }
    for (auto& u : r.dpus) u.utilization = busiest > 0 ? u.busy_units / busiest : 0.0;
    const double recon = recon_units(trace, cfg);
    r.phases = {PhaseCost{std::string(kPhaseC2D), sum.c2d, 0}, PhaseCost{std::string(kPhaseComp), sum.comp, 0},
                PhaseCost{std::string(kPhaseD2C), sum.d2c, 0}, PhaseCost{std::string(kPhaseRecon), recon, 0}};
    r.total_units = sum.c2d + sum.comp + sum.d2c + recon;
    for (auto& p : r.phases) p.fraction = r.total_units > 0 ? p.units / r.total_units : 0.0;
    return r;
}

}  // namespace pimsim

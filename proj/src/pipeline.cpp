#include "pimsim/pipeline.hpp"

namespace pimsim {

PassSet PassSet::parse(std::string_view text) {
    PassSet p;
    if (text.empty() || text == "none") return p;
    while (true) {
        const auto comma = text.find(',');
        const std::string_view name = text.substr(0, comma);
        if (name == "gm")
            p.gm = true;
        else if (name == "rs")
            p.rs = true;
        else if (name == "vp")
            p.vp = true;
        else
            throw InvalidArgument("unknown pass '" + std::string(name) + "' (expected gm, rs, vp)");
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return p;
}

std::string PassSet::str() const {
    std::string out;
    auto add = [&](bool on, const char* name) {
        if (!on) return;
        if (!out.empty()) out += ',';
        out += name;
    };
    add(gm, "gm");
    add(rs, "rs");
    add(vp, "vp");
    return out.empty() ? "none" : out;
}

LoweredProgram lower(const CircuitIR& circuit, const PassSet& passes, const DpuConfig& cfg) {
    LoweredProgram prog = passes.gm ? merge_gates(circuit) : lower_naive(circuit);
    if (passes.rs) prog = lower_permutations(prog);
    if (passes.gm && circuit.n_qubits <= cfg.quantize_max_qubits) prog.scale_k = quantize_program(prog, cfg.quantize_max_qubits);
    return prog;
}

CompiledPlan compile(const CircuitIR& circuit, const PassSet& passes, std::size_t num_dpus, const DpuConfig& cfg) {
    const auto violations = validate(circuit);
    if (!violations.empty()) throw InvalidArgument("invalid circuit: " + violations.front().reason);
    CompiledPlan out;
    out.plan = pack(passes.vp ? partition(circuit) : whole_plan(circuit), num_dpus, cfg);
    out.programs.reserve(out.plan.components.size());
    for (const auto& c : out.plan.components) out.programs.push_back(lower(c.circuit, passes, cfg));
    return out;
}

PimRun run_pim(const CircuitIR& circuit, const PassSet& passes, std::size_t num_dpus, const DpuConfig& cfg) {
    PimRun run;
    run.compiled = compile(circuit, passes, num_dpus, cfg);
    run.execution = execute(run.compiled.plan, run.compiled.programs, cfg);
    std::uint64_t recon_ops = 0;
    run.state = reconstruct(run.execution.states, run.compiled.plan, &recon_ops, cfg.host_max_qubits);
    run.execution.trace.recon_ops = recon_ops;
    run.execution.trace.recon_bytes = recon_ops ? cfg.state_bytes(circuit.n_qubits) : 0;
    return run;
}

}  // namespace pimsim

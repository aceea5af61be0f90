#include "pimsim/serialize.hpp"

#include <bit>
#include <iomanip>
#include <set>
#include <sstream>

namespace pimsim {

namespace {

json gauss_pair(const GaussInt& z) { return json::array({z.re, z.im}); }

json complex_pair(const Complex& z) { return json::array({z.real(), z.imag()}); }

std::string fmt_units(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

}  // namespace

json state_to_json(const QState& state, bool with_probabilities) {
    json j;
    j["n_qubits"] = state.n_qubits;
    j["s"] = state.half_shift;
    j["k"] = state.scale_k;
    json nums = json::array();
    for (const auto& z : state.nums) nums.push_back(gauss_pair(z));
    j["nums"] = std::move(nums);
    if (with_probabilities) {
        json probs = json::array();
        for (const auto& p : probabilities(state)) probs.push_back(p.to_string());
        j["probabilities"] = std::move(probs);
    }
    return j;
}

QState state_from_json(const json& j) {
    try {
        QState s;
        s.half_shift = j.at("s").get<unsigned>();
        s.scale_k = j.at("k").get<unsigned>();
        const auto& nums = j.at("nums");
        if (!nums.is_array() || nums.empty()) throw InvalidArgument("state dump: 'nums' must be a non-empty array");
        for (const auto& pair : nums) {
            if (!pair.is_array() || pair.size() != 2) throw InvalidArgument("state dump: numerator must be [re, im]");
            s.nums.emplace_back(pair[0].get<std::int64_t>(), pair[1].get<std::int64_t>());
        }
        const std::size_t dim = s.nums.size();
        if ((dim & (dim - 1)) != 0 || dim < 2) throw InvalidArgument("state dump: length is not 2^n");
        s.n_qubits = static_cast<std::size_t>(std::countr_zero(dim));
        if (j.contains("n_qubits") && j["n_qubits"].get<std::size_t>() != s.n_qubits)
            throw InvalidArgument("state dump: n_qubits does not match the numerator count");
        return s;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("state dump: ") + e.what());
    }
}

json float_state_to_json(const FloatState& state) {
    json amps = json::array();
    for (const auto& a : state.amps) amps.push_back(complex_pair(a));
    return {{"n_qubits", state.n_qubits}, {"amps", std::move(amps)}};
}

json step_to_json(const ProgramStep& step) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, IntMatrixApply>) {
                json rows = json::array();
                for (std::size_t r = 0; r < s.matrix.dim; ++r) {
                    json row = json::array();
                    for (std::size_t c = 0; c < s.matrix.dim; ++c) row.push_back(gauss_pair(s.matrix.at(r, c)));
                    rows.push_back(std::move(row));
                }
                return {{"type", "IntMatrixApply"},
                        {"qubits", s.matrix.operands},
                        {"half_shift", s.matrix.half_shift},
                        {"entries", std::move(rows)}};
            } else if constexpr (std::is_same_v<T, PermApply>) {
                json j = {{"type", "PermApply"}, {"qubits", s.qubits}, {"image", s.image}};
                j["gate"] = s.kind ? json(std::string(gate_name(*s.kind))) : json(nullptr);
                return j;
            } else {
                json j = {{"type", "FloatEmuApply"}, {"qubits", s.qubits}, {"gate", std::string(gate_name(s.gate.kind))}};
                if (s.gate.angle) j["angle"] = std::string(s.gate.angle->qasm());
                return j;
            }
        },
        step);
}

json program_to_json(const LoweredProgram& program) {
    json steps = json::array();
    for (const auto& s : program.steps) steps.push_back(step_to_json(s));
    const auto& st = program.stats;
    return {{"n_qubits", program.n_qubits},
            {"scale_k", program.scale_k},
            {"payload_bytes", program.payload_bytes()},
            {"steps", std::move(steps)},
            {"stats",
             {{"int_matrix_steps", st.int_matrix_steps},
              {"perm_steps", st.perm_steps},
              {"float_emu_steps", st.float_emu_steps},
              {"merged_pairs", st.merged_pairs},
              {"fused_gates", st.fused_gates},
              {"identities_dropped", st.identities_dropped},
              {"odd_residual", st.odd_residual},
              {"permutations_lowered", st.permutations_lowered},
              {"total_half_shift", st.total_half_shift}}}};
}

json plan_to_json(const PartitionPlan& plan) {
    json comps = json::array();
    for (std::size_t c = 0; c < plan.components.size(); ++c) {
        json jc = {{"qubits", plan.components[c].qubits}, {"ops", plan.components[c].circuit.ops.size()}};
        jc["dpu"] = plan.assigned() ? json(plan.assignment[c]) : json(nullptr);
        comps.push_back(std::move(jc));
    }
    return {{"n_qubits", plan.n_qubits},
            {"num_dpus", plan.num_dpus},
            {"dpus_used", plan.assigned() ? plan.dpus_used() : 0},
            {"components", std::move(comps)}};
}

json ledger_to_json(const KernelLedger& l) {
    return {{"adds", l.adds},
            {"subs", l.subs},
            {"negs", l.negs},
            {"reim_swaps", l.reim_swaps},
            {"shifts", l.shifts},
            {"element_swaps", l.element_swaps},
            {"native_ops", l.native_ops()},
            {"emulated_float_ops", l.emulated_float_ops},
            {"muls", l.muls},
            {"divs", l.divs},
            {"bytes_touched", l.bytes_touched}};
}

json trace_to_json(const ExecutionTrace& trace, const DpuConfig& cfg) {
    json dpus = json::array();
    for (const auto& d : trace.dpus) {
        const PhaseUnits u = phase_units(d, cfg);
        dpus.push_back({{"dpu_id", d.dpu_id},
                        {"components", d.components},
                        {"footprint_bytes", d.footprint_bytes},
                        {"c2d_bytes", d.c2d_bytes},
                        {"d2c_bytes", d.d2c_bytes},
                        {"wram_dma_bytes", d.wram_dma_bytes},
                        {"comp", ledger_to_json(d.comp)},
                        {"modeled_units", {{kPhaseC2D, u.c2d}, {kPhaseComp, u.comp}, {kPhaseD2C, u.d2c}}}});
    }
    return {{"n_qubits", trace.n_qubits},
            {"dpus", std::move(dpus)},
            {"totals",
             {{"c2d_bytes", trace.total_c2d_bytes()},
              {"d2c_bytes", trace.total_d2c_bytes()},
              {"footprint_bytes", trace.total_footprint_bytes()},
              {"comp", ledger_to_json(trace.total_comp())},
              {"recon_ops", trace.recon_ops},
              {"recon_bytes", trace.recon_bytes}}},
            {"inter_dpu_messages", trace.inter_dpu_messages}};
}

json cost_to_json(const CostReport& report) {
    json phases = json::array();
    for (const auto& p : report.phases) phases.push_back({{"name", p.name}, {"units", p.units}, {"fraction", p.fraction}});
    json dpus = json::array();
    for (const auto& d : report.dpus)
        dpus.push_back({{"dpu_id", d.dpu_id},
                        {"components", d.components},
                        {"footprint_bytes", d.footprint_bytes},
                        {"busy_units", d.busy_units},
                        {"utilization", d.utilization}});
    return {{"unit", "model"},
            {"phases", std::move(phases)},
            {"total_units", report.total_units},
            {"total_footprint_bytes", report.total_footprint_bytes},
            {"total_transfer_bytes", report.total_transfer_bytes},
            {"dpus", std::move(dpus)}};
}

std::string trace_csv(const ExecutionTrace& trace, const DpuConfig& cfg) {
    std::ostringstream os;
    os << "dpu_id,phase,bytes,int_ops,float_ops,modeled_units\n";
    for (const auto& d : trace.dpus) {
        const PhaseUnits u = phase_units(d, cfg);
        os << d.dpu_id << ',' << kPhaseC2D << ',' << d.c2d_bytes << ",0,0," << fmt_units(u.c2d) << '\n';
        os << d.dpu_id << ',' << kPhaseComp << ',' << d.wram_dma_bytes << ',' << d.comp.native_ops() << ','
           << d.comp.emulated_float_ops << ',' << fmt_units(u.comp) << '\n';
        os << d.dpu_id << ',' << kPhaseD2C << ',' << d.d2c_bytes << ",0,0," << fmt_units(u.d2c) << '\n';
    }
    os << "host," << kPhaseRecon << ',' << trace.recon_bytes << ',' << trace.recon_ops << ",0,"
       << fmt_units(recon_units(trace, cfg)) << '\n';
    return os.str();
}

DpuConfig config_from_json(const json& j, DpuConfig base) {
    if (!j.is_object()) throw InvalidArgument("DPU config must be a JSON object");
    static const std::set<std::string> known = {
        "mram_bytes",         "wram_bytes",        "iram_bytes",        "max_dpus",
        "bytes_per_amplitude", "int_op_cost",      "float_emu_cost",    "c2d_bytes_per_unit",
        "d2c_bytes_per_unit", "recon_op_cost",     "wram_dma_bytes_per_unit", "parallelism",
        "return_probabilities_only", "host_max_qubits", "quantize_max_qubits"};
    for (const auto& [key, _] : j.items())
        if (!known.contains(key)) throw InvalidArgument("DPU config: unknown key '" + key + "'");
    try {
        auto take = [&](const char* key, auto& field) {
            if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
        };
        take("mram_bytes", base.mram_bytes);
        take("wram_bytes", base.wram_bytes);
        take("iram_bytes", base.iram_bytes);
        take("max_dpus", base.max_dpus);
        take("bytes_per_amplitude", base.bytes_per_amplitude);
        take("int_op_cost", base.int_op_cost);
        take("float_emu_cost", base.float_emu_cost);
        take("c2d_bytes_per_unit", base.c2d_bytes_per_unit);
        take("d2c_bytes_per_unit", base.d2c_bytes_per_unit);
        take("recon_op_cost", base.recon_op_cost);
        take("wram_dma_bytes_per_unit", base.wram_dma_bytes_per_unit);
        take("parallelism", base.parallelism);
        take("return_probabilities_only", base.return_probabilities_only);
        take("host_max_qubits", base.host_max_qubits);
        take("quantize_max_qubits", base.quantize_max_qubits);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("DPU config: ") + e.what());
    }
    base.validate();
    return base;
}

json config_to_json(const DpuConfig& c) {
    return {{"mram_bytes", c.mram_bytes},
            {"wram_bytes", c.wram_bytes},
            {"iram_bytes", c.iram_bytes},
            {"max_dpus", c.max_dpus},
            {"bytes_per_amplitude", c.bytes_per_amplitude},
            {"int_op_cost", c.int_op_cost},
            {"float_emu_cost", c.float_emu_cost},
            {"c2d_bytes_per_unit", c.c2d_bytes_per_unit},
            {"d2c_bytes_per_unit", c.d2c_bytes_per_unit},
            {"recon_op_cost", c.recon_op_cost},
            {"wram_dma_bytes_per_unit", c.wram_dma_bytes_per_unit},
            {"parallelism", c.parallelism},
            {"return_probabilities_only", c.return_probabilities_only},
            {"host_max_qubits", c.host_max_qubits},
            {"quantize_max_qubits", c.quantize_max_qubits}};
}

}  // namespace pimsim

#pragma once

#include <string>

#include <json.hpp>

#include "pimsim/oracle.hpp"
#include "pimsim/pim_exec.hpp"

namespace pimsim {

using nlohmann::json;

/// {"n_qubits", "s", "k", "nums": [[re, im], ...], "probabilities": ["p/q", ...]}
json state_to_json(const QState& state, bool with_probabilities = true);
/// Inverse of state_to_json; probabilities, if present, are ignored. Throws
/// InvalidArgument on malformed input or a length that is not 2^n_qubits.
QState state_from_json(const json& j);

/// {"n_qubits", "amps": [[re, im], ...]}
json float_state_to_json(const FloatState& state);

json step_to_json(const ProgramStep& step);
json program_to_json(const LoweredProgram& program);
json plan_to_json(const PartitionPlan& plan);
json ledger_to_json(const KernelLedger& ledger);
json trace_to_json(const ExecutionTrace& trace, const DpuConfig& cfg);
json cost_to_json(const CostReport& report);

/// Columns dpu_id, phase, bytes, int_ops, float_ops, modeled_units; three
/// rows per DPU and one host row for reconstruction.
std::string trace_csv(const ExecutionTrace& trace, const DpuConfig& cfg);

/// Overrides the fields present in `j` on top of `base`, then validates.
/// Unknown keys are rejected.
DpuConfig config_from_json(const json& j, DpuConfig base = {});
json config_to_json(const DpuConfig& cfg);

}  // namespace pimsim

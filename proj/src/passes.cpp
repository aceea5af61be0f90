#include "pimsim/passes.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "pimsim/intstate.hpp"

namespace pimsim {

namespace {

// A maximal run of 1-qubit gates on one qubit. It may be emitted anywhere in
// [lo, hi]: after its last gate, before the next op on its qubit.
struct Block {
    Qubit qubit = 0;
    std::vector<std::size_t> gates;
    std::size_t lo = 0;
    std::size_t hi = 0;
};

struct Segment {
    std::optional<IntGateMatrix> matrix;  // set for exact segments
    std::size_t first = 0;                // index into Block::gates
    std::size_t count = 0;
};

// Greedy longest-prefix segmentation of a block into exactly representable
// products. A gate with no exact form on its own becomes a 1-gate float segment.
std::vector<Segment> segment_block(const CircuitIR& circuit, const Block& block) {
    std::vector<Segment> out;
    std::size_t i = 0;
    while (i < block.gates.size()) {
        ComplexMatrix running = ComplexMatrix::identity(2);
        std::optional<IntGateMatrix> best;
        std::size_t best_len = 0;
        for (std::size_t j = i; j < block.gates.size(); ++j) {
            running = gate_unitary(circuit.ops[block.gates[j]].gate) * running;
            if (auto form = int_form_of(running)) {
                running = form->to_complex();
                best = std::move(form);
                best_len = j - i + 1;
            }
        }
        if (best) {
            best->operands = {block.qubit};
            out.push_back({std::move(best), i, best_len});
            i += best_len;
        } else {
            out.push_back({std::nullopt, i, 1});
            ++i;
        }
    }
    return out;
}

bool is_identity(const IntGateMatrix& m) {
    if (m.half_shift != 0) return false;
    for (std::size_t r = 0; r < m.dim; ++r)
        for (std::size_t c = 0; c < m.dim; ++c)
            if (m.at(r, c) != GaussInt(r == c ? 1 : 0)) return false;
    return true;
}

struct Emission {
    std::size_t pos;
    int order;  // 0: fused block, 1: the source op at pos
    Qubit qubit;
    ProgramStep step;
};

}  // namespace

LoweredProgram lower_naive(const CircuitIR& circuit) {
    LoweredProgram p;
    p.n_qubits = circuit.n_qubits;
    for (const auto& op : circuit.ops) p.steps.emplace_back(FloatEmuApply{op.gate, op.qubits});
    p.recount();
    return p;
}

LoweredProgram merge_gates(const CircuitIR& circuit) {
    const auto violations = validate(circuit);
    if (!violations.empty()) throw InvalidArgument("merge_gates: " + violations.front().reason);

    const std::size_t n_ops = circuit.ops.size();
    std::vector<Block> blocks;
    std::vector<std::optional<Block>> pending(circuit.n_qubits);
    std::vector<Emission> emissions;

    auto close = [&](Qubit q, std::size_t hi) {
        if (!pending[q]) return;
        pending[q]->hi = hi;
        blocks.push_back(std::move(*pending[q]));
        pending[q].reset();
    };

    for (std::size_t idx = 0; idx < n_ops; ++idx) {
        const GateOp& op = circuit.ops[idx];
        if (op.qubits.size() == 1) {
            auto& b = pending[op.qubits[0]];
            if (!b) b = Block{op.qubits[0], {}, 0, 0};
            b->gates.push_back(idx);
            b->lo = idx + 1;
            continue;
        }
        for (Qubit q : op.qubits) close(q, idx);
        IntGateMatrix m = *gate_int_form(op.gate);
        m.operands = op.qubits;
        emissions.push_back({idx, 1, op.qubits[0], IntMatrixApply{std::move(m)}});
    }
    for (Qubit q = 0; q < circuit.n_qubits; ++q) close(q, n_ops);

    LoweredProgram prog;
    prog.n_qubits = circuit.n_qubits;

    // Fuse each block; remember single-matrix blocks with odd half-shift.
    std::vector<std::vector<Segment>> fused(blocks.size());
    std::vector<std::size_t> odd;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        fused[b] = segment_block(circuit, blocks[b]);
        for (const auto& seg : fused[b])
            if (seg.count > 1) prog.stats.fused_gates += seg.count;
        if (fused[b].size() == 1 && fused[b][0].matrix && fused[b][0].matrix->half_shift % 2 == 1) odd.push_back(b);
    }

    // Pair odd blocks, earliest deadline first; partner is the earliest-deadline
    // odd block on another qubit whose placement window overlaps.
    auto by_deadline = [&](std::size_t a, std::size_t b) {
        return std::tie(blocks[a].hi, blocks[a].qubit) < std::tie(blocks[b].hi, blocks[b].qubit);
    };
    std::sort(odd.begin(), odd.end(), by_deadline);
    std::vector<std::optional<std::size_t>> partner(blocks.size());
    for (std::size_t i = 0; i < odd.size(); ++i) {
        const std::size_t a = odd[i];
        if (partner[a]) continue;
        for (std::size_t j = i + 1; j < odd.size(); ++j) {
            const std::size_t b = odd[j];
            if (partner[b] || blocks[b].qubit == blocks[a].qubit) continue;
            if (std::max(blocks[a].lo, blocks[b].lo) > std::min(blocks[a].hi, blocks[b].hi)) continue;
            partner[a] = b;
            partner[b] = a;
            break;
        }
    }

    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Block& blk = blocks[b];
        if (partner[b]) {
            const std::size_t o = *partner[b];
            if (o < b) continue;
            const Block& other = blocks[o];
            const bool mine_low = blk.qubit < other.qubit;
            const IntGateMatrix& low = mine_low ? *fused[b][0].matrix : *fused[o][0].matrix;
            const IntGateMatrix& high = mine_low ? *fused[o][0].matrix : *fused[b][0].matrix;
            emissions.push_back({std::min(blk.hi, other.hi), 0, std::min(blk.qubit, other.qubit),
                                 IntMatrixApply{kron(low, high)}});
            ++prog.stats.merged_pairs;
            continue;
        }
        for (const auto& seg : fused[b]) {
            if (seg.matrix) {
                if (is_identity(*seg.matrix)) {
                    ++prog.stats.identities_dropped;
                    continue;
                }
                emissions.push_back({blk.hi, 0, blk.qubit, IntMatrixApply{*seg.matrix}});
            } else {
                const GateOp& op = circuit.ops[blk.gates[seg.first]];
                emissions.push_back({blk.hi, 0, blk.qubit, FloatEmuApply{op.gate, op.qubits}});
            }
        }
    }

    std::stable_sort(emissions.begin(), emissions.end(), [](const Emission& a, const Emission& b) {
        return std::tie(a.pos, a.order, a.qubit) < std::tie(b.pos, b.order, b.qubit);
    });
    for (auto& e : emissions) prog.steps.push_back(std::move(e.step));
    prog.recount();
    return prog;
}

LoweredProgram lower_permutations(const LoweredProgram& program) {
    LoweredProgram out;
    out.n_qubits = program.n_qubits;
    out.scale_k = program.scale_k;
    out.stats = program.stats;
    for (const auto& step : program.steps) {
        if (const auto* f = std::get_if<FloatEmuApply>(&step); f && is_permutation_kind(f->gate.kind)) {
            out.steps.emplace_back(make_perm(f->gate.kind, f->qubits));
            ++out.stats.permutations_lowered;
        } else if (const auto* m = std::get_if<IntMatrixApply>(&step); m && m->matrix.is_permutation()) {
            PermApply p{std::nullopt, m->matrix.operands, m->matrix.permutation_image()};
            for (GateKind k : kAllGateKinds) {
                if (!is_permutation_kind(k) || gate_arity(k) != p.qubits.size()) continue;
                if (make_perm(k, p.qubits).image == p.image) {
                    p.kind = k;
                    break;
                }
            }
            out.steps.emplace_back(std::move(p));
            ++out.stats.permutations_lowered;
        } else {
            out.steps.push_back(step);
        }
    }
    out.recount();
    return out;
}

unsigned quantize_program(const LoweredProgram& program, std::size_t max_qubits) {
    if (program.n_qubits > max_qubits)
        throw CapacityError("circuit too large for quantization analysis (" + std::to_string(program.n_qubits) +
                            " > " + std::to_string(max_qubits) + " qubits)");
    // One canonicalized run at scale 1. Scaling is linear, so the shortfall of
    // factors of two at each prefix is floor(s_canonical / 2); k is its maximum.
    QState state = init_state(program.n_qubits, 0, max_qubits);
    KernelLedger ledger;
    unsigned k = 0;
    run_program(state, program, ledger, [&](std::size_t, const QState& s) { k = std::max(k, s.half_shift / 2); });
    return k;
}

unsigned quantize(const CircuitIR& circuit, std::size_t max_qubits) {
    return quantize_program(lower_permutations(merge_gates(circuit)), max_qubits);
}

std::size_t PartitionPlan::dpus_used() const {
    std::vector<std::size_t> ids = assignment;
    std::sort(ids.begin(), ids.end());
    return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

PartitionPlan partition(const CircuitIR& circuit) {
    const auto violations = validate(circuit);
    if (!violations.empty()) throw InvalidArgument("partition: " + violations.front().reason);

    std::vector<Qubit> parent(circuit.n_qubits);
    std::iota(parent.begin(), parent.end(), Qubit{0});
    auto find = [&](Qubit x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& op : circuit.ops)
        for (std::size_t i = 1; i < op.qubits.size(); ++i) {
            const Qubit a = find(op.qubits[0]), b = find(op.qubits[i]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }

    PartitionPlan plan;
    plan.n_qubits = circuit.n_qubits;
    std::vector<std::size_t> comp_of_root(circuit.n_qubits, SIZE_MAX);
    std::vector<std::size_t> comp_of(circuit.n_qubits);
    std::vector<Qubit> local_of(circuit.n_qubits);
    for (Qubit q = 0; q < circuit.n_qubits; ++q) {
        const Qubit r = find(q);
        if (comp_of_root[r] == SIZE_MAX) {
            comp_of_root[r] = plan.components.size();
            plan.components.emplace_back();
        }
        Component& c = plan.components[comp_of_root[r]];
        comp_of[q] = comp_of_root[r];
        local_of[q] = static_cast<Qubit>(c.qubits.size());
        c.qubits.push_back(q);
    }
    for (std::size_t i = 0; i < plan.components.size(); ++i) {
        Component& c = plan.components[i];
        c.circuit.n_qubits = c.qubits.size();
        c.circuit.name = circuit.name + "#" + std::to_string(i);
        c.circuit.metadata = circuit.metadata;
    }
    for (const auto& op : circuit.ops) {
        Component& c = plan.components[comp_of[op.qubits[0]]];
        GateOp local = op;
        for (auto& q : local.qubits) q = local_of[q];
        c.circuit.ops.push_back(std::move(local));
    }
    return plan;
}

PartitionPlan whole_plan(const CircuitIR& circuit) {
    PartitionPlan plan;
    plan.n_qubits = circuit.n_qubits;
    Component c;
    c.qubits.resize(circuit.n_qubits);
    std::iota(c.qubits.begin(), c.qubits.end(), Qubit{0});
    c.circuit = circuit;
    plan.components.push_back(std::move(c));
    return plan;
}

PartitionPlan pack(PartitionPlan plan, std::size_t num_dpus, const DpuConfig& cfg) {
    if (num_dpus == 0) throw InvalidArgument("pack: need at least one DPU");
    if (num_dpus > cfg.max_dpus)
        throw CapacityError("pack: " + std::to_string(num_dpus) + " DPUs requested, system has " +
                            std::to_string(cfg.max_dpus));
    std::vector<std::size_t> order(plan.components.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto bytes = [&](std::size_t c) { return cfg.state_bytes(plan.components[c].qubits.size()); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bytes(a) > bytes(b); });

    std::vector<std::uint64_t> load(num_dpus, 0);
    plan.assignment.assign(plan.components.size(), 0);
    for (std::size_t c : order) {
        const std::uint64_t need = bytes(c);
        if (need > cfg.mram_bytes)
            throw CapacityError("component exceeds MRAM: " + std::to_string(plan.components[c].qubits.size()) +
                                "-qubit state needs " + std::to_string(need) + " bytes");
        std::optional<std::size_t> best;
        for (std::size_t d = 0; d < num_dpus; ++d) {
            if (load[d] > cfg.mram_bytes - need) continue;
            if (!best || load[d] < load[*best]) best = d;
        }
        if (!best) throw CapacityError("insufficient DPUs: components do not fit in " + std::to_string(num_dpus));
        load[*best] += need;
        plan.assignment[c] = *best;
    }
    plan.num_dpus = num_dpus;
    return plan;
}

}  // namespace pimsim

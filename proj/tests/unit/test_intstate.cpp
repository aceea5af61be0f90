#include <doctest.h>

#include <algorithm>

#include "pimsim/benchmarks.hpp"
#include "pimsim/intstate.hpp"
#include "pimsim/passes.hpp"
#include "support.hpp"

using namespace pimsim;

namespace {

QState make_state(std::vector<GaussInt> nums, unsigned s, unsigned k = 0) {
    QState st;
    st.nums = std::move(nums);
    st.n_qubits = static_cast<std::size_t>(std::countr_zero(st.nums.size()));
    st.half_shift = s;
    st.scale_k = k;
    return st;
}

IntGateMatrix h_on(Qubit q) { return IntGateMatrix(2, {1, 1, 1, -1}, 1, {q}); }

}  // namespace

TEST_CASE("init_state") {
    auto s = init_state(2, 0);
    CHECK(s.nums == std::vector<GaussInt>{1, 0, 0, 0});
    CHECK(s.half_shift == 0);
    s = init_state(4, 2);
    CHECK(s.nums[0] == GaussInt(4));
    CHECK(std::all_of(s.nums.begin() + 1, s.nums.end(), [](const GaussInt& z) { return z.is_zero(); }));
    s = init_state(1, 1);
    CHECK(s.nums == std::vector<GaussInt>{2, 0});
    CHECK(normalization_holds(s));
    CHECK_THROWS_AS(init_state(27, 0), CapacityError);
    CHECK_THROWS_AS(init_state(0, 0), InvalidArgument);
}

TEST_CASE("apply_int_matrix examples") {
    KernelLedger l;
    auto s = init_state(1, 0);
    apply_int_matrix(s, h_on(0), l);
    CHECK(s.nums == std::vector<GaussInt>{1, 1});
    CHECK(s.half_shift == 1);
    CHECK(normalization_holds(s));

    // 2I with d = 2 on [1,1], s = 1: raw [2,2], s = 3 canonicalizes back
    apply_int_matrix(s, IntGateMatrix(2, {2, 0, 0, 2}, 2, {0}), l);
    CHECK(s.nums == std::vector<GaussInt>{1, 1});
    CHECK(s.half_shift == 1);
    CHECK(amplitudes_equal(s, make_state({2, 2}, 3)));

    auto two = init_state(2, 0);
    const IntGateMatrix hry(4, {1, -1, 1, -1, 1, 1, 1, 1, 1, -1, -1, 1, 1, 1, -1, -1}, 2, {0, 1});
    apply_int_matrix(two, hry, l);
    CHECK(two.nums == std::vector<GaussInt>{1, 1, 1, 1});
    CHECK(two.half_shift == 2);
    CHECK_THROWS_AS(apply_int_matrix(two, h_on(2), l), InvalidArgument);
}

TEST_CASE("permutation examples") {
    KernelLedger l;
    auto s = make_state({GaussInt(3, 1), GaussInt(-2)}, 0);
    apply_permutation(s, make_perm(GateKind::X, {0}), l);
    CHECK(s.nums == std::vector<GaussInt>{GaussInt(-2), GaussInt(3, 1)});

    const std::vector<GaussInt> a = {10, 11, 12, 13};  // index bit 0 = q0
    auto c = make_state(a, 0);
    apply_permutation(c, make_perm(GateKind::CNOT, {0, 1}), l);
    CHECK(c.nums == std::vector<GaussInt>{10, 13, 12, 11});

    auto w = make_state(a, 0);
    apply_permutation(w, make_perm(GateKind::SWAP, {0, 1}), l);
    CHECK(w.nums == std::vector<GaussInt>{10, 12, 11, 13});
    CHECK(l.element_swaps == 3);
    CHECK(l.emulated_float_ops == 0);
}

TEST_CASE("permutations match dense 0/1 matrices") {
    std::mt19937_64 rng(2024);
    const std::vector<GateKind> kinds = {GateKind::X, GateKind::CNOT, GateKind::SWAP, GateKind::CCX};
    for (int trial = 0; trial < 300; ++trial) {
        const auto c = testsupport::random_circuit(rng, 3, 8, kinds);
        std::vector<GaussInt> v(8);
        for (auto& z : v) z = GaussInt(static_cast<std::int64_t>(rng() % 41) - 20, static_cast<std::int64_t>(rng() % 41) - 20);
        auto s = make_state(v, 0);
        KernelLedger l;
        for (const auto& op : c.ops) {
            apply_permutation(s, make_perm(op.gate.kind, op.qubits), l);
            v = testsupport::mat_vec(testsupport::dense_permutation(op.gate.kind, op.qubits, 3), v);
        }
        CHECK(s.nums == v);
    }
}

TEST_CASE("permutations preserve the numerator multiset") {
    KernelLedger l;
    auto s = make_state({1, 2, 3, 4, 5, 6, 7, 8}, 0);
    auto before = s.nums;
    apply_permutation(s, make_perm(GateKind::CCX, {2, 0, 1}), l);
    auto after = s.nums;
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    CHECK(before == after);
}

TEST_CASE("matrix application is linear") {
    std::mt19937_64 rng(8);
    const IntGateMatrix m(4, {1, -1, 1, -1, 1, 1, 1, 1, 1, -1, -1, 1, 1, 1, -1, -1}, 2, {2, 0});
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<GaussInt> u(8), v(8), sum(8);
        for (std::size_t i = 0; i < 8; ++i) {
            u[i] = GaussInt(static_cast<std::int64_t>(rng() % 21) - 10, static_cast<std::int64_t>(rng() % 21) - 10);
            v[i] = GaussInt(static_cast<std::int64_t>(rng() % 21) - 10, static_cast<std::int64_t>(rng() % 21) - 10);
            sum[i] = u[i] + v[i];
        }
        QState su = make_state(u, 0), sv = make_state(v, 0), ss = make_state(sum, 0);
        KernelLedger l;
        apply_int_matrix(su, m, l);
        apply_int_matrix(sv, m, l);
        apply_int_matrix(ss, m, l);
        // bring all three to half_shift 2
        for (QState* s : {&su, &sv, &ss})
            while (s->half_shift < 2) {
                for (auto& z : s->nums) z = z.shl(1);
                s->half_shift += 2;
            }
        REQUIRE(su.half_shift == ss.half_shift);
        REQUIRE(sv.half_shift == ss.half_shift);
        for (std::size_t i = 0; i < 8; ++i) CHECK(su.nums[i] + sv.nums[i] == ss.nums[i]);
    }
}

TEST_CASE("float emulation gives the exact result at a float cost") {
    KernelLedger exact, emu;
    auto a = init_state(1, 0), b = init_state(1, 0);
    apply_int_matrix(a, h_on(0), exact);
    apply_float_emu(b, FloatEmuApply{{GateKind::H, std::nullopt}, {0}}, emu);
    CHECK(a.nums == b.nums);
    CHECK(a.half_shift == b.half_shift);
    CHECK(emu.emulated_float_ops > 0);
    CHECK(exact.emulated_float_ops == 0);
    CHECK(exact.muls == 0);
    CHECK(exact.divs == 0);

    KernelLedger l;
    auto x1 = make_state({GaussInt(1, 2), 5}, 0), x2 = x1;
    apply_float_emu(x1, FloatEmuApply{{GateKind::X, std::nullopt}, {0}}, l);
    apply_permutation(x2, make_perm(GateKind::X, {0}), l);
    CHECK(x1.nums == x2.nums);
}

TEST_CASE("T on a basis state is exact, on a superposition it is refused") {
    KernelLedger l;
    auto s = init_state(1, 0);
    apply_permutation(s, make_perm(GateKind::X, {0}), l);
    apply_float_emu(s, FloatEmuApply{{GateKind::T, std::nullopt}, {0}}, l);
    CHECK(s.nums[1] == GaussInt(1, 1));
    CHECK(s.half_shift == 1);
    CHECK(normalization_holds(s));
    auto sup = init_state(1, 0);
    apply_int_matrix(sup, h_on(0), l);
    CHECK_THROWS_AS(apply_float_emu(sup, FloatEmuApply{{GateKind::T, std::nullopt}, {0}}, l), ContractViolation);
}

TEST_CASE("probabilities are exact") {
    auto p = probabilities(make_state({1, 1}, 1));
    CHECK(p[0].to_string() == "1/2");
    CHECK(p[1].to_string() == "1/2");
    p = probabilities(make_state({4, 0, 0, 0}, 0, 2));
    CHECK(p[0].to_string() == "1/1");
    CHECK(p[3].to_string() == "0/1");
}

TEST_CASE("BV_4 lands on the secret") {
    BenchmarkParams bp;
    bp.secret = "111";
    const auto c = gen_benchmark(Family::BV, 4, bp);
    const auto prog = lower_permutations(merge_gates(c));
    auto s = init_state(4, quantize_program(prog));
    KernelLedger l;
    run_program(s, prog, l);
    const auto p = probabilities(s);
    // ancilla q3 is left in |->, so the data bits 111 carry all the weight
    CHECK(p[0b0111].to_string() == "1/2");
    CHECK(p[0b1111].to_string() == "1/2");
    const auto oracle = testsupport::dense_simulate(c);
    CHECK(testsupport::max_dev(amplitudes(s), oracle) <= 1e-9);
}

TEST_CASE("normalization holds after every step of every benchmark") {
    for (Family f : kAllFamilies)
        for (std::size_t n : {2, 4, 8}) {
            const auto c = gen_benchmark(f, f == Family::HS ? n / 2 : n);
            for (const auto& prog : {lower_naive(c), merge_gates(c), lower_permutations(merge_gates(c))}) {
                auto s = init_state(c.n_qubits, 0);
                KernelLedger l;
                bool ok = true;
                run_program(s, prog, l, [&](std::size_t, const QState& st) { ok = ok && normalization_holds(st); });
                CHECK(ok);
            }
        }
}

TEST_CASE("integer-only programs never touch the float counters") {
    for (Family f : kAllFamilies) {
        const auto c = gen_benchmark(f, f == Family::HS ? 4 : 8);
        const auto prog = lower_permutations(merge_gates(c));
        REQUIRE(prog.stats.float_emu_steps == 0);
        auto s = init_state(c.n_qubits, prog.scale_k);
        KernelLedger l;
        run_program(s, prog, l);
        CHECK(l.emulated_float_ops == 0);
        CHECK(l.muls == 0);
        CHECK(l.divs == 0);
    }
}

TEST_CASE("amplitudes_equal ignores how the denominator is split") {
    CHECK(amplitudes_equal(make_state({1, 1}, 1), make_state({2, 2}, 3)));
    CHECK(amplitudes_equal(make_state({2, 0}, 0, 1), make_state({1, 0}, 0)));
    CHECK_FALSE(amplitudes_equal(make_state({1, 1}, 1), make_state({1, -1}, 1)));
}

TEST_CASE("canonicalize halves only when every numerator is even") {
    auto s = make_state({4, 2}, 4);
    canonicalize(s);
    CHECK(s.nums == std::vector<GaussInt>{2, 1});
    CHECK(s.half_shift == 2);
    auto t = make_state({2, 2}, 1);
    canonicalize(t);
    CHECK(t.half_shift == 1);
}

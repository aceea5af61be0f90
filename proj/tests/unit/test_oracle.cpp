#include <doctest.h>

#include "pimsim/benchmarks.hpp"
#include "pimsim/oracle.hpp"
#include "support.hpp"

using namespace pimsim;

TEST_CASE("H on one qubit") {
    CircuitIR c;
    c.n_qubits = 1;
    c.add(GateKind::H, {0});
    const auto s = simulate(c);
    const double r = 1 / std::sqrt(2.0);
    CHECK(std::abs(s.amps[0] - Complex(r)) <= 1e-12);
    CHECK(std::abs(s.amps[1] - Complex(r)) <= 1e-12);
}

TEST_CASE("BV_4 with secret 111") {
    BenchmarkParams p;
    p.secret = "111";
    const auto s = simulate(gen_benchmark(Family::BV, 4, p));
    double data_111 = 0;
    for (std::size_t j = 0; j < s.dim(); ++j)
        if ((j & 0b111) == 0b111) data_111 += std::norm(s.amps[j]);
    CHECK(data_111 == doctest::Approx(1.0).epsilon(1e-9));
    p.final_layer_width = 4;
    const auto wide = simulate(gen_benchmark(Family::BV, 4, p));
    CHECK(std::norm(wide.amps[0b1111]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("XOR_4 leaves |0000> alone") {
    const auto s = simulate(gen_benchmark(Family::XOR, 4));
    CHECK(s.amps[0] == Complex(1.0));
    for (std::size_t j = 1; j < s.dim(); ++j) CHECK(s.amps[j] == Complex(0.0));
}

TEST_CASE("compare examples") {
    const auto s = simulate(gen_benchmark(Family::QRNG, 3));
    CHECK(compare(s, s, 0).max_deviation == 0.0);
    const auto c = compare(std::vector<Complex>{1, 0}, std::vector<Complex>{0, 1}, 1e-9);
    CHECK(c.max_deviation == 1.0);
    CHECK_FALSE(c.pass);
    CHECK_THROWS_AS(compare(std::vector<Complex>{1, 0}, std::vector<Complex>{1, 0, 0, 0}, 1e-9), InvalidArgument);

    QState q = init_state(1, 0);
    q.nums = {1, 1};
    q.half_shift = 1;
    CircuitIR h;
    h.n_qubits = 1;
    h.add(GateKind::H, {0});
    CHECK(compare(q, simulate(h), 1e-12).pass);
}

TEST_CASE("agrees with dense matrices and keeps the norm") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto kinds = testsupport::exact_kinds();
        kinds.push_back(GateKind::T);
        kinds.push_back(GateKind::Tdg);
        const auto c = testsupport::random_circuit(rng, 4, 20, kinds);
        const auto s = simulate(c);
        CHECK(testsupport::max_dev(s.amps, testsupport::dense_simulate(c)) <= 1e-12);
        CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("benchmarks keep the norm") {
    for (Family f : kAllFamilies)
        for (std::size_t n : {2, 4, 8, 12}) {
            const auto s = simulate(gen_benchmark(f, f == Family::HS ? n / 2 : n));
            CHECK(std::abs(s.norm_squared() - 1.0) <= 1e-9);
        }
}

TEST_CASE("limits and invalid input") {
    CHECK_THROWS_AS(simulate(gen_benchmark(Family::QRNG, 12), 10), CapacityError);
    CircuitIR bad;
    bad.n_qubits = 1;
    bad.add(GateKind::H, {3});
    CHECK_THROWS_AS(simulate(bad), InvalidArgument);
}

TEST_CASE("gate order matters") {
    CircuitIR a, b;
    a.n_qubits = b.n_qubits = 1;
    a.add(GateKind::H, {0}).add(GateKind::S, {0});
    b.add(GateKind::S, {0}).add(GateKind::H, {0});
    CHECK(compare(simulate(a), simulate(b), 1e-9).max_deviation > 0.1);
}

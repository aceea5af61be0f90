#include <doctest.h>

#include "pimsim/benchmarks.hpp"
#include "pimsim/pipeline.hpp"
#include "pimsim/serialize.hpp"

using namespace pimsim;

TEST_CASE("state dump round-trips") {
    const auto run = run_pim(gen_benchmark(Family::BV, 4), PassSet::parse("gm,rs"), 1, DpuConfig{});
    const json j = state_to_json(run.state);
    CHECK(j["s"] == run.state.half_shift);
    CHECK(j["k"] == run.state.scale_k);
    CHECK(j["nums"].size() == 16);
    CHECK(j["probabilities"][0b0111] == "1/2");
    const QState back = state_from_json(json::parse(j.dump()));
    CHECK(back.nums == run.state.nums);
    CHECK(back.half_shift == run.state.half_shift);
    CHECK(back.n_qubits == 4);
}

TEST_CASE("malformed state dumps are rejected") {
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"s":0,"k":0,"nums":[[1,0],[0,0],[0,0]]})")), InvalidArgument);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"s":0,"nums":[[1,0],[0,0]]})")), InvalidArgument);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"s":0,"k":0,"nums":[[1],[0,0]]})")), InvalidArgument);
    CHECK_THROWS_AS(state_from_json(json::parse(R"({"s":0,"k":0,"nums":[["a",0],[0,0]]})")), InvalidArgument);
}

TEST_CASE("trace csv columns and phase names") {
    const DpuConfig cfg;
    const auto run = run_pim(gen_benchmark(Family::QRNG, 4), PassSet::parse("gm,rs,vp"), 2, cfg);
    const std::string csv = trace_csv(run.execution.trace, cfg);
    CHECK(csv.rfind("dpu_id,phase,bytes,int_ops,float_ops,modeled_units\n", 0) == 0);
    CHECK(csv.find(",C-to-D Tran.,") != std::string::npos);
    CHECK(csv.find(",Comp.,") != std::string::npos);
    CHECK(csv.find(",D-to-C Tran.,") != std::string::npos);
    CHECK(csv.find("host,Recon.,") != std::string::npos);
    std::size_t lines = 0;
    for (char ch : csv) lines += ch == '\n';
    CHECK(lines == 1 + 3 * 2 + 1);
}

TEST_CASE("program and plan json") {
    const DpuConfig cfg;
    const auto compiled = compile(gen_benchmark(Family::XOR, 4), PassSet::parse("rs"), 1, cfg);
    const json p = program_to_json(compiled.programs[0]);
    CHECK(p["steps"].size() == 3);
    CHECK(p["steps"][0]["type"] == "PermApply");
    CHECK(p["steps"][0]["gate"] == "CNOT");
    const json plan = plan_to_json(compiled.plan);
    CHECK(plan["components"].size() == 1);
    CHECK(plan["components"][0]["dpu"] == 0);
}

TEST_CASE("config overrides") {
    const auto cfg = config_from_json(json::parse(R"({"float_emu_cost": 64, "parallelism": 2})"));
    CHECK(cfg.float_emu_cost == 64);
    CHECK(cfg.parallelism == 2);
    CHECK(cfg.mram_bytes == DpuConfig{}.mram_bytes);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"mram": 1})")), InvalidArgument);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"float_emu_cost": 0.5})")), InvalidArgument);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"mram_bytes": "big"})")), InvalidArgument);
    CHECK(config_from_json(config_to_json(cfg)).float_emu_cost == 64);
}

// pimsim: generate or parse circuits, lower them, run them on the simulated
// PIM system or the reference simulator, and report the phase breakdown.
//
// Exit codes: 0 ok, 1 input/parse error, 2 capacity, 3 contract violation,
// 4 verification failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "pimsim/benchmarks.hpp"
#include "pimsim/pipeline.hpp"
#include "pimsim/qasm.hpp"
#include "pimsim/serialize.hpp"

using namespace pimsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitContract = 3;
constexpr int kExitVerify = 4;

struct InputOpts {
    std::string bench;
    std::string input;
    std::string secret;
};

struct CommonOpts {
    std::string passes;
    std::size_t dpus = 1;
    std::string format = "json";
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (text.empty() || pos != text.size() || text[0] == '-')
        throw InvalidArgument("bad " + what + " '" + text + "'");
    return static_cast<std::size_t>(v);
}

// family:n[:param...]; a param is key=value (secret, width, bits, bases, seed)
// or, for bv, a bare secret string.
CircuitIR circuit_from_bench(const std::string& selector, const std::string& secret_flag) {
    const auto parts = split(selector, ':');
    if (parts.size() < 2) throw InvalidArgument("benchmark selector must look like family:n[:params]");
    const auto family = family_from_name(parts[0]);
    if (!family) throw InvalidArgument("unknown benchmark family '" + parts[0] + "'");
    const std::size_t n = parse_size(parts[1], "benchmark size");
    BenchmarkParams params;
    for (std::size_t i = 2; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos) {
            if (*family != Family::BV) throw InvalidArgument("bare parameter '" + parts[i] + "' only applies to bv");
            params.secret = parts[i];
            continue;
        }
        const std::string key = parts[i].substr(0, eq), value = parts[i].substr(eq + 1);
        if (key == "secret")
            params.secret = value;
        else if (key == "width")
            params.final_layer_width = parse_size(value, "width");
        else if (key == "bits")
            params.bits = value;
        else if (key == "bases")
            params.bases = value;
        else if (key == "seed")
            params.seed = parse_size(value, "seed");
        else
            throw InvalidArgument("unknown benchmark parameter '" + key + "'");
    }
    if (!secret_flag.empty()) params.secret = secret_flag;
    return gen_benchmark(*family, n, params);
}

struct ParseFailure {
    std::vector<qasm::ParseDiagnostic> diagnostics;
};

CircuitIR load_circuit(const InputOpts& in) {
    if (in.bench.empty() == in.input.empty()) throw InvalidArgument("give exactly one of --bench or --input");
    if (!in.bench.empty()) return circuit_from_bench(in.bench, in.secret);
    if (!in.secret.empty()) throw InvalidArgument("--secret only applies to --bench bv:n");
    if (in.input.size() < 5 || in.input.substr(in.input.size() - 5) != ".qasm")
        throw InvalidArgument("input files must have the .qasm extension");
    std::ifstream f(in.input, std::ios::binary);
    if (!f) throw InvalidArgument("cannot read '" + in.input + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    auto result = qasm::parse(ss.str());
    for (const auto& d : result.diagnostics)
        if (d.severity == qasm::Severity::Warning) std::cerr << in.input << ":" << qasm::format_diagnostic(d) << "\n";
    if (!result.ok()) throw ParseFailure{std::move(result.diagnostics)};
    if (result.circuit->name.empty()) {
        auto slash = in.input.find_last_of('/');
        result.circuit->name = in.input.substr(slash == std::string::npos ? 0 : slash + 1);
        result.circuit->name.resize(result.circuit->name.size() - 5);
    }
    return *result.circuit;
}

DpuConfig load_config() {
    const char* path = std::getenv("PIMSIM_DPU_CONFIG");
    if (!path || !*path) return {};
    std::ifstream f(path);
    if (!f) throw InvalidArgument(std::string("PIMSIM_DPU_CONFIG: cannot read '") + path + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("PIMSIM_DPU_CONFIG: ") + e.what());
    }
    return config_from_json(j);
}

std::string basis_label(std::size_t index, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t q = 0; q < n; ++q)
        if ((index >> q) & 1) s[n - 1 - q] = '1';
    return s;
}

json circuit_summary(const CircuitIR& c) {
    return {{"name", c.name},
            {"n_qubits", c.n_qubits},
            {"ops", c.ops.size()},
            {"single_qubit_gates", c.single_qubit_count()},
            {"multi_qubit_gates", c.multi_qubit_count()}};
}

// Exact sampling: a uniform integer below 2^E against cumulative numerators
// over the common denominator 2^E.
std::map<std::size_t, std::size_t> sample_exact(const std::vector<DyadicRational>& probs, std::size_t count,
                                                std::uint64_t seed) {
    unsigned e = 0;
    for (const auto& p : probs) e = std::max(e, p.exp);
    if (e > 126) throw ContractViolation("probability denominators too large for exact sampling");
    std::vector<unsigned __int128> cumulative;
    unsigned __int128 acc = 0;
    for (const auto& p : probs) {
        acc += p.num << (e - p.exp);
        cumulative.push_back(acc);
    }
    std::mt19937_64 rng(seed);
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t i = 0; i < count; ++i) {
        unsigned __int128 r = (static_cast<unsigned __int128>(rng()) << 64) | rng();
        if (e < 128) r &= (static_cast<unsigned __int128>(1) << e) - 1;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        ++counts[static_cast<std::size_t>(it - cumulative.begin())];
    }
    return counts;
}

std::map<std::size_t, std::size_t> sample_float(const std::vector<double>& probs, std::size_t count,
                                                std::uint64_t seed) {
    std::vector<double> cumulative;
    double acc = 0;
    for (double p : probs) cumulative.push_back(acc += p);
    std::mt19937_64 rng(seed);
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t i = 0; i < count; ++i) {
        const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
        if (it == cumulative.end()) --it;
        ++counts[static_cast<std::size_t>(it - cumulative.begin())];
    }
    return counts;
}

void print_breakdown(std::ostream& os, const CostReport& report) {
    os << "Execution breakdown (model units, not wall-clock)\n";
    os << std::left << std::setw(16) << "phase" << std::right << std::setw(16) << "units" << std::setw(10) << "share"
       << "\n";
    for (const auto& p : report.phases)
        os << std::left << std::setw(16) << p.name << std::right << std::setw(16) << std::fixed << std::setprecision(2)
           << p.units << std::setw(9) << std::setprecision(1) << p.fraction * 100 << "%\n";
    os << std::left << std::setw(16) << "total" << std::right << std::setw(16) << std::setprecision(2)
       << report.total_units << "\n";
    os << "\n" << std::left << std::setw(8) << "dpu" << std::right << std::setw(12) << "components" << std::setw(16)
       << "footprint_B" << std::setw(14) << "utilization\n";
    for (const auto& d : report.dpus)
        os << std::left << std::setw(8) << d.dpu_id << std::right << std::setw(12) << d.components << std::setw(16)
           << d.footprint_bytes << std::setw(13) << std::setprecision(3) << d.utilization << "\n";
    os.unsetf(std::ios::fixed);
}

int cmd_run(const InputOpts& in, const CommonOpts& common, const std::string& engine, std::size_t samples,
            std::optional<std::uint64_t> seed) {
    if (engine != "oracle" && engine != "pim") throw InvalidArgument("--engine must be oracle or pim");
    if (common.format != "json" && common.format != "csv" && common.format != "text")
        throw InvalidArgument("--format must be json, csv or text");
    if (samples > 0 && !seed) throw InvalidArgument("sampling requires an explicit --seed");
    const PassSet passes = PassSet::parse(common.passes);
    if (engine == "oracle" && (passes.gm || passes.rs || passes.vp))
        throw InvalidArgument("passes apply to the pim engine only");
    if (common.format == "csv" && engine != "pim") throw InvalidArgument("csv output is the pim trace");
    const DpuConfig cfg = load_config();
    const CircuitIR circuit = load_circuit(in);
    const std::size_t n = circuit.n_qubits;

    json out = {{"command", "run"}, {"engine", engine}, {"passes", passes.str()}, {"circuit", circuit_summary(circuit)}};
    std::map<std::size_t, std::size_t> counts;
    std::optional<CostReport> report;
    std::vector<std::string> prob_text;

    if (engine == "oracle") {
        const FloatState state = simulate(circuit, cfg.host_max_qubits);
        std::vector<double> probs;
        for (const auto& a : state.amps) probs.push_back(std::norm(a));
        out["probabilities"] = probs;
        out["state"] = float_state_to_json(state);
        for (double p : probs) {
            std::ostringstream os;
            os << std::setprecision(12) << p;
            prob_text.push_back(os.str());
        }
        if (samples) counts = sample_float(probs, samples, *seed);
    } else {
        const CompiledPlan compiled = compile(circuit, passes, common.dpus, cfg);
        const CapacityReport cap = capacity_check(compiled.plan, compiled.programs, cfg);
        for (const auto& w : cap.warnings) std::cerr << "warning: " << w.message << "\n";
        if (!cap.ok()) {
            for (const auto& e : cap.errors) std::cerr << "error: " << e.message << "\n";
            return kExitCapacity;
        }
        const PimRun run = run_pim(circuit, passes, common.dpus, cfg);
        const auto probs = probabilities(run.state);
        for (const auto& p : probs) prob_text.push_back(p.to_string());
        out["num_dpus"] = common.dpus;
        out["probabilities"] = prob_text;
        out["state"] = state_to_json(run.state, false);
        out["plan"] = plan_to_json(run.compiled.plan);
        out["trace"] = trace_to_json(run.execution.trace, cfg);
        report = cost_report(run.execution.trace, cfg);
        out["cost"] = cost_to_json(*report);
        if (common.format == "csv") {
            std::cout << trace_csv(run.execution.trace, cfg);
            return kExitOk;
        }
        if (samples) counts = sample_exact(probs, samples, *seed);
    }
    if (samples) {
        json c = json::object();
        for (const auto& [idx, cnt] : counts) c[basis_label(idx, n)] = cnt;
        out["samples"] = {{"count", samples}, {"seed", *seed}, {"counts", c}};
    }

    if (common.format == "json") {
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    if (common.format == "csv") throw InvalidArgument("csv output is the pim trace");
    std::cout << "circuit " << (circuit.name.empty() ? "(unnamed)" : circuit.name) << ": " << n << " qubits, "
              << circuit.ops.size() << " gates; engine " << engine << ", passes " << passes.str() << "\n\n";
    std::cout << "nonzero probabilities (basis state q" << n - 1 << "..q0)\n";
    for (std::size_t j = 0; j < prob_text.size(); ++j)
        if (prob_text[j] != "0/1" && prob_text[j] != "0") std::cout << "  " << basis_label(j, n) << "  " << prob_text[j] << "\n";
    if (report) {
        std::cout << "\n";
        print_breakdown(std::cout, *report);
    }
    if (samples) {
        std::cout << "\nsamples (seed " << *seed << ")\n";
        for (const auto& [idx, cnt] : counts) std::cout << "  " << basis_label(idx, n) << "  " << cnt << "\n";
    }
    return kExitOk;
}

int cmd_verify(const InputOpts& in, const CommonOpts& common, double tol, const std::string& golden) {
    if (tol < 0) throw InvalidArgument("--tol must be non-negative");
    const PassSet passes = PassSet::parse(common.passes);
    const DpuConfig cfg = load_config();
    const CircuitIR circuit = load_circuit(in);

    const FloatState reference = simulate(circuit, cfg.host_max_qubits);
    const PimRun plain = run_pim(circuit, PassSet{}, common.dpus, cfg);
    const PimRun lowered = run_pim(circuit, passes, common.dpus, cfg);

    json comparisons = json::array();
    double worst = 0;
    auto record = [&](const std::string& a, const std::string& b, const Comparison& c) {
        comparisons.push_back({{"a", a}, {"b", b}, {"max_deviation", c.max_deviation}});
        worst = std::max(worst, c.max_deviation);
    };
    record("oracle", "pim:none", compare(plain.state, reference, tol));
    record("oracle", "pim:" + passes.str(), compare(lowered.state, reference, tol));
    record("pim:none", "pim:" + passes.str(), compare(plain.state, lowered.state, tol));
    if (!golden.empty()) {
        std::ifstream f(golden);
        if (!f) throw InvalidArgument("cannot read golden file '" + golden + "'");
        json j;
        try {
            j = json::parse(f);
        } catch (const json::exception& e) {
            throw InvalidArgument(std::string("golden file: ") + e.what());
        }
        const QState expected = state_from_json(j.contains("state") ? j["state"] : j);
        if (expected.n_qubits != circuit.n_qubits) {
            record("golden", "pim:" + passes.str(), {std::numeric_limits<double>::infinity(), false});
        } else {
            record("golden", "pim:" + passes.str(), compare(lowered.state, expected, tol));
        }
    }
    const bool pass = worst <= tol;
    json out = {{"command", "verify"},
                {"circuit", circuit_summary(circuit)},
                {"passes", passes.str()},
                {"tol", tol},
                {"max_deviation", std::isinf(worst) ? json(nullptr) : json(worst)},
                {"comparisons", comparisons},
                {"pass", pass}};
    if (common.format == "text") {
        std::cout << (pass ? "PASS" : "FAIL") << " max deviation " << std::setprecision(6) << worst << " (tol " << tol
                  << ")\n";
        for (const auto& c : comparisons)
            std::cout << "  " << c["a"].get<std::string>() << " vs " << c["b"].get<std::string>() << ": "
                      << c["max_deviation"].dump() << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return pass ? kExitOk : kExitVerify;
}

int cmd_transpile(const InputOpts& in, const CommonOpts& common) {
    const PassSet passes = PassSet::parse(common.passes);
    const DpuConfig cfg = load_config();
    const CircuitIR circuit = load_circuit(in);
    const CompiledPlan compiled = compile(circuit, passes, common.dpus, cfg);

    ProgramStats total;
    unsigned k = 0;
    json programs = json::array();
    for (const auto& p : compiled.programs) {
        const auto& s = p.stats;
        total.int_matrix_steps += s.int_matrix_steps;
        total.perm_steps += s.perm_steps;
        total.float_emu_steps += s.float_emu_steps;
        total.merged_pairs += s.merged_pairs;
        total.fused_gates += s.fused_gates;
        total.identities_dropped += s.identities_dropped;
        total.odd_residual += s.odd_residual;
        total.permutations_lowered += s.permutations_lowered;
        k = std::max(k, p.scale_k);
        programs.push_back(program_to_json(p));
    }
    json stats = {{"merged_pairs", total.merged_pairs},
                  {"permutations_lowered", total.permutations_lowered},
                  {"component_count", compiled.plan.components.size()},
                  {"quantization_k", k},
                  {"int_matrix_steps", total.int_matrix_steps},
                  {"perm_steps", total.perm_steps},
                  {"float_emu_steps", total.float_emu_steps},
                  {"fused_gates", total.fused_gates},
                  {"identities_dropped", total.identities_dropped},
                  {"odd_residual", total.odd_residual}};
    if (common.format == "text") {
        std::cout << "circuit " << circuit.name << ": " << circuit.n_qubits << " qubits, " << circuit.ops.size()
                  << " gates; passes " << passes.str() << "\n";
        for (const auto& [key, value] : stats.items()) std::cout << "  " << key << " = " << value.dump() << "\n";
        return kExitOk;
    }
    json out = {{"command", "transpile"},
                {"circuit", circuit_summary(circuit)},
                {"passes", passes.str()},
                {"plan", plan_to_json(compiled.plan)},
                {"programs", programs},
                {"stats", stats}};
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_emit(const InputOpts& in) {
    std::cout << qasm::emit(load_circuit(in));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact integer state-vector simulation on a modeled processing-in-memory system"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "pimsim 0.1.0");

    InputOpts in;
    CommonOpts common;
    std::string engine = "pim";
    std::size_t samples = 0;
    std::optional<std::uint64_t> seed;
    double tol = 1e-9;
    std::string golden;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--bench", in.bench, "benchmark selector family:n[:params], e.g. bv:4:111, bb:8:seed=3");
        sub->add_option("--input", in.input, "OpenQASM 2.0 file (.qasm)");
        sub->add_option("--secret", in.secret, "BV secret bit string (q0 first)");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--passes", common.passes, "comma-separated subset of gm,rs,vp");
        sub->add_option("--dpus", common.dpus, "number of DPUs")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
        sub->add_option("--format", common.format, "json, csv or text");
    };

    auto* run = app.add_subcommand("run", "simulate a circuit and report probabilities and the phase breakdown");
    add_input(run);
    add_common(run);
    run->add_option("--engine", engine, "oracle or pim");
    run->add_option("--samples", samples, "measurement samples drawn from the final probabilities");
    run->add_option("--seed", seed, "seed for sampling (required with --samples)");

    auto* verify = app.add_subcommand("verify", "cross-check the engines with and without passes");
    add_input(verify);
    add_common(verify);
    verify->add_option("--tol", tol, "maximum allowed elementwise deviation");
    verify->add_option("--golden", golden, "state dump JSON to compare against");

    auto* transpile = app.add_subcommand("transpile", "dump the lowered programs and partition plan");
    add_input(transpile);
    add_common(transpile);

    auto* emit = app.add_subcommand("emit", "print the circuit as OpenQASM 2.0");
    add_input(emit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*run) return cmd_run(in, common, engine, samples, seed);
        if (*verify) return cmd_verify(in, common, tol, golden);
        if (*transpile) return cmd_transpile(in, common);
        return cmd_emit(in);
    } catch (const ParseFailure& f) {
        for (const auto& d : f.diagnostics) std::cerr << in.input << ":" << qasm::format_diagnostic(d) << "\n";
        return kExitInput;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitContract;
    }
}

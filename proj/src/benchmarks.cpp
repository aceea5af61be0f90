#include "pimsim/benchmarks.hpp"

#include <random>

namespace pimsim {

namespace {

void require_bits(const std::string& s, std::size_t len, std::string_view what) {
    if (s.size() != len)
        throw InvalidArgument(std::string(what) + " must have length " + std::to_string(len) + ", got " +
                              std::to_string(s.size()));
    for (char c : s)
        if (c != '0' && c != '1') throw InvalidArgument(std::string(what) + " must contain only '0' and '1'");
}

std::string random_bits(std::mt19937_64& rng, std::size_t len) {
    std::string out(len, '0');
    for (auto& c : out) c = (rng() & 1) ? '1' : '0';
    return out;
}

CircuitIR bb84(std::size_t n, const BenchmarkParams& p, CircuitIR c) {
    std::mt19937_64 rng(p.seed);
    const std::string bits = p.bits.value_or(random_bits(rng, n));
    const std::string bases = p.bases.value_or(random_bits(rng, n));
    require_bits(bits, n, "BB bits");
    require_bits(bases, n, "BB bases");
    // Two slots per qubit; Z fills a slot when the qubit needs no X or no H.
    for (std::size_t q = 0; q < n; ++q) {
        c.add(bits[q] == '1' ? GateKind::X : GateKind::Z, {static_cast<Qubit>(q)});
        c.add(bases[q] == '1' ? GateKind::H : GateKind::Z, {static_cast<Qubit>(q)});
    }
    c.metadata["bits"] = bits;
    c.metadata["bases"] = bases;
    c.metadata["seed"] = std::to_string(p.seed);
    return c;
}

CircuitIR bernstein_vazirani(std::size_t n, const BenchmarkParams& p, CircuitIR c) {
    const std::string secret = p.secret.value_or(std::string(n - 1, '1'));
    require_bits(secret, n - 1, "BV secret");
    const std::size_t width = p.final_layer_width.value_or(n - 1);
    if (width > n) throw InvalidArgument("BV final layer width exceeds qubit count");
    const auto ancilla = static_cast<Qubit>(n - 1);
    c.add(GateKind::X, {ancilla});
    for (std::size_t q = 0; q < n; ++q) c.add(GateKind::H, {static_cast<Qubit>(q)});
    for (std::size_t q = 0; q + 1 < n; ++q)
        if (secret[q] == '1') c.add(GateKind::CNOT, {static_cast<Qubit>(q), ancilla});
    for (std::size_t q = 0; q < width; ++q) c.add(GateKind::H, {static_cast<Qubit>(q)});
    c.metadata["secret"] = secret;
    c.metadata["final_layer_width"] = std::to_string(width);
    return c;
}

CircuitIR error_detection(std::size_t n, CircuitIR c) {
    for (std::size_t q = 0; q < n; ++q) c.add(GateKind::H, {static_cast<Qubit>(q)});
    for (std::size_t q = 1; q < n; ++q) c.add(GateKind::CNOT, {0, static_cast<Qubit>(q)});
    for (std::size_t q = n - 1; q >= 1; --q) c.add(GateKind::CNOT, {0, static_cast<Qubit>(q)});
    for (std::size_t q = 0; q < n; ++q) c.add(GateKind::H, {static_cast<Qubit>(q)});
    return c;
}

CircuitIR hidden_subgroup(std::size_t half, CircuitIR c) {
    const std::size_t width = 2 * half;
    auto h_layer = [&] {
        for (std::size_t q = 0; q < width; ++q) c.add(GateKind::H, {static_cast<Qubit>(q)});
    };
    auto cnot_layer = [&] {
        for (std::size_t q = 0; q < half; ++q)
            c.add(GateKind::CNOT, {static_cast<Qubit>(q), static_cast<Qubit>(half + q)});
    };
    h_layer();
    cnot_layer();
    h_layer();
    cnot_layer();
    h_layer();
    return c;
}

}  // namespace

std::string_view family_name(Family family) {
    switch (family) {
        case Family::BB: return "bb";
        case Family::BV: return "bv";
        case Family::EDC: return "edc";
        case Family::HS: return "hs";
        case Family::QRNG: return "qrng";
        case Family::XOR: return "xor";
    }
    return "?";
}

std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : kAllFamilies)
        if (family_name(f) == name) return f;
    return std::nullopt;
}

std::size_t benchmark_qubits(Family family, std::size_t n) {
    return family == Family::HS ? 2 * n : n;
}

CircuitIR gen_benchmark(Family family, std::size_t n, const BenchmarkParams& params) {
    const std::size_t min_n = family == Family::HS ? 1 : 2;
    if (n < min_n)
        throw InvalidArgument(std::string(family_name(family)) + ": size must be at least " + std::to_string(min_n));
    if (family != Family::BV && (params.secret || params.final_layer_width))
        throw InvalidArgument("secret and final layer width apply to bv only");
    if (family != Family::BB && (params.bits || params.bases))
        throw InvalidArgument("bits and bases apply to bb only");

    CircuitIR c;
    c.n_qubits = benchmark_qubits(family, n);
    c.name = std::string(family_name(family)) + "_" + std::to_string(c.n_qubits);
    c.metadata["family"] = std::string(family_name(family));
    c.metadata["n"] = std::to_string(n);

    switch (family) {
        case Family::BB: return bb84(n, params, std::move(c));
        case Family::BV: return bernstein_vazirani(n, params, std::move(c));
        case Family::EDC: return error_detection(n, std::move(c));
        case Family::HS: return hidden_subgroup(n, std::move(c));
        case Family::QRNG:
            for (std::size_t q = 0; q < n; ++q) c.add(GateKind::H, {static_cast<Qubit>(q)});
            return c;
        case Family::XOR:
            for (std::size_t q = 0; q + 1 < n; ++q)
                c.add(GateKind::CNOT, {static_cast<Qubit>(q), static_cast<Qubit>(q + 1)});
            return c;
    }
    throw InvalidArgument("unknown benchmark family");
}

}  // namespace pimsim

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pimsim/circuit.hpp"

namespace pimsim::qasm {

/// 1-based source position. `offset` is the 0-based byte offset of the first
/// character, kept so callers can slice the input.
struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 1;
    std::size_t offset = 0;
};

enum class Severity { Error, Warning };

struct ParseDiagnostic {
    SourceSpan span;
    std::string message;
    Severity severity = Severity::Error;
};

struct ParseResult {
    /// Present only when no error diagnostic was produced.
    std::optional<CircuitIR> circuit;
    std::vector<ParseDiagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return circuit.has_value(); }
};

/// Parses the supported OpenQASM 2.0 subset. Never throws on bad input; every
/// problem becomes a diagnostic and no partial circuit is returned.
ParseResult parse(std::string_view text);

/// Deterministic text for a valid circuit; parse(emit(c)) reproduces c's
/// qubit count, op sequence, name and metadata.
///
/// Throws InvalidArgument if validate(circuit) reports violations.
std::string emit(const CircuitIR& circuit);

std::string format_diagnostic(const ParseDiagnostic& d);

}  // namespace pimsim::qasm

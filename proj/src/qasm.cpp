#include "pimsim/qasm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace pimsim::qasm {

namespace {

enum class Tok { Ident, Int, Real, String, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
};

constexpr std::size_t kMaxQubits = 64;

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(unsigned char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}
bool is_digit(unsigned char c) {
    return c >= '0' && c <= '9';
}

struct Lexed {
    std::vector<Token> tokens;
    std::vector<std::pair<std::string, SourceSpan>> meta_comments;
    std::vector<ParseDiagnostic> diagnostics;
};

Lexed lex(std::string_view text) {
    Lexed out;
    std::size_t i = 0, line = 1, col = 1;
    auto span_at = [&](std::size_t start, std::size_t start_line, std::size_t start_col) {
        return SourceSpan{start_line, start_col, std::max<std::size_t>(i - start, 1), start};
    };
    auto advance = [&] {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < text.size()) {
        const auto c = static_cast<unsigned char>(text[i]);
        const std::size_t start = i, sl = line, sc = col;
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
        } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') advance();
            std::string body(text.substr(start + 2, i - start - 2));
            const auto first = body.find_first_not_of(" \t");
            if (first != std::string::npos && body.compare(first, 1, "@") == 0) {
                auto last = body.find_last_not_of(" \t\r");
                out.meta_comments.emplace_back(body.substr(first + 1, last - first), span_at(start, sl, sc));
            }
        } else if (is_ident_start(c)) {
            while (i < text.size() && is_ident_char(static_cast<unsigned char>(text[i]))) advance();
            out.tokens.push_back({Tok::Ident, std::string(text.substr(start, i - start)), span_at(start, sl, sc)});
        } else if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(static_cast<unsigned char>(text[i + 1])))) {
            bool real = false;
            while (i < text.size() && is_digit(static_cast<unsigned char>(text[i]))) advance();
            if (i < text.size() && text[i] == '.') {
                real = true;
                advance();
                while (i < text.size() && is_digit(static_cast<unsigned char>(text[i]))) advance();
            }
            if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
                if (j < text.size() && is_digit(static_cast<unsigned char>(text[j]))) {
                    real = true;
                    while (i < j) advance();
                    while (i < text.size() && is_digit(static_cast<unsigned char>(text[i]))) advance();
                }
            }
            out.tokens.push_back({real ? Tok::Real : Tok::Int, std::string(text.substr(start, i - start)),
                                  span_at(start, sl, sc)});
        } else if (c == '"') {
            advance();
            while (i < text.size() && text[i] != '"' && text[i] != '\n') advance();
            if (i < text.size() && text[i] == '"') {
                advance();
                out.tokens.push_back(
                    {Tok::String, std::string(text.substr(start + 1, i - start - 2)), span_at(start, sl, sc)});
            } else {
                out.diagnostics.push_back({span_at(start, sl, sc), "unterminated string literal", Severity::Error});
            }
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            advance();
            advance();
            out.tokens.push_back({Tok::Punct, "->", span_at(start, sl, sc)});
        } else if (std::string_view(";,()[]*/+-{}").find(static_cast<char>(c)) != std::string_view::npos) {
            advance();
            out.tokens.push_back({Tok::Punct, std::string(1, static_cast<char>(c)), span_at(start, sl, sc)});
        } else {
            advance();
            out.diagnostics.push_back({span_at(start, sl, sc), "unexpected character", Severity::Error});
        }
    }
    SourceSpan end_span{line, col, 1, text.size()};
    if (!text.empty()) {
        // Keep end-of-input diagnostics inside the text.
        end_span = out.tokens.empty() ? SourceSpan{1, 1, 1, 0} : out.tokens.back().span;
    }
    out.tokens.push_back({Tok::End, "", end_span});
    return out;
}

struct StatementError {
    SourceSpan span;
    std::string message;
};

class Parser {
public:
    explicit Parser(Lexed lexed) : lx_(std::move(lexed)) {}

    ParseResult run() {
        diags_ = std::move(lx_.diagnostics);
        std::size_t statements = 0;
        while (peek().kind != Tok::End) {
            const std::size_t before = pos_;
            try {
                statement(statements == 0);
            } catch (const StatementError& e) {
                diags_.push_back({e.span, e.message, Severity::Error});
                recover(before);
            }
            ++statements;
        }
        if (!saw_header_ && statements > 0)
            diags_.push_back({lx_.tokens.front().span, "missing OPENQASM 2.0 header", Severity::Warning});
        if (!qreg_) diags_.push_back({lx_.tokens.front().span, "no quantum register declared", Severity::Error});

        apply_meta_comments();

        ParseResult result;
        const bool failed = std::any_of(diags_.begin(), diags_.end(),
                                        [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
        if (!failed) {
            if (!measured_.empty()) {
                std::string list;
                for (Qubit q : measured_) list += (list.empty() ? "" : ",") + std::to_string(q);
                circuit_.metadata["measure"] = list;
            }
            result.circuit = std::move(circuit_);
        }
        result.diagnostics = std::move(diags_);
        return result;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return lx_.tokens[std::min(pos_ + ahead, lx_.tokens.size() - 1)];
    }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < lx_.tokens.size() - 1) ++pos_;
        return t;
    }
    bool accept(std::string_view punct) {
        if (peek().kind == Tok::Punct && peek().text == punct) {
            next();
            return true;
        }
        return false;
    }
    const Token& expect(std::string_view punct, std::string_view context) {
        if (peek().kind != Tok::Punct || peek().text != punct)
            throw StatementError{peek().span, "malformed statement: expected '" + std::string(punct) + "' " +
                                                  std::string(context)};
        return next();
    }
    const Token& expect_ident(std::string_view context) {
        if (peek().kind != Tok::Ident)
            throw StatementError{peek().span, "malformed statement: expected identifier " + std::string(context)};
        return next();
    }

    void recover(std::size_t statement_start) {
        auto is_semi = [](const Token& t) { return t.kind == Tok::Punct && t.text == ";"; };
        if (pos_ > statement_start && is_semi(lx_.tokens[pos_ - 1])) return;
        if (pos_ == statement_start) {
            if (is_semi(next())) return;
        }
        while (peek().kind != Tok::End) {
            if (is_semi(next())) return;
        }
    }

    static std::optional<std::size_t> to_size(const Token& t) {
        if (t.kind != Tok::Int) return std::nullopt;
        std::size_t v = 0;
        const auto* b = t.text.data();
        const auto [p, ec] = std::from_chars(b, b + t.text.size(), v);
        if (ec != std::errc{} || p != b + t.text.size()) return std::nullopt;
        return v;
    }

    void statement(bool first) {
        const Token& head = peek();
        if (head.kind != Tok::Ident) throw StatementError{head.span, "malformed statement"};
        const std::string& kw = head.text;
        if (kw == "OPENQASM") return header(first);
        if (kw == "include") return include();
        if (kw == "qreg") return qreg();
        if (kw == "creg") return creg();
        if (kw == "measure") return measure();
        if (kw == "barrier") return barrier();
        if (kw == "gate" || kw == "opaque" || kw == "if" || kw == "reset")
            throw StatementError{head.span, "unsupported statement '" + kw + "'"};
        return gate_statement();
    }

    void header(bool first) {
        const Token& kw = next();
        const Token& ver = next();
        if ((ver.kind != Tok::Real && ver.kind != Tok::Int) || (ver.text != "2.0" && ver.text != "2"))
            throw StatementError{ver.span, "unsupported OpenQASM version"};
        expect(";", "after version");
        if (!first || saw_header_) diags_.push_back({kw.span, "OPENQASM header must come first", Severity::Error});
        saw_header_ = true;
    }

    void include() {
        next();
        const Token& file = peek();
        if (file.kind != Tok::String) throw StatementError{file.span, "malformed statement: expected file name"};
        next();
        expect(";", "after include");
        if (file.text != "qelib1.inc")
            diags_.push_back({file.span, "include of '" + file.text + "' ignored", Severity::Warning});
    }

    std::pair<std::string, std::size_t> register_decl(std::string_view what) {
        next();
        const Token& name = expect_ident(std::string("for ") + std::string(what) + " name");
        expect("[", "after register name");
        const Token& size_tok = peek();
        const auto size = to_size(size_tok);
        if (!size) throw StatementError{size_tok.span, "malformed statement: register size must be an integer"};
        next();
        expect("]", "after register size");
        expect(";", "after register declaration");
        if (*size == 0) throw StatementError{size_tok.span, "register size must be positive"};
        return {name.text, *size};
    }

    void qreg() {
        const SourceSpan span = peek().span;
        const auto [name, size] = register_decl("qreg");
        if (qreg_) throw StatementError{span, "register redefinition: only one quantum register is supported"};
        if (size > kMaxQubits) throw StatementError{span, "register size exceeds supported maximum"};
        if (!ops_started_ && cregs_.count(name)) throw StatementError{span, "register redefinition"};
        qreg_ = name;
        circuit_.n_qubits = size;
    }

    void creg() {
        const SourceSpan span = peek().span;
        const auto [name, size] = register_decl("creg");
        if (cregs_.count(name) || (qreg_ && *qreg_ == name)) throw StatementError{span, "register redefinition"};
        cregs_[name] = size;
    }

    struct Operand {
        std::optional<Qubit> index;  // nullopt means whole register
        SourceSpan span;
    };

    Operand qubit_operand() {
        const Token& name = expect_ident("for qubit operand");
        if (!qreg_) throw StatementError{name.span, "operand used before qreg declaration"};
        if (name.text != *qreg_) throw StatementError{name.span, "unknown quantum register '" + name.text + "'"};
        if (!accept("[")) return {std::nullopt, name.span};
        const Token& idx_tok = peek();
        const auto idx = to_size(idx_tok);
        if (!idx) throw StatementError{idx_tok.span, "malformed statement: index must be an integer"};
        next();
        expect("]", "after index");
        if (*idx >= circuit_.n_qubits) throw StatementError{idx_tok.span, "qubit index overflow"};
        return {static_cast<Qubit>(*idx), idx_tok.span};
    }

    void measure() {
        const Token& kw = next();
        const Operand q = qubit_operand();
        expect("->", "in measure");
        const Token& creg_name = expect_ident("for classical register");
        auto it = cregs_.find(creg_name.text);
        if (it == cregs_.end())
            throw StatementError{creg_name.span, "unknown classical register '" + creg_name.text + "'"};
        if (accept("[")) {
            const Token& idx_tok = peek();
            const auto idx = to_size(idx_tok);
            if (!idx) throw StatementError{idx_tok.span, "malformed statement: index must be an integer"};
            next();
            expect("]", "after index");
            if (*idx >= it->second) throw StatementError{idx_tok.span, "classical index overflow"};
        }
        expect(";", "after measure");
        (void)kw;
        if (q.index) {
            measured_.insert(*q.index);
        } else {
            for (Qubit i = 0; i < circuit_.n_qubits; ++i) measured_.insert(i);
        }
    }

    void barrier() {
        const Token& kw = next();
        while (peek().kind != Tok::End && !(peek().kind == Tok::Punct && peek().text == ";")) next();
        expect(";", "after barrier");
        diags_.push_back({kw.span, "barrier ignored", Severity::Warning});
    }

    // [-] [INT '*'] pi ['/' INT]  or  [-] NUMBER
    Angle angle_expr() {
        const SourceSpan start = peek().span;
        SourceSpan end = start;
        auto mark = [&](const Token& t) { end = t.span; };
        int sign = 1;
        if (peek().kind == Tok::Punct && peek().text == "-") {
            mark(next());
            sign = -1;
        }
        auto covering = [&] {
            SourceSpan s = start;
            s.length = (end.offset + end.length > start.offset) ? end.offset + end.length - start.offset : 1;
            if (end.line != start.line) s.length = start.length;
            return s;
        };
        double value = 0.0;
        bool ok = false;
        if (peek().kind == Tok::Real || peek().kind == Tok::Int) {
            const Token& num = next();
            mark(num);
            if (peek().kind == Tok::Punct && peek().text == "*") {
                mark(next());
                if (peek().kind != Tok::Ident || peek().text != "pi")
                    throw StatementError{peek().span, "malformed angle expression"};
                mark(next());
                value = std::strtod(num.text.c_str(), nullptr) * std::numbers::pi;
            } else {
                value = std::strtod(num.text.c_str(), nullptr);
            }
            ok = true;
        } else if (peek().kind == Tok::Ident && peek().text == "pi") {
            mark(next());
            value = std::numbers::pi;
            ok = true;
        }
        if (!ok) throw StatementError{peek().span, "malformed angle expression"};
        if (peek().kind == Tok::Punct && peek().text == "/") {
            mark(next());
            const Token& den = peek();
            if (den.kind != Tok::Int && den.kind != Tok::Real) throw StatementError{den.span, "malformed angle expression"};
            mark(next());
            const double d = std::strtod(den.text.c_str(), nullptr);
            if (d == 0.0) throw StatementError{den.span, "malformed angle expression: division by zero"};
            value /= d;
        }
        const auto angle = std::isfinite(value) ? Angle::from_radians(sign * value) : std::nullopt;
        if (!angle) throw StatementError{covering(), "angle outside supported domain"};
        return *angle;
    }

    static std::optional<GateKind> qasm_gate(std::string_view name) {
        static const std::pair<std::string_view, GateKind> table[] = {
            {"h", GateKind::H},     {"x", GateKind::X},     {"y", GateKind::Y},       {"z", GateKind::Z},
            {"s", GateKind::S},     {"sdg", GateKind::Sdg}, {"t", GateKind::T},       {"tdg", GateKind::Tdg},
            {"rx", GateKind::RX},   {"ry", GateKind::RY},   {"rz", GateKind::RZ},     {"cx", GateKind::CNOT},
            {"cz", GateKind::CZ},   {"swap", GateKind::SWAP}, {"ccx", GateKind::CCX}};
        for (const auto& [n, k] : table)
            if (n == name) return k;
        return std::nullopt;
    }

    void gate_statement() {
        const Token& name = next();
        const auto kind = qasm_gate(name.text);
        if (!kind) throw StatementError{name.span, "unknown gate '" + name.text + "'"};
        std::optional<Angle> angle;
        if (is_rotation(*kind)) {
            expect("(", "before rotation angle");
            angle = angle_expr();
            expect(")", "after rotation angle");
        } else if (peek().kind == Tok::Punct && peek().text == "(") {
            throw StatementError{peek().span, "gate '" + name.text + "' takes no parameters"};
        }
        std::vector<Operand> operands{qubit_operand()};
        while (accept(",")) operands.push_back(qubit_operand());
        expect(";", "after gate operands");

        const std::size_t arity = gate_arity(*kind);
        if (operands.size() != arity)
            throw StatementError{name.span, "gate '" + name.text + "' expects " + std::to_string(arity) + " operand(s)"};
        if (!measured_.empty()) throw StatementError{name.span, "gate after measurement is not supported"};

        if (arity == 1 && !operands[0].index) {
            for (Qubit q = 0; q < circuit_.n_qubits; ++q) circuit_.ops.push_back(GateOp{Gate{*kind, angle}, {q}});
        } else {
            std::vector<Qubit> qubits;
            for (const auto& op : operands) {
                if (!op.index) throw StatementError{op.span, "register broadcast is only supported for 1-qubit gates"};
                qubits.push_back(*op.index);
            }
            if (std::set<Qubit>(qubits.begin(), qubits.end()).size() != qubits.size())
                throw StatementError{name.span, "duplicate operand"};
            circuit_.ops.push_back(GateOp{Gate{*kind, angle}, std::move(qubits)});
        }
        ops_started_ = true;
    }

    void apply_meta_comments() {
        for (const auto& [body, span] : lx_.meta_comments) {
            if (body.rfind("name ", 0) == 0) {
                circuit_.name = body.substr(5);
            } else if (body.rfind("meta ", 0) == 0) {
                const std::string kv = body.substr(5);
                const auto eq = kv.find('=');
                if (eq == std::string::npos || eq == 0) {
                    diags_.push_back({span, "malformed metadata comment", Severity::Warning});
                    continue;
                }
                circuit_.metadata[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
        }
    }

    Lexed lx_;
    std::size_t pos_ = 0;
    std::vector<ParseDiagnostic> diags_;
    CircuitIR circuit_;
    std::optional<std::string> qreg_;
    std::map<std::string, std::size_t> cregs_;
    std::set<Qubit> measured_;
    bool saw_header_ = false;
    bool ops_started_ = false;
};

std::string sanitize(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == '\n' || c == '\r') c = ' ';
    return out;
}

}  // namespace

ParseResult parse(std::string_view text) {
    return Parser(lex(text)).run();
}

std::string emit(const CircuitIR& circuit) {
    const auto violations = validate(circuit);
    if (!violations.empty()) throw InvalidArgument("cannot emit invalid circuit: " + violations.front().reason);

    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    if (!circuit.name.empty()) os << "// @name " << sanitize(circuit.name) << "\n";
    std::optional<std::string> measure;
    for (const auto& [k, v] : circuit.metadata) {
        if (k == "measure") {
            measure = v;
            continue;
        }
        os << "// @meta " << sanitize(k) << "=" << sanitize(v) << "\n";
    }
    std::set<Qubit> measured;
    if (measure) {
        std::stringstream ss(*measure);
        std::string item;
        while (std::getline(ss, item, ',')) {
            Qubit q = 0;
            const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), q);
            if (ec != std::errc{} || p != item.data() + item.size() || q >= circuit.n_qubits)
                throw InvalidArgument("cannot emit circuit: malformed measure metadata");
            measured.insert(q);
        }
    }
    os << "qreg q[" << circuit.n_qubits << "];\n";
    if (measure) os << "creg c[" << circuit.n_qubits << "];\n";
    for (const GateOp& op : circuit.ops) {
        std::string name(gate_name(op.gate.kind));
        if (op.gate.kind == GateKind::CNOT) name = "cx";
        for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        os << name;
        if (op.gate.angle) os << "(" << op.gate.angle->qasm() << ")";
        for (std::size_t i = 0; i < op.qubits.size(); ++i) os << (i == 0 ? " " : ",") << "q[" << op.qubits[i] << "]";
        os << ";\n";
    }
    for (Qubit q : measured) os << "measure q[" << q << "] -> c[" << q << "];\n";
    return os.str();
}

std::string format_diagnostic(const ParseDiagnostic& d) {
    std::ostringstream os;
    os << d.span.line << ":" << d.span.column << ": " << (d.severity == Severity::Error ? "error" : "warning") << ": "
       << d.message;
    return os.str();
}

}  // namespace pimsim::qasm

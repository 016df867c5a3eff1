// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

// Circuit IR and the `.qc` text format.
//
// Qubit 0 is the least-significant bit of a basis-state integer; the "last"
// qubit of an n-qubit register is index n-1. Angles are radians.

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "qident/error.hpp"

namespace qident {

enum class GateKind { Id, X, Y, Z, H, S, Sdg, T, Tdg, RX, RY, RZ, CX, CZ, Swap, CP };

inline constexpr std::array<GateKind, 16> kAllGateKinds = {
    GateKind::Id, GateKind::X,  GateKind::Y,  GateKind::Z,  GateKind::H,  GateKind::S,
    GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::RX, GateKind::RY, GateKind::RZ,
    GateKind::CX, GateKind::CZ, GateKind::Swap, GateKind::CP};

/// `.qc` mnemonic for a gate kind.
constexpr std::string_view mnemonic(GateKind kind) {
    switch (kind) {
        case GateKind::Id: return "id";
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::H: return "h";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::T: return "t";
        case GateKind::Tdg: return "tdg";
        case GateKind::RX: return "rx";
        case GateKind::RY: return "ry";
        case GateKind::RZ: return "rz";
        case GateKind::CX: return "cx";
        case GateKind::CZ: return "cz";
        case GateKind::Swap: return "swap";
        case GateKind::CP: return "cp";
    }
    return "?";
}

inline std::optional<GateKind> gate_kind_from_mnemonic(std::string_view name) {
    for (GateKind kind : kAllGateKinds) {
        if (mnemonic(kind) == name) return kind;
    }
    return std::nullopt;
}

constexpr bool has_angle(GateKind kind) {
    return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ || kind == GateKind::CP;
}

/// Number of target indices for every kind except CP, whose qubit lists are variable.
constexpr std::size_t fixed_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CX:
        case GateKind::CZ:
        case GateKind::Swap: return 2;
        case GateKind::CP: return 0;
        default: return 1;
    }
}

enum class Polarity {
    One,   ///< control fires on |1>
    Zero,  ///< control fires on |0>
};

struct SignedControl {
    std::size_t qubit;
    Polarity polarity;

    friend bool operator==(const SignedControl&, const SignedControl&) = default;
};

/// One gate application.
///
/// For CX the targets are (control, target). For CP the phase e^{i angle}
/// is applied to every basis state that satisfies all signed `controls` and
/// has every qubit in `targets` set; both lists may be empty, in which case
/// the gate is a global phase.
struct Gate {
    GateKind kind = GateKind::Id;
    double angle = 0.0;
    std::vector<std::size_t> targets;
    std::vector<SignedControl> controls;

    friend bool operator==(const Gate&, const Gate&) = default;

    /// All qubits the gate acts on: controls first, then targets.
    std::vector<std::size_t> qubits() const {
        std::vector<std::size_t> out;
        out.reserve(controls.size() + targets.size());
        for (const auto& c : controls) out.push_back(c.qubit);
        out.insert(out.end(), targets.begin(), targets.end());
        return out;
    }

    static Gate single(GateKind kind, std::size_t q, double angle = 0.0) { return {kind, angle, {q}, {}}; }
    static Gate two(GateKind kind, std::size_t a, std::size_t b) { return {kind, 0.0, {a, b}, {}}; }
    static Gate phase(double angle, std::vector<SignedControl> controls, std::vector<std::size_t> targets = {}) {
        return {GateKind::CP, angle, std::move(targets), std::move(controls)};
    }
};

struct Circuit {
    std::size_t n_qubits = 1;
    std::vector<Gate> gates;
    std::optional<std::size_t> output_qubit;
    std::optional<std::size_t> ancilla_count;

    Circuit() = default;
    explicit Circuit(std::size_t n) : n_qubits(n) {}
    Circuit(std::size_t n, std::vector<Gate> g) : n_qubits(n), gates(std::move(g)) {}

    friend bool operator==(const Circuit&, const Circuit&) = default;

    Circuit& add(Gate g) {
        gates.push_back(std::move(g));
        return *this;
    }
};

namespace detail {

inline std::string describe_gate_error(const Gate& g, const std::string& what) {
    return std::string(mnemonic(g.kind)) + ": " + what;
}

}  // namespace detail

/// Checks index range, arity and distinctness of one gate on an n-qubit register.
inline void validate_gate(const Gate& g, std::size_t n_qubits) {
    if (g.kind != GateKind::CP) {
        if (g.targets.size() != fixed_arity(g.kind))
            throw InvalidArgument(detail::describe_gate_error(g, "wrong number of qubits"));
        if (!g.controls.empty())
            throw InvalidArgument(detail::describe_gate_error(g, "only cp takes signed controls"));
    }
    const auto qs = g.qubits();
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (qs[i] >= n_qubits)
            throw InvalidArgument(detail::describe_gate_error(
                g, "qubit " + std::to_string(qs[i]) + " out of range for " + std::to_string(n_qubits) + " qubits"));
        for (std::size_t j = 0; j < i; ++j) {
            if (qs[i] == qs[j])
                throw InvalidArgument(detail::describe_gate_error(g, "duplicate qubit " + std::to_string(qs[i])));
        }
    }
    if (!std::isfinite(g.angle)) throw InvalidArgument(detail::describe_gate_error(g, "non-finite angle"));
}

inline void validate_circuit(const Circuit& c) {
    if (c.n_qubits == 0) throw InvalidArgument("circuit must have at least one qubit");
    if (c.output_qubit && *c.output_qubit >= c.n_qubits) throw InvalidArgument("output qubit out of range");
    if (c.ancilla_count && *c.ancilla_count > c.n_qubits) throw InvalidArgument("ancilla count exceeds qubit count");
    for (const auto& g : c.gates) validate_gate(g, c.n_qubits);
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

/// 17 significant digits, trailing zeros dropped. Round-trips every double.
inline std::string format_angle(double angle) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", angle);
    return buf;
}

namespace detail {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

class LineParser {
public:
    LineParser(std::size_t line_no, std::vector<Token> tokens) : line_(line_no), tokens_(std::move(tokens)) {}

    [[noreturn]] void fail(const Token& tok, const std::string& what) const { throw ParseError(line_, tok.column, what); }
    [[noreturn]] void fail_end(const std::string& what) const {
        const auto col = tokens_.empty() ? 1 : tokens_.back().column + tokens_.back().text.size();
        throw ParseError(line_, col, what);
    }

    bool done() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next(const char* expected) {
        if (done()) fail_end(std::string("expected ") + expected);
        return tokens_[pos_++];
    }

    std::size_t index(const char* expected = "qubit index") {
        const Token& tok = next(expected);
        return parse_index(tok, tok.text);
    }

    std::size_t parse_index(const Token& tok, std::string_view text) const {
        std::size_t value = 0;
        const auto* first = text.data();
        const auto* last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (text.empty() || ec != std::errc() || ptr != last) fail(tok, "expected nonnegative integer, got '" + std::string(tok.text) + "'");
        return value;
    }

    double angle() {
        const Token& tok = next("angle");
        double value = 0.0;
        const auto* first = tok.text.data();
        const auto* last = tok.text.data() + tok.text.size();
        if (first != last && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || !std::isfinite(value))
            fail(tok, "expected decimal angle, got '" + std::string(tok.text) + "'");
        return value;
    }

    void expect_end() {
        if (!done()) fail(peek(), "unexpected token '" + std::string(peek().text) + "'");
    }

private:
    std::size_t line_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `.qc` text. Errors carry the 1-based line and column of the offending token.
inline Circuit parse_circuit(std::string_view text) {
    Circuit circuit;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;

    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        auto tokens = detail::tokenize(line);
        if (tokens.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        detail::LineParser p(line_no, std::move(tokens));
        const detail::Token head = p.next("keyword");

        if (!have_header) {
            if (head.text != "qubits") p.fail(head, "expected 'qubits N' header");
            const detail::Token& count_tok = p.next("qubit count");
            const std::size_t n = p.parse_index(count_tok, count_tok.text);
            if (n == 0) p.fail(count_tok, "qubit count must be positive");
            p.expect_end();
            circuit.n_qubits = n;
            have_header = true;
            if (eol == text.size()) break;
            continue;
        }

        const std::size_t n = circuit.n_qubits;
        auto checked = [&](const detail::Token& tok, std::size_t q) {
            if (q >= n) p.fail(tok, "qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
            return q;
        };
        auto read_qubit = [&] {
            const detail::Token& tok = p.next("qubit index");
            return checked(tok, p.parse_index(tok, tok.text));
        };

        if (head.text == "qubits") p.fail(head, "duplicate 'qubits' header");
        if (head.text == "output") {
            if (circuit.output_qubit) p.fail(head, "duplicate 'output' directive");
            circuit.output_qubit = read_qubit();
            p.expect_end();
        } else if (head.text == "ancillas") {
            if (circuit.ancilla_count) p.fail(head, "duplicate 'ancillas' directive");
            const detail::Token& tok = p.next("ancilla count");
            const std::size_t m = p.parse_index(tok, tok.text);
            if (m > n) p.fail(tok, "ancilla count exceeds qubit count");
            circuit.ancilla_count = m;
            p.expect_end();
        } else {
            const auto kind = gate_kind_from_mnemonic(head.text);
            if (!kind) p.fail(head, "unknown gate '" + std::string(head.text) + "'");
            Gate g;
            g.kind = *kind;
            std::vector<detail::Token> qubit_tokens;
            if (*kind == GateKind::CP) {
                g.angle = p.angle();
                bool after_colon = false;
                while (!p.done()) {
                    const detail::Token& tok = p.next("control");
                    if (tok.text == ":") {
                        if (after_colon) p.fail(tok, "second ':' in cp");
                        after_colon = true;
                        continue;
                    }
                    if (after_colon) {
                        g.targets.push_back(checked(tok, p.parse_index(tok, tok.text)));
                    } else {
                        if (tok.text.size() < 2 || (tok.text[0] != '+' && tok.text[0] != '-'))
                            p.fail(tok, "cp control must be signed (+q or -q)");
                        const auto q = checked(tok, p.parse_index(tok, tok.text.substr(1)));
                        g.controls.push_back({q, tok.text[0] == '+' ? Polarity::One : Polarity::Zero});
                    }
                    qubit_tokens.push_back(tok);
                }
            } else {
                for (std::size_t i = 0; i < fixed_arity(*kind); ++i) {
                    const detail::Token& tok = p.next("qubit index");
                    qubit_tokens.push_back(tok);
                    g.targets.push_back(checked(tok, p.parse_index(tok, tok.text)));
                }
                if (has_angle(*kind)) g.angle = p.angle();
                p.expect_end();
            }
            const auto qs = g.qubits();
            for (std::size_t i = 0; i < qs.size(); ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    if (qs[i] == qs[j]) p.fail(qubit_tokens[i], "duplicate qubit " + std::to_string(qs[i]) + " in one gate");
                }
            }
            circuit.gates.push_back(std::move(g));
        }
        if (eol == text.size()) break;
    }
    if (!have_header) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'qubits N' header");
    if (circuit.output_qubit && *circuit.output_qubit >= circuit.n_qubits) throw InvalidArgument("output qubit out of range");
    return circuit;
}

inline std::string serialize_circuit(const Circuit& c) {
    std::string out = "qubits " + std::to_string(c.n_qubits) + "\n";
    if (c.output_qubit) out += "output " + std::to_string(*c.output_qubit) + "\n";
    if (c.ancilla_count) out += "ancillas " + std::to_string(*c.ancilla_count) + "\n";
    for (const auto& g : c.gates) {
        out += mnemonic(g.kind);
        if (g.kind == GateKind::CP) {
            out += ' ';
            out += format_angle(g.angle);
            for (const auto& ctl : g.controls) {
                out += ctl.polarity == Polarity::One ? " +" : " -";
                out += std::to_string(ctl.qubit);
            }
            if (!g.targets.empty()) {
                out += " :";
                for (auto q : g.targets) out += " " + std::to_string(q);
            }
        } else {
            for (auto q : g.targets) out += " " + std::to_string(q);
            if (has_angle(g.kind)) out += " " + format_angle(g.angle);
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structural transforms
// ---------------------------------------------------------------------------

inline Gate dagger(const Gate& g) {
    Gate d = g;
    switch (g.kind) {
        case GateKind::S: d.kind = GateKind::Sdg; break;
        case GateKind::Sdg: d.kind = GateKind::S; break;
        case GateKind::T: d.kind = GateKind::Tdg; break;
        case GateKind::Tdg: d.kind = GateKind::T; break;
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::CP: d.angle = -g.angle; break;
        default: break;
    }
    return d;
}

/// Circuit implementing the adjoint: reversed order, each gate daggered.
inline Circuit inverse(const Circuit& c) {
    Circuit out = c;
    out.gates.clear();
    out.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) out.gates.push_back(dagger(*it));
    return out;
}

/// `a` followed by `b`, i.e. the unitary U_b U_a. Annotations come from `a`
/// when present, otherwise from `b`.
inline Circuit concat(const Circuit& a, const Circuit& b) {
    if (a.n_qubits != b.n_qubits)
        throw InvalidArgument("concat: qubit-count mismatch (" + std::to_string(a.n_qubits) + " vs " +
                              std::to_string(b.n_qubits) + ")");
    Circuit out = a;
    out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
    if (!out.output_qubit) out.output_qubit = b.output_qubit;
    if (!out.ancilla_count) out.ancilla_count = b.ancilla_count;
    return out;
}

/// Places `c` on an `n_total`-qubit register, qubit i going to `qubit_map[i]`.
/// The output-qubit annotation is remapped; the ancilla annotation is dropped
/// because trailing position is not preserved by an arbitrary map.
inline Circuit embed(const Circuit& c, std::size_t n_total, const std::vector<std::size_t>& qubit_map) {
    if (n_total < c.n_qubits) throw InvalidArgument("embed: target register smaller than circuit");
    if (qubit_map.size() != c.n_qubits) throw InvalidArgument("embed: map size must equal circuit qubit count");
    for (std::size_t i = 0; i < qubit_map.size(); ++i) {
        if (qubit_map[i] >= n_total) throw InvalidArgument("embed: mapped index out of range");
        for (std::size_t j = 0; j < i; ++j) {
            if (qubit_map[i] == qubit_map[j]) throw InvalidArgument("embed: qubit map is not injective");
        }
    }
    Circuit out(n_total);
    out.gates.reserve(c.gates.size());
    for (const auto& g : c.gates) {
        Gate m = g;
        for (auto& q : m.targets) q = qubit_map[q];
        for (auto& ctl : m.controls) ctl.qubit = qubit_map[ctl.qubit];
        out.gates.push_back(std::move(m));
    }
    if (c.output_qubit) out.output_qubit = qubit_map[*c.output_qubit];
    return out;
}

/// Identity map 0..n-1 shifted by `offset`.
inline std::vector<std::size_t> contiguous_map(std::size_t n, std::size_t offset) {
    std::vector<std::size_t> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = offset + i;
    return map;
}

/// Multi-controlled X on `target`: H, CP(pi) over the controls and the target, H.
inline void append_mcx(Circuit& c, std::vector<SignedControl> controls, std::size_t target) {
    c.add(Gate::single(GateKind::H, target));
    c.add(Gate::phase(std::numbers::pi, std::move(controls), {target}));
    c.add(Gate::single(GateKind::H, target));
}

/// Appends the gates of `g` conditioned on `control` being |1>. Uses only
/// the gate alphabet; `control` must not be one of g's qubits.
inline void append_controlled(Circuit& out, const Gate& g, std::size_t control) {
    using std::numbers::pi;
    const SignedControl on{control, Polarity::One};
    auto cphase = [&](double angle, std::size_t t) { out.add(Gate::phase(angle, {on}, {t})); };
    auto crz = [&](GateKind axis, double theta, std::size_t t) {
        // X R(-a) X = R(a) for R in {RY, RZ}
        out.add(Gate::single(axis, t, theta / 2));
        out.add(Gate::two(GateKind::CX, control, t));
        out.add(Gate::single(axis, t, -theta / 2));
        out.add(Gate::two(GateKind::CX, control, t));
    };

    const auto t0 = g.targets.empty() ? std::size_t{0} : g.targets[0];
    switch (g.kind) {
        case GateKind::Id: break;
        case GateKind::X: out.add(Gate::two(GateKind::CX, control, t0)); break;
        case GateKind::Y:
            // Y = S X S^dagger
            out.add(Gate::single(GateKind::Sdg, t0));
            out.add(Gate::two(GateKind::CX, control, t0));
            out.add(Gate::single(GateKind::S, t0));
            break;
        case GateKind::Z: out.add(Gate::two(GateKind::CZ, control, t0)); break;
        case GateKind::H:
            // H = i RY(pi/4) RZ(pi) RY(-pi/4)
            out.add(Gate::single(GateKind::RY, t0, -pi / 4));
            crz(GateKind::RZ, pi, t0);
            out.add(Gate::single(GateKind::RY, t0, pi / 4));
            out.add(Gate::phase(pi / 2, {on}));
            break;
        case GateKind::S: cphase(pi / 2, t0); break;
        case GateKind::Sdg: cphase(-pi / 2, t0); break;
        case GateKind::T: cphase(pi / 4, t0); break;
        case GateKind::Tdg: cphase(-pi / 4, t0); break;
        case GateKind::RZ: crz(GateKind::RZ, g.angle, t0); break;
        case GateKind::RY: crz(GateKind::RY, g.angle, t0); break;
        case GateKind::RX:
            out.add(Gate::single(GateKind::H, t0));
            crz(GateKind::RZ, g.angle, t0);
            out.add(Gate::single(GateKind::H, t0));
            break;
        case GateKind::CX:
            append_mcx(out, {on, {g.targets[0], Polarity::One}}, g.targets[1]);
            break;
        case GateKind::CZ: out.add(Gate::phase(pi, {on}, {g.targets[0], g.targets[1]})); break;
        case GateKind::Swap: {
            const auto a = g.targets[0];
            const auto b = g.targets[1];
            out.add(Gate::two(GateKind::CX, a, b));
            append_mcx(out, {on, {b, Polarity::One}}, a);
            out.add(Gate::two(GateKind::CX, a, b));
            break;
        }
        case GateKind::CP: {
            Gate cp = g;
            cp.controls.push_back(on);
            out.add(std::move(cp));
            break;
        }
    }
}

/// Circuit applying `c` only when `control` is |1>.
inline Circuit controlled(const Circuit& c, std::size_t control) {
    if (control >= c.n_qubits) throw InvalidArgument("controlled: control qubit out of range");
    Circuit out(c.n_qubits);
    for (const auto& g : c.gates) {
        const auto qs = g.qubits();
        if (std::find(qs.begin(), qs.end(), control) != qs.end())
            throw InvalidArgument("controlled: control qubit is acted on by the circuit");
        append_controlled(out, g, control);
    }
    return out;
}

}  // namespace qident

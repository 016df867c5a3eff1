// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

// qident: command-line front end. Structured JSON on stdout, a short human
// summary on stderr.
//
// Exit codes:
//   0  success (dist, reduce, accept, verifier, random); NEAR (equiv); all satisfied (theorem)
//   1  FAR (equiv); some bound violated (theorem)
//   2  malformed input: parse errors, bad flags, bad witness files
//   3  a size cap was exceeded
//   4  promise violated (verdict still printed)
//   5  subspace problem: not invariant, not a clean membership test, or empty
//   6  numerical failure

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "qident/qident.hpp"

using nlohmann::json;
using namespace qident;

namespace {

struct UsageError : Error {
    using Error::Error;
};

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

double parse_angle(const std::string& text) {
    using std::numbers::pi;
    if (text == "pi") return pi;
    if (text == "pi/2") return pi / 2;
    if (text == "pi/4") return pi / 4;
    if (text == "pi/8") return pi / 8;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw UsageError("invalid angle '" + text + "' (decimal radians or pi, pi/2, pi/4, pi/8)");
    return v;
}

// Everything a subcommand needs to assemble its RunReport.
struct Run {
    std::string command;
    std::vector<std::string> argv;
    json inputs = json::array();
    std::uint64_t seed = 1;
    bool seed_used = false;

    std::string read(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw UsageError("cannot read '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        const std::string bytes = ss.str();
        inputs.push_back({{"path", path}, {"fnv1a64", hex64(fnv1a64(bytes))}});
        return bytes;
    }

    Circuit circuit(const std::string& path) {
        const std::string text = read(path);
        try {
            return parse_circuit(text);
        } catch (const ParseError& e) {
            throw UsageError(path + ": " + e.what());
        }
    }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

std::optional<SubspaceSpec> subspace_from(Run& run, const std::string& path, std::size_t anc, std::size_t n) {
    if (path.empty()) return std::nullopt;
    if (anc == 0) throw UsageError("--subspace needs --anc m >= 1");
    const Circuit v = run.circuit(path);
    if (v.n_qubits != n + anc)
        throw UsageError("subspace circuit has " + std::to_string(v.n_qubits) + " qubits, expected " + std::to_string(n + anc));
    return SubspaceSpec{v, n, anc};
}

// Threshold defaults when only one side is given: mu = 0, delta = 2.
void fill_thresholds(std::optional<double>& delta, std::optional<double>& mu) {
    if (delta && !mu) mu = 0.0;
    if (mu && !delta) delta = 2.0;
    if (delta) check_thresholds(*delta, *mu);
}

// ---------------------------------------------------------------------------

struct DistArgs {
    std::string path;
    std::string delta, mu;
    std::size_t oracle_grid = 0;
};

int cmd_dist(Run& run, const DistArgs& a, json& result) {
    const Circuit c = run.circuit(a.path);
    std::optional<double> delta, mu;
    if (!a.delta.empty()) delta = parse_angle(a.delta);
    if (!a.mu.empty()) mu = parse_angle(a.mu);
    fill_thresholds(delta, mu);

    const ComplexMatrix u = circuit_unitary(c);
    const SpectralReport report = distance_to_phase_multiple(u);
    result = to_json(report);
    int code = 0;
    if (delta) {
        const IdentityVerdict v = classify_distance(report, *delta, *mu);
        result = to_json(v);
        if (v.verdict == Verdict::PromiseViolated) code = 4;
        std::cerr << "verdict " << to_string(v.verdict) << ", ";
    }
    std::cerr << "distance " << format_angle(report.distance) << " at phase " << format_angle(report.optimal_phase) << "\n";
    if (a.oracle_grid > 0) {
        const GridMinimum g = grid_distance(u, a.oracle_grid);
        const double grid_bound = 2 * std::sin(std::numbers::pi / static_cast<double>(a.oracle_grid));
        result["oracle"] = {{"grid_points", a.oracle_grid},
                            {"grid_minimum", g.value},
                            {"grid_phase", g.phi},
                            {"discrepancy", std::abs(g.value - report.distance)},
                            {"grid_bound", grid_bound},
                            {"evaluations", g.evaluations}};
        std::cerr << "grid minimum " << format_angle(g.value) << " (discrepancy " << format_angle(std::abs(g.value - report.distance))
                  << ")\n";
    }
    return code;
}

struct EquivArgs {
    std::string a, b, subspace;
    std::size_t anc = 0;
    std::string delta, mu;
};

int cmd_equiv(Run& run, const EquivArgs& a, json& result) {
    const Circuit ux = run.circuit(a.a);
    const Circuit uy = run.circuit(a.b);
    if (ux.n_qubits != uy.n_qubits) throw UsageError("circuits act on different qubit counts");
    const auto s = subspace_from(run, a.subspace, a.anc, ux.n_qubits);
    const double delta = parse_angle(a.delta), mu = parse_angle(a.mu);
    const IdentityVerdict v = decide_equivalence(ux, uy, s, delta, mu);
    result = to_json(v);
    if (s) result["subspace_dimension"] = subspace_projector(*s).dimension();
    std::cerr << "verdict " << to_string(v.verdict) << ", distance " << format_angle(v.distance) << "\n";
    switch (v.verdict) {
        case Verdict::Near: return 0;
        case Verdict::Far: return 1;
        case Verdict::PromiseViolated: return 4;
    }
    return 4;
}

struct VerifierArgs {
    std::string a, b, subspace, emit;
    std::size_t anc = 0;
    std::size_t t = 0;
    std::string delta, mu;
};

Fig1Params fig1_params(std::size_t t, const std::string& delta_text, const std::string& mu_text) {
    const double delta = parse_angle(delta_text), mu = parse_angle(mu_text);
    Fig1Params p = t > 0 ? Fig1Params{t, delta, mu} : Fig1Params::sized(delta, mu);
    p.validate();
    return p;
}

json params_json(const Fig1Params& p) {
    return {{"t", p.t},
            {"delta", p.delta},
            {"mu", p.mu},
            {"chord_threshold", p.chord_threshold()},
            {"required_bits", Fig1Params::required_bits(p.delta, p.mu)},
            {"meets_accuracy_rule", p.meets_accuracy_rule()}};
}

int cmd_verifier(Run& run, const VerifierArgs& a, json& result) {
    const Circuit ux = run.circuit(a.a);
    const Circuit uy = run.circuit(a.b);
    const auto s = subspace_from(run, a.subspace, a.anc, ux.n_qubits);
    const Fig1Params p = fig1_params(a.t, a.delta, a.mu);
    const EquivalenceVerifier ev(ux, uy, s, p);
    const VerifierSpec built = ev.build();
    const Fig1Layout lay = ev.layout();
    result = {{"params", params_json(p)},
              {"qubits", built.circuit.n_qubits},
              {"gates", built.circuit.gates.size()},
              {"n_input", built.n_input},
              {"m_ancilla", built.m_ancilla},
              {"output_qubit", built.output_qubit},
              {"layout", {{"witness_a", lay.witness_a(0)}, {"witness_b", lay.witness_b(0)}, {"phase_a", lay.phase_a(0)},
                          {"phase_b", lay.phase_b(0)}, {"membership_ancillas", lay.m}}},
              {"restricted_eigenphases", ev.restricted_phases()},
              {"max_acceptance", ev.max_acceptance()}};
    if (!a.emit.empty()) {
        write_file(a.emit, serialize_circuit(built.circuit));
        result["emitted"] = a.emit;
    }
    std::cerr << "verifier on " << built.circuit.n_qubits << " qubits, " << built.circuit.gates.size() << " gates, t = " << p.t
              << (p.meets_accuracy_rule() ? "" : " (below the accuracy rule)") << "\n";
    return 0;
}

struct AcceptArgs {
    std::string verifier, witness, subspace;
    std::vector<std::string> honest;
    std::size_t anc = 0;
    std::size_t t = 0;
    std::string delta = "1", mu = "0";
    bool max = false;
};

int cmd_accept(Run& run, const AcceptArgs& a, json& result) {
    const VerifierSpec v = VerifierSpec::from_circuit(run.circuit(a.verifier));
    if (a.witness.empty() == a.honest.empty() && !(a.max && a.witness.empty() && a.honest.empty()))
        throw UsageError("give exactly one of --witness FILE or --honest A B");
    result = json::object();
    if (!a.witness.empty()) {
        const std::string text = run.read(a.witness);
        StateVector psi;
        try {
            psi = parse_statevector(text);
        } catch (const ParseError& e) {
            throw UsageError(a.witness + ": " + e.what());
        }
        if (static_cast<std::size_t>(psi.size()) != dim_of(v.n_input))
            throw UsageError(a.witness + ": witness dimension " + std::to_string(psi.size()) + " does not match " +
                                       std::to_string(v.n_input) + " input qubits");
        result["witness"] = "file";
        result["acceptance"] = acceptance_probability(v, psi);
    } else if (!a.honest.empty()) {
        const Circuit ux = run.circuit(a.honest[0]);
        const Circuit uy = run.circuit(a.honest[1]);
        const auto s = subspace_from(run, a.subspace, a.anc, ux.n_qubits);
        const EquivalenceVerifier ev(ux, uy, s, fig1_params(a.t, a.delta, a.mu));
        if (v.n_input != 2 * ux.n_qubits) throw UsageError("verifier input register does not hold two copies of the circuits' register");
        const StateVector w = ev.honest_witness();
        result["witness"] = "honest";
        result["acceptance"] = acceptance_probability(v, w);
        result["eigenbasis_acceptance"] = ev.acceptance(w);
    }
    if (a.max) {
        const MaxAcceptance best = max_acceptance(v);
        result["p_max"] = best.p_max;
    }
    if (result.contains("acceptance")) std::cerr << "acceptance " << format_angle(result["acceptance"].get<double>()) << "\n";
    if (result.contains("p_max")) std::cerr << "p_max " << format_angle(result["p_max"].get<double>()) << "\n";
    return 0;
}

struct ReduceArgs {
    std::string verifier, phi, emit;
};

int cmd_reduce(Run& run, const ReduceArgs& a, json& result) {
    const VerifierSpec v = VerifierSpec::from_circuit(run.circuit(a.verifier));
    const double phi = parse_angle(a.phi);
    const Circuit z = build_Z(v, phi);
    const SpectralReport report = distance_to_phase_multiple(circuit_unitary(z));
    result = {{"phi", phi}, {"qubits", z.n_qubits}, {"gates", z.gates.size()}, {"extra_qubit", extra_qubit(v)}, {"z", to_json(report)}};
    if (!a.emit.empty()) {
        write_file(a.emit, serialize_circuit(z));
        result["emitted"] = a.emit;
    }
    std::cerr << "Z on " << z.n_qubits << " qubits, distance " << format_angle(report.distance) << "\n";
    return 0;
}

struct TheoremArgs {
    std::string verifier, phi;
    bool phi_grid = false;
    std::size_t random = 0;
    std::size_t n_input = 2, anc = 2, gates = 20;
    unsigned jobs = 1;
};

std::vector<double> default_phi_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 8; ++k) g.push_back(std::numbers::pi * k / 16);
    return g;
}

int cmd_theorem(Run& run, const TheoremArgs& a, json& result) {
    if (a.verifier.empty() == (a.random == 0)) throw UsageError("give a verifier file or --random N");
    if (a.phi.empty() == !a.phi_grid) throw UsageError("give exactly one of --phi or --phi-grid");
    const std::vector<double> phis = a.phi_grid ? default_phi_grid() : std::vector<double>{parse_angle(a.phi)};
    for (double phi : phis) check_phi(phi);

    std::vector<VerifierSpec> verifiers;
    if (!a.verifier.empty()) {
        verifiers.push_back(VerifierSpec::from_circuit(run.circuit(a.verifier)));
    } else {
        if (a.n_input == 0 || a.anc == 0) throw UsageError("--n-input and --anc must be positive");
        run.seed_used = true;
        Rng rng(run.seed);
        for (std::size_t i = 0; i < a.random; ++i) verifiers.push_back(random_verifier(a.n_input, a.anc, a.gates, rng));
    }

    const std::size_t cases = verifiers.size() * phis.size();
    std::vector<json> rows(cases);
    std::vector<char> ok(cases, 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cases; i = next++) {
            const TheoremReport r = check_theorem(verifiers[i / phis.size()], phis[i % phis.size()]);
            rows[i] = to_json(r);
            rows[i]["verifier"] = i / phis.size();
            ok[i] = r.satisfied;
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(cases)));
    std::vector<std::thread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    const auto satisfied = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 1));
    result = {{"cases", rows}, {"total", cases}, {"satisfied", satisfied}, {"all_satisfied", satisfied == cases}};
    std::cerr << satisfied << " of " << cases << " cases satisfy the bound\n";
    return satisfied == cases ? 0 : 1;
}

struct RandomArgs {
    std::size_t qubits = 2, gates = 20, anc = 0;
    std::string emit;
};

int cmd_random(Run& run, const RandomArgs& a, json& result) {
    if (a.qubits == 0) throw UsageError("--qubits must be positive");
    run.seed_used = true;
    Rng rng(run.seed);
    Circuit c = a.anc > 0 ? random_verifier(a.qubits, a.anc, a.gates, rng).circuit : random_circuit(a.qubits, a.gates, rng);
    const std::string text = serialize_circuit(c);
    result = {{"qubits", c.n_qubits}, {"gates", c.gates.size()}, {"fnv1a64", hex64(fnv1a64(text))}};
    if (!a.emit.empty()) {
        write_file(a.emit, text);
        result["emitted"] = a.emit;
    } else {
        result["circuit"] = text;
    }
    std::cerr << "random circuit on " << c.n_qubits << " qubits, " << c.gates.size() << " gates\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qident: approximate identity and equivalence checks for small quantum circuits"};
    app.require_subcommand(1);
    app.fallthrough();
    Run run;
    for (int i = 0; i < argc; ++i) run.argv.emplace_back(argv[i]);
    app.add_option("--seed", run.seed, "seed for random generators (QIDENT_SEED overrides)");
    unsigned jobs = 1;
    app.add_option("--jobs", jobs, "worker threads for theorem sweeps")->check(CLI::PositiveNumber);

    DistArgs dist;
    auto* c_dist = app.add_subcommand("dist", "distance of a circuit from the global phases");
    c_dist->add_option("circuit", dist.path)->required();
    c_dist->add_option("--delta", dist.delta, "FAR threshold");
    c_dist->add_option("--mu", dist.mu, "NEAR threshold");
    c_dist->add_option("--oracle-grid", dist.oracle_grid, "also minimize over an N-point phase grid");

    EquivArgs eq;
    auto* c_eq = app.add_subcommand("equiv", "compare two circuits, optionally on a subspace");
    c_eq->add_option("a", eq.a)->required();
    c_eq->add_option("b", eq.b)->required();
    c_eq->add_option("--subspace", eq.subspace, "membership circuit V");
    c_eq->add_option("--anc", eq.anc, "ancillas of V (the last one is the flag)");
    c_eq->add_option("--delta", eq.delta)->required();
    c_eq->add_option("--mu", eq.mu)->required();

    VerifierArgs ver;
    auto* c_ver = app.add_subcommand("verifier", "build the phase-estimation equivalence verifier");
    c_ver->add_option("a", ver.a)->required();
    c_ver->add_option("b", ver.b)->required();
    c_ver->add_option("--subspace", ver.subspace);
    c_ver->add_option("--anc", ver.anc);
    c_ver->add_option("--t", ver.t, "phase bits (default: accuracy rule)");
    c_ver->add_option("--delta", ver.delta)->required();
    c_ver->add_option("--mu", ver.mu)->required();
    c_ver->add_option("--emit", ver.emit, "write the verifier circuit here");

    AcceptArgs acc;
    auto* c_acc = app.add_subcommand("accept", "acceptance probability of a verifier");
    c_acc->add_option("verifier", acc.verifier)->required();
    c_acc->add_option("--witness", acc.witness, "statevector file");
    c_acc->add_option("--honest", acc.honest, "circuits A B; use the arc-endpoint eigenvector pair")->expected(2);
    c_acc->add_option("--subspace", acc.subspace);
    c_acc->add_option("--anc", acc.anc);
    c_acc->add_option("--t", acc.t);
    c_acc->add_option("--delta", acc.delta);
    c_acc->add_option("--mu", acc.mu);
    c_acc->add_flag("--max", acc.max, "also report the maximum over all witnesses");

    ReduceArgs red;
    auto* c_red = app.add_subcommand("reduce", "build Z from a verifier");
    c_red->add_option("verifier", red.verifier)->required();
    c_red->add_option("--phi", red.phi)->required();
    c_red->add_option("--emit", red.emit);

    TheoremArgs thm;
    auto* c_thm = app.add_subcommand("theorem", "check the norm bounds on Z against the verifier's acceptance");
    c_thm->add_option("verifier", thm.verifier);
    c_thm->add_option("--phi", thm.phi);
    c_thm->add_flag("--phi-grid", thm.phi_grid, "phi = k pi / 16 for k = 1..8");
    c_thm->add_option("--random", thm.random, "check N seeded random verifiers instead of a file");
    c_thm->add_option("--n-input", thm.n_input);
    c_thm->add_option("--anc", thm.anc);
    c_thm->add_option("--gates", thm.gates);

    RandomArgs rnd;
    auto* c_rnd = app.add_subcommand("random", "seeded random circuit or verifier");
    c_rnd->add_option("--qubits", rnd.qubits, "qubits (input qubits for a verifier)");
    c_rnd->add_option("--gates", rnd.gates);
    c_rnd->add_option("--anc", rnd.anc, "make a verifier with this many ancillas");
    c_rnd->add_option("--emit", rnd.emit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (const char* env = std::getenv("QIDENT_SEED")) {
        try {
            run.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: QIDENT_SEED must be an unsigned integer\n";
            return 2;
        }
    }
    thm.jobs = jobs;

    const auto start = std::chrono::steady_clock::now();
    json result;
    int code = 0;
    CLI::App* sub = app.get_subcommands().front();
    run.command = sub->get_name();
    try {
        if (sub == c_dist) code = cmd_dist(run, dist, result);
        else if (sub == c_eq) code = cmd_equiv(run, eq, result);
        else if (sub == c_ver) code = cmd_verifier(run, ver, result);
        else if (sub == c_acc) code = cmd_accept(run, acc, result);
        else if (sub == c_red) code = cmd_reduce(run, red, result);
        else if (sub == c_thm) code = cmd_theorem(run, thm, result);
        else code = cmd_random(run, rnd, result);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SubspaceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json report = {{"command", run.command}, {"argv", run.argv}, {"inputs", run.inputs}, {"result", result}, {"wall_time_s", wall}};
    if (run.seed_used) report["seed"] = run.seed;
    std::cout << report.dump(2) << "\n";
    return code;
}

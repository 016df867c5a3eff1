// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"

#include "test_util.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    json report;
};

// Runs the CLI from the fixture directory; stderr is discarded.
Outcome run(const std::string& args, const std::string& env = "") {
    const std::string cmd = "cd '" QIDENT_FIXTURES_DIR "' && " + env + " '" QIDENT_CLI_PATH "' " + args + " 2>/dev/null";
    Outcome o;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return o;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, got);
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (!o.out.empty()) o.report = json::parse(o.out, nullptr, false);
    return o;
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / ("qident_cli_test_" + std::to_string(getpid()));
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

json calibration() {
    return json::parse(qident::testing::read_file(qident::testing::fixture_path("calibration.json")))["equivalence_verifier"];
}

std::string verifier_flags(const json& cal) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "--t %d --delta %.17g --mu %.17g", cal["t"].get<int>(), cal["delta"].get<double>(), cal["mu"].get<double>());
    return buf;
}

json without_wall_time(json j) {
    j.erase("wall_time_s");
    return j;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(CliDist, ZGateIsFar) {
    const Outcome o = run("dist z.qc --delta 1.0 --mu 0.5");
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.report["command"], "dist");
    EXPECT_EQ(o.report["result"]["verdict"], "FAR");
    EXPECT_NEAR(o.report["result"]["distance"].get<double>(), std::sqrt(2.0), 1e-12);
    ASSERT_EQ(o.report["inputs"].size(), 1u);
    EXPECT_EQ(o.report["inputs"][0]["fnv1a64"].get<std::string>().size(), 16u);
}

TEST(CliDist, IdentityHasDistanceZero) {
    const Outcome o = run("dist id2.qc");
    EXPECT_EQ(o.code, 0);
    EXPECT_NEAR(o.report["result"]["distance"].get<double>(), 0.0, 1e-12);
    EXPECT_FALSE(o.report["result"].contains("verdict"));
}

TEST(CliDist, OracleGrid) {
    const Outcome o = run("dist rand4.qc --oracle-grid 100000");
    ASSERT_EQ(o.code, 0);
    const json& oracle = o.report["result"]["oracle"];
    EXPECT_LE(oracle["discrepancy"].get<double>(), 1e-6 + 2 * std::sin(kPi / 1e5));
}

TEST(CliDist, ExitCodes) {
    EXPECT_EQ(run("dist t.qc --delta 0.5 --mu 0.1").code, 4);
    EXPECT_EQ(run("dist t.qc --delta 0.5 --mu 0.1").report["result"]["verdict"], "PROMISE_VIOLATED");
    const fs::path dir = scratch();
    write(dir / "dup.qc", "qubits 2\ncx 0 0\n");
    EXPECT_EQ(run("dist '" + (dir / "dup.qc").string() + "'").code, 2);
    write(dir / "big.qc", "qubits 13\nh 0\n");
    EXPECT_EQ(run("dist '" + (dir / "big.qc").string() + "'").code, 3);
    EXPECT_EQ(run("dist missing.qc").code, 2);
    EXPECT_EQ(run("dist z.qc --delta 0.1 --mu 0.5").code, 2);
    EXPECT_EQ(run("dist z.qc --delta bogus").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
}

TEST(CliEquiv, Examples) {
    EXPECT_EQ(run("equiv rand3.qc rand3.qc --delta .3 --mu .1").code, 0);
    const Outcome t = run("equiv t.qc id1.qc --delta .39 --mu .2");
    EXPECT_EQ(t.code, 1);
    EXPECT_EQ(t.report["result"]["verdict"], "FAR");
    const Outcome sub = run("equiv z.qc id1.qc --subspace cxflag.qc --anc 1 --delta .3 --mu .1");
    EXPECT_EQ(sub.code, 0);
    EXPECT_EQ(sub.report["result"]["verdict"], "NEAR");
    EXPECT_EQ(sub.report["result"]["subspace_dimension"], 1);
    EXPECT_EQ(sub.report["inputs"].size(), 3u);
    EXPECT_EQ(run("equiv t.qc id1.qc --delta .5 --mu .1").code, 4);
    EXPECT_EQ(run("equiv x.qc id1.qc --subspace cxflag.qc --anc 1 --delta .3 --mu .1").code, 5);  // not invariant
    EXPECT_EQ(run("equiv cx.qc id2.qc --subspace cp_flag.qc --anc 1 --delta .3 --mu .1").code, 5);  // empty
    EXPECT_EQ(run("equiv z.qc id2.qc --delta .3 --mu .1").code, 2);
}

TEST(CliVerifier, CalibratedCompletenessAndSoundness) {
    const json cal = calibration();
    const fs::path dir = scratch();
    const std::string flags = verifier_flags(cal);

    const std::string sep = (dir / "sep.qc").string();
    const Outcome built = run("verifier s_id2.qc id2.qc " + flags + " --emit '" + sep + "'");
    ASSERT_EQ(built.code, 0);
    EXPECT_EQ(built.report["result"]["qubits"], 13);
    EXPECT_FALSE(built.report["result"]["params"]["meets_accuracy_rule"].get<bool>());
    const Outcome honest = run("accept '" + sep + "' --honest s_id2.qc id2.qc " + flags);
    ASSERT_EQ(honest.code, 0);
    const double completeness = honest.report["result"]["acceptance"].get<double>();
    EXPECT_GE(completeness, cal["completeness"].get<double>() - 1e-9);

    const std::string same = (dir / "same.qc").string();
    ASSERT_EQ(run("verifier rand2.qc rand2.qc " + flags + " --emit '" + same + "'").code, 0);
    const Outcome sound = run("accept '" + same + "' --max");
    ASSERT_EQ(sound.code, 0);
    const double p_max = sound.report["result"]["p_max"].get<double>();
    EXPECT_LE(p_max, cal["soundness_limit"].get<double>());
    EXPECT_GE(completeness - p_max, cal["min_gap"].get<double>());
}

TEST(CliAccept, WitnessFiles) {
    const fs::path dir = scratch();
    write(dir / "one.sv", "dim 2\n0 0\n1 0\n");
    const Outcome ok = run("accept cxflag_verifier.qc --witness '" + (dir / "one.sv").string() + "' --max");
    EXPECT_EQ(ok.code, 0);
    EXPECT_NEAR(ok.report["result"]["acceptance"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(ok.report["result"]["p_max"].get<double>(), 1.0, 1e-12);
    EXPECT_EQ(ok.report["inputs"].size(), 2u);

    write(dir / "bad.sv", "dim 2\n1 0\n1 0\n");
    EXPECT_EQ(run("accept cxflag_verifier.qc --witness '" + (dir / "bad.sv").string() + "'").code, 2);
    write(dir / "garbled.sv", "dim 2\n1 zero\n0 0\n");
    EXPECT_EQ(run("accept cxflag_verifier.qc --witness '" + (dir / "garbled.sv").string() + "'").code, 2);
    write(dir / "wide.sv", "dim 4\n1 0\n0 0\n0 0\n0 0\n");
    EXPECT_EQ(run("accept cxflag_verifier.qc --witness '" + (dir / "wide.sv").string() + "'").code, 2);
    EXPECT_EQ(run("accept cxflag_verifier.qc").code, 2);
    EXPECT_EQ(run("accept cxflag_verifier.qc --witness missing.sv").code, 2);
}

TEST(CliReduce, EmitsZ) {
    const fs::path dir = scratch();
    const std::string z = (dir / "z.qc").string();
    const Outcome o = run("reduce accept_all.qc --phi pi/4 --emit '" + z + "'");
    ASSERT_EQ(o.code, 0);
    EXPECT_EQ(o.report["result"]["qubits"], 3);
    EXPECT_NEAR(o.report["result"]["z"]["distance"].get<double>(), 2 * std::sin(kPi / 8), 1e-12);
    const qident::Circuit emitted = qident::parse_circuit(qident::testing::read_file(z));
    EXPECT_EQ(emitted.n_qubits, 3u);
    EXPECT_EQ(run("reduce accept_all.qc --phi 0").code, 2);
}

TEST(CliTheorem, Examples) {
    const Outcome all = run("theorem accept_all.qc --phi pi/2");
    EXPECT_EQ(all.code, 0);
    EXPECT_NEAR(all.report["result"]["cases"][0]["margin"].get<double>(), 0.0, 1e-9);
    const Outcome none = run("theorem reject_all.qc --phi pi/2");
    EXPECT_EQ(none.code, 0);
    EXPECT_NEAR(none.report["result"]["cases"][0]["margin"].get<double>(), 1.08239 - 0.76537, 1e-4);
    // the case-1 bound does not hold once 2 phi wraps past pi
    EXPECT_EQ(run("theorem accept_all.qc --phi 2.356194490192345").code, 1);
    EXPECT_EQ(run("theorem accept_all.qc").code, 2);
    EXPECT_EQ(run("theorem --phi pi/2").code, 2);
}

TEST(CliTheorem, RandomGrid) {
    const Outcome o = run("theorem --random 30 --phi-grid --seed 7 --jobs 2");
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.report["result"]["total"], 240);
    EXPECT_EQ(o.report["result"]["all_satisfied"], true);
    EXPECT_EQ(o.report["seed"], 7);
}

TEST(CliDeterminism, SeededRunsAreByteIdentical) {
    const Outcome a = run("theorem --random 5 --phi-grid --seed 11 --jobs 2");
    const Outcome b = run("theorem --random 5 --phi-grid --seed 11 --jobs 1");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(without_wall_time(a.report)["result"].dump(), without_wall_time(b.report)["result"].dump());

    const Outcome r1 = run("random --qubits 3 --gates 12 --seed 5");
    const Outcome r2 = run("random --qubits 3 --gates 12 --seed 5");
    EXPECT_EQ(without_wall_time(r1.report).dump(), without_wall_time(r2.report).dump());
    const Outcome r3 = run("random --qubits 3 --gates 12 --seed 6");
    EXPECT_NE(r1.report["result"]["circuit"], r3.report["result"]["circuit"]);
}

TEST(CliDeterminism, EnvironmentSeedOverridesFlag) {
    const Outcome flag = run("random --qubits 2 --gates 8 --seed 42");
    const Outcome env = run("random --qubits 2 --gates 8 --seed 3", "QIDENT_SEED=42");
    EXPECT_EQ(flag.report["result"]["circuit"], env.report["result"]["circuit"]);
    EXPECT_EQ(env.report["seed"], 42);
}

TEST(CliRandom, FixtureGeneratorIsReproducible) {
    // rand<n>.qc were produced by `random --qubits n --gates 30 --seed 100+n`
    for (int n = 2; n <= 5; ++n) {
        const Outcome o = run("random --qubits " + std::to_string(n) + " --gates 30 --seed " + std::to_string(100 + n));
        ASSERT_EQ(o.code, 0);
        EXPECT_EQ(o.report["result"]["circuit"].get<std::string>(),
                  qident::testing::read_file(qident::testing::fixture_path("rand" + std::to_string(n) + ".qc")));
    }
}

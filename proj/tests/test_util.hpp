// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qident/circuit.hpp"
#include "qident/dense_sim.hpp"

namespace qident::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(QIDENT_FIXTURES_DIR) / name;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Circuit load_fixture(const std::string& name) { return parse_circuit(read_file(fixture_path(name))); }

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

}  // namespace qident::testing

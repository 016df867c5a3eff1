// Copyright 2026 The qident Authors.
// SPDX-License-Identifier: Apache-2.0

// JSON forms of the engine reports.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qident/reduction.hpp"
#include "qident/spectral.hpp"

namespace qident {

inline nlohmann::json to_json(const SpectralReport& r) {
    return {{"eigenphases", r.eigenphases},
            {"arc_start", r.arc_start},
            {"arc_length", r.arc_length},
            {"optimal_phase", r.optimal_phase},
            {"distance", r.distance}};
}

inline nlohmann::json to_json(const IdentityVerdict& v) {
    nlohmann::json j = to_json(v.report);
    j["verdict"] = std::string(to_string(v.verdict));
    j["delta"] = v.delta;
    j["mu"] = v.mu;
    return j;
}

inline nlohmann::json to_json(const TheoremReport& r) {
    nlohmann::json j = {{"case", std::string(to_string(r.theorem_case))},
                        {"epsilon", r.epsilon_measured},
                        {"phi", r.phi},
                        {"measured", r.measured},
                        {"bound", r.bound},
                        {"satisfied", r.satisfied},
                        {"margin", r.margin},
                        {"warning", r.warning ? nlohmann::json(*r.warning) : nlohmann::json(nullptr)},
                        {"p_max", r.p_max},
                        {"min_distance", r.min_distance}};
    if (r.epsilon_declared) j["epsilon_declared"] = *r.epsilon_declared;
    return j;
}

inline nlohmann::json to_json(const SeparationReport& s) {
    return {{"separated", s.ok},          {"gap", s.gap},
            {"lower", s.lower},           {"upper", s.upper},
            {"approx_lower", s.approx_lower}, {"approx_upper", s.approx_upper}};
}

}  // namespace qident

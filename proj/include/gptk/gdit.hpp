#pragma once

#include "gptk/statics.hpp"
#include "gptk/theory.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gptk {

// Theory whose pure states are all deterministic value tuples over m
// measurements with n outcomes each. Vertex g_k carries the tuple with
// k = sum_j x_j * n^j (first measurement least significant), so for
// (2, 2): g0=(0,0), g1=(1,0), g2=(0,1), g3=(1,1).
struct GditTheory {
    int m = 1;
    int n = 2;
    Theory theory;

    std::vector<int> vertex_values(int index) const;
    int vertex_index(const std::vector<int>& values) const;
};

GditTheory build_gdit(int m, int n);

// Measuring X_i keeps coordinate i and spreads every other coordinate
// uniformly (weight n^(1-m) per image vertex).
std::vector<DisturbanceRule> symmetric_disturbance(const GditTheory& g);

struct Correspondence {
    GditTheory gdit;
    std::vector<DisturbanceRule> rules;
    Theory regular;
    // per regular state: its decomposition over gdit vertices
    std::map<std::string, Mixture> decompositions;
};

// Builds the regular theory whose state for (measurement, value) is the
// class-averaged rule image of the vertices sharing that value. States are
// named "<measurement>=<value>". Throws if the rules fail the disturbance
// consistency check.
Correspondence corresponding_regular_theory(const GditTheory& g,
                                            const std::vector<DisturbanceRule>& rules);

struct TrialResult {
    Vec gdit_distribution;     // empirical outcome distribution, gdit protocol
    Vec regular_distribution;  // same protocol in the corresponding theory
};

// Two-step protocol: prepare by measuring `prepare_meas`, post-selecting
// on `prepare_outcome` (uniform prior over gdit vertices), then measure
// `then_measure`. Repeatability is assumed when the two coincide.
TrialResult indistinguishability_trial(const Correspondence& c,
                                       const std::string& prepare_meas, int prepare_outcome,
                                       const std::string& then_measure, long long trials,
                                       std::uint64_t seed);

}  // namespace gptk

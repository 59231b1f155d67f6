#pragma once

#include "gptk/geometry.hpp"
#include "gptk/theory.hpp"

#include <map>
#include <string>
#include <vector>

namespace gptk {

// Feasibility system for a joint measurement over a measurement subset.
// One variable M(tuple|state) per outcome tuple and per pure state of the
// associated state space (states with a definite value under at least one
// subset measurement); constraints are nonnegativity, the per-measurement
// marginalization blocks, and one equality block per affine dependency of
// the associated states.
struct JointMeasurementSystem {
    std::vector<std::string> measurement_names;
    std::vector<int> outcome_counts;
    std::vector<std::string> state_names;  // sorted
    std::vector<std::vector<int>> tuples;
    std::vector<AffineDependency> dependencies;
    ConstraintSystem system;

    std::string var_name(const std::vector<int>& tuple, const std::string& state) const;
};

JointMeasurementSystem build_joint_system(const Theory& t,
                                          const std::vector<std::string>& subset);

struct ComeasureResult {
    bool yes = false;
    // yes: joint measurement values per variable name
    std::map<std::string, Rational> witness;
    // no: infeasibility certificate plus the marginal-forced entries that
    // can be read off directly (the human-readable trace)
    FarkasCertificate certificate;
    std::map<std::string, Rational> forced_values;
};

ComeasureResult comeasurable(const Theory& t, const std::vector<std::string>& subset);

struct CountingReport {
    Integer constraints;       // 2(n-1)mn + (n^2-1)nu
    Integer free_variables;    // m(n-1)(n+1)n
    bool overconstrained = false;
    Rational state_count_threshold;  // (n+1)/(n-1)
};

CountingReport counting_report(int m, int n, int nu);

}  // namespace gptk

#pragma once

#include "gptk/theory.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gptk {

// Post-measurement update rule for one measurement: keyed by state and,
// when the rule is outcome-conditioned, by outcome.
struct DisturbanceRule {
    std::string measurement;
    // (state name, outcome or -1 for outcome-independent) -> image
    std::map<std::pair<std::string, int>, Mixture> images;

    const Mixture& image(const std::string& state, int outcome) const;
    bool covers(const std::string& state, int outcome) const;
};

std::vector<DisturbanceRule> rules_from_entries(const std::vector<DisturbanceEntry>& entries);

struct UncertaintyReport {
    Rational vertex_value;                  // maximum over pure states
    std::optional<Rational> hull_value;     // maximum over the full polytope
};

// 1 - (average of the best per-measurement outcome probabilities),
// maximized over pure states. The full-polytope value is reported
// separately when the tuple space is small enough to enumerate.
UncertaintyReport uncertainty(const Theory& t);

bool jointly_distinguishable(const Theory& t, const std::vector<std::string>& subset);

// D + 1: upper bound on the number of jointly distinguishable pure states.
int measurement_dimension_bound(const Theory& t);

struct DisturbanceViolation {
    std::string measurement;
    std::string description;
};

// For every affine dependency between pure states and every measurement,
// pushing both sides through the rule must give operationally equal
// mixtures. Also checks that eigenstates of the measured observable map
// to themselves.
std::vector<DisturbanceViolation> check_disturbance_consistency(
    const Theory& t, const std::vector<DisturbanceRule>& rules);

struct TomographyPlan {
    Rational epsilon;
    Rational delta;
    int outcome_count = 2;
    long long trials = 1;
};

// Smallest t with 2 exp(-eps^2 t / (3n)) <= delta; the transcendental
// evaluation is rounded outward so the returned t always certifies the
// bound.
long long chernoff_trials(const Rational& epsilon, const Rational& delta, int n);

// Certified enclosure of ln(q) for q > 0.
std::pair<Rational, Rational> log_bounds(const Rational& q, int terms);

struct TomographyOutcome {
    // per measurement: empirical frequency vector over outcomes
    std::vector<Vec> frequencies;
    // per measurement: true when every |f_j - mu_j| >= eps * mu_j
    std::vector<bool> deviated;
    bool any_deviation = false;
};

TomographyOutcome simulate_clone_tomography(const Theory& t, const std::string& state,
                                            const TomographyPlan& plan, std::uint64_t seed);

}  // namespace gptk

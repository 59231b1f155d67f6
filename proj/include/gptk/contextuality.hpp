#pragma once

#include "gptk/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace gptk {

// Undirected comeasurability graph over measurement names.
struct CongruenceGraph {
    std::vector<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;

    bool has_edge(const std::string& a, const std::string& b) const;
};

struct CongruenceReport {
    bool transitive = false;
    // when transitive: connected components (each verified to be a clique)
    std::vector<std::vector<std::string>> classes;
    // when intransitive: A, B, C with AB and BC edges but no AC edge
    std::vector<std::string> witness;
};

CongruenceReport congruence_classes(const CongruenceGraph& g);

// Empirical behavior: per context (a list of measurement names), a
// distribution over joint outcome tuples. Overlapping contexts need not
// agree; marginal consistency is a separate check.
struct Behavior {
    std::vector<std::string> measurements;
    std::vector<int> outcome_counts;  // parallel to measurements
    std::vector<std::vector<std::string>> contexts;
    // context key ("A,B") -> outcome tuple key ("0,1") -> probability
    std::map<std::string, std::map<std::string, Rational>> stats;

    int measurement_index(const std::string& name) const;
    static std::string context_key(const std::vector<std::string>& names);
    static std::string tuple_key(const std::vector<int>& values);
    static std::vector<int> parse_tuple(const std::string& key);
    const std::map<std::string, Rational>& context_stats(
        const std::vector<std::string>& names) const;
    // 0 when the tuple is absent from the stats map
    Rational probability(const std::vector<std::string>& names,
                         const std::vector<int>& values) const;
};

Behavior parse_behavior(const std::string& document);
std::string serialize_behavior(const Behavior& b);
Behavior load_behavior(const std::string& path);

std::vector<std::string> validate_behavior(const Behavior& b);

// Distribution of one measurement within one context, summed out exactly.
Vec single_marginal(const Behavior& b, const std::vector<std::string>& context,
                    const std::string& name);

// Single-measurement marginals must agree across all contexts containing
// the measurement; returns a description of every violated equality.
std::vector<std::string> gleason_nosignaling_check(const Behavior& b);

// Product of per-class distributions over a partition of the measurements.
// Each class must appear as a context of b; the result has one global
// context whose marginals reproduce each class exactly.
Behavior product_jd(const Behavior& b, const std::vector<std::vector<std::string>>& classes);

// Closed-form global distribution for contexts {A1,B1,B2}, {A2,B1,B2} and
// {B1,B2}: P(a1,a2,b1,b2) = P(a1,b1,b2) P(a2,b1,b2) / P(b1,b2). Requires
// consistent and strictly positive (B1,B2) marginals.
Behavior conditional_jd_2x2(const Behavior& b);

struct JdResult {
    bool exists = false;
    // over full outcome tuples in measurement order, when it exists
    std::map<std::string, Rational> joint;
    bool certified_infeasible = false;  // Farkas certificate verified
};

// Decides whether one joint distribution over all measurements reproduces
// every context. Throws when the global tuple space exceeds the guard.
JdResult jd_feasible(const Behavior& b, long long guard = 1000000);

// Two-outcome correlator sum <AB> + <BC> + <AC> with outcomes mapped
// 0 -> +1, 1 -> -1 over contexts {A,B}, {B,C}, {C,A} (any orientation).
Rational os_value(const Behavior& b, const std::string& a, const std::string& bm,
                  const std::string& c);

// Range of the correlator sum over the 8 deterministic assignments.
std::pair<Rational, Rational> os_noncontextual_range();

// (v_max - v_mid)(v_mid - v_min) with ties resolved by majority: a
// repeated value takes both of its slots. 1 exactly when all differ.
int xos_score_triple(int x, int y, int z);

// Expected score summed over the four length-three contexts of the
// behavior's measurements (X,Y,Z,W): XYZ, YZW, ZWX, WXY.
Rational xos_value(const Behavior& b);

// Maximum of the same sum over the 81 deterministic ternary assignments.
Rational xos_noncontextual_max();

// Per-context deterministic outcome assignment.
struct ContextualConfiguration {
    // context key -> outcome tuple key
    std::map<std::string, std::string> assignment;
};

struct ContextualConfigReport {
    long long count = 0;
    std::vector<ContextualConfiguration> configurations;  // when materialized
};

// All deterministic per-context assignments of the scenario; the count is
// always reported, the list only when materialize is set (guarded).
ContextualConfigReport enumerate_contextual_configurations(
    const std::vector<std::string>& measurements, const std::vector<int>& outcome_counts,
    const std::vector<std::vector<std::string>>& contexts, bool materialize,
    long long guard = 1000000);

// Deterministic behavior realizing a configuration.
Behavior configuration_behavior(const std::vector<std::string>& measurements,
                                const std::vector<int>& outcome_counts,
                                const std::vector<std::vector<std::string>>& contexts,
                                const ContextualConfiguration& config);

// Uniform mixture of behaviors over identical scenarios. Two distinct
// all-binary behaviors must be bit-flip partners (every context's stats
// swap outcomes 0 and 1 pointwise); larger sets mix freely.
Behavior contextual_box(const std::vector<Behavior>& parts);

struct DimensionReport {
    long long unrestricted_dimension = 0;  // 3(n^2 - 1)
    long long gleason_constraints = 0;     // 3(n - 1)
    long long box_polytope_dimension = 0;  // 3n(n - 1)
    long long simplex_dimension = 0;       // 3(n - 1)
};

DimensionReport contextual_dimension_report(int n);

}  // namespace gptk

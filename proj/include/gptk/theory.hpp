#pragma once

#include "gptk/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gptk {

struct Measurement {
    std::string name;
    int outcomes = 2;
};

// A pure state is a tuple of outcome distributions, one per measurement,
// in the theory's measurement order.
struct PureState {
    std::string name;
    std::vector<Vec> dists;
};

// Convex combination of named pure states.
struct Mixture {
    std::map<std::string, Rational> weights;

    bool operator==(const Mixture& o) const { return weights == o.weights; }
};

// Optional post-measurement update: measuring `measurement` on `state`
// (with the given outcome, when outcome-conditioned) leaves `image`.
struct DisturbanceEntry {
    std::string measurement;
    std::string state;
    std::optional<int> outcome;
    Mixture image;
};

struct NamedVec {
    std::string name;
    Vec coords;
};

// User-supplied ontology section: intermediate vertices live in the
// generalized coordinate space (per measurement, probabilities of
// outcomes 1..n-1), and each pure state decomposes over them.
struct OntologySpec {
    std::string kind;  // "g" or "s"
    std::vector<NamedVec> intermediate_vertices;
    std::map<std::string, std::map<std::string, Rational>> decompositions;
};

struct Theory {
    std::vector<Measurement> measurements;
    std::vector<PureState> pure_states;
    // (measurement name, outcome) -> pure state name
    std::map<std::pair<std::string, int>, std::string> eigenstates;
    std::vector<DisturbanceEntry> disturbance;
    std::optional<OntologySpec> ontology;

    int measurement_index(const std::string& name) const;
    int state_index(const std::string& name) const;
    const PureState& state(const std::string& name) const;

    // All distributions of a state concatenated into one vector.
    Vec point(const PureState& s) const;
    // Same, dropping outcome 0 of every measurement (length = dimension).
    Vec generalized_point(const PureState& s) const;
};

std::vector<std::string> validate_theory(const Theory& t);
int tomographic_dimension(const Theory& t);
// True when every (measurement, outcome) has a mapped eigenstate.
bool is_regular(const Theory& t);

// Component-wise convex combination; throws if weights are invalid.
std::vector<Vec> mix(const Theory& t, const Mixture& m);
Vec mix_point(const Theory& t, const Mixture& m);

Theory parse_theory(const std::string& document);
std::string serialize_theory(const Theory& t);
Theory load_theory(const std::string& path);

bool same_point(const std::vector<Vec>& a, const std::vector<Vec>& b);

}  // namespace gptk

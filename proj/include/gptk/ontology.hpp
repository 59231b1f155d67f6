#pragma once

#include "gptk/gdit.hpp"
#include "gptk/theory.hpp"

#include <map>
#include <string>
#include <vector>

namespace gptk {

// Ontological model over an underlying simplex. Ontic points are the
// value tuples over the fiducial measurements (named l1..lN with the
// first measurement most significant); intermediate coordinates live in
// the generalized coordinate space (per measurement, probabilities of
// outcomes 1..n-1) and push every state distribution back onto its
// operational state.
struct OnticModel {
    std::string kind;  // "g" or "s"
    std::vector<std::string> ontic_names;
    std::vector<Vec> intermediate_coords;
    std::map<std::string, Vec> state_distributions;
};

// All value tuples over the theory's measurements, first measurement most
// significant.
std::vector<std::vector<int>> underlying_simplex(const Theory& t);

// Compression of a barycentric point over the underlying simplex into
// generalized coordinates; affine, vertex-to-vertex.
Vec compress_g(const Theory& t, const Vec& barycentric);

// g-type distributions: the product lift of each pure state's fiducial
// distributions onto the underlying simplex.
OnticModel ontic_distributions_g(const Theory& t);

// Same model, but with the decompositions carried by a gdit
// correspondence (rule-derived rather than lifted).
OnticModel ontic_distributions_g(const Correspondence& c);

// s-type: user supplies the intermediate vertices and per-state
// decompositions; push-forward is validated exactly.
OnticModel ontic_distributions_s(const Theory& t, const OntologySpec& spec);

// Exact push-forward validation for any model.
std::vector<std::string> verify_ontic_model(const Theory& t, const OnticModel& model);

struct PermutationResult {
    bool found = false;
    // ontic point index -> image index, lexicographically smallest
    std::vector<int> permutation;
};

// Searches for a permutation of ontic points implementing the given pure
// state permutation: mu_target(i) = mu_i composed with the inverse
// permutation. Impossible is certified by exhaustion.
PermutationResult find_ontic_permutation(const OnticModel& model,
                                         const std::map<std::string, std::string>& target);

struct PrepContextualityResult {
    bool witness = false;
    Vec distribution_a;
    Vec distribution_b;
};

// Requires mix(a) = mix(b) operationally; Witness iff the two ontic
// images differ.
PrepContextualityResult prep_contextuality_witness(const Theory& t, const OnticModel& model,
                                                   const Mixture& a, const Mixture& b);

}  // namespace gptk

#pragma once

#include "gptk/rational.hpp"
#include "gptk/theory.hpp"

#include <string>
#include <vector>

namespace gptk {

// Linear system over named variables: equalities coeff.x = rhs and
// inequalities coeff.x >= rhs. Variables are free unless constrained.
struct ConstraintSystem {
    std::vector<std::string> variables;
    std::vector<std::pair<Vec, Rational>> equalities;
    std::vector<std::pair<Vec, Rational>> inequalities;

    int var_index(const std::string& name) const;
    void add_equality(const Vec& coeff, const Rational& rhs);
    void add_inequality(const Vec& coeff, const Rational& rhs);
};

// Multipliers proving infeasibility: sum of eq_multipliers[i] * equality i
// plus ineq_multipliers[j] * inequality j (each >= 0) has zero coefficients
// but strictly positive right-hand side.
struct FarkasCertificate {
    Vec eq_multipliers;
    Vec ineq_multipliers;
};

struct FeasibleResult {
    bool feasible = false;
    Vec assignment;               // when feasible
    FarkasCertificate certificate;  // when infeasible
};

FeasibleResult feasible(const ConstraintSystem& cs);

// Checks a Farkas certificate by direct multiplication.
bool verify_farkas(const ConstraintSystem& cs, const FarkasCertificate& c);
bool verify_assignment(const ConstraintSystem& cs, const Vec& x);

struct OptimumResult {
    Rational value;
    Vec argmax;
};

// Exact maximum of objective.x; throws on infeasible or unbounded systems.
OptimumResult maximize(const ConstraintSystem& cs, const Vec& objective);

bool is_simplex(const std::vector<Vec>& points);

struct AffineDependency {
    Mixture left;
    Mixture right;
};

// Basis of the affine-dependency space of named points, each presented as
// an equality of two convex mixtures. Pivoting follows the points sorted
// by name, so the output is stable across runs.
std::vector<AffineDependency> nonsimpliciality_conditions(
    const std::vector<std::string>& names, const std::vector<Vec>& points);

struct HullResult {
    bool inside = false;
    Mixture witness;  // inside: weights reproducing the query
    // outside: affine functional offset + normal.x, > 0 at the query
    // and <= 0 at every hull point
    Rational offset;
    Vec functional;
};

HullResult hull_membership(const std::vector<std::string>& names,
                           const std::vector<Vec>& points, const Vec& query);

}  // namespace gptk

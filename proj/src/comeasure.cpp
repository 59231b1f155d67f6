#include "gptk/comeasure.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gptk {

std::string JointMeasurementSystem::var_name(const std::vector<int>& tuple,
                                             const std::string& state) const {
    std::string s = "M(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(tuple[i]);
    }
    s += "|" + state + ")";
    return s;
}

namespace {

std::vector<std::vector<int>> all_tuples(const std::vector<int>& counts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(counts.size(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < counts.size()) {
            if (++cur[i] < counts[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == counts.size()) break;
    }
    return out;
}

// Outcome the state takes with certainty under measurement index mi, or -1.
int definite_outcome(const PureState& s, std::size_t mi) {
    const Vec& d = s.dists[mi];
    for (std::size_t o = 0; o < d.size(); ++o)
        if (d[o] == 1) return static_cast<int>(o);
    return -1;
}

}  // namespace

JointMeasurementSystem build_joint_system(const Theory& t,
                                          const std::vector<std::string>& subset) {
    if (subset.size() < 2)
        throw std::invalid_argument("joint system needs at least two measurements");
    auto problems = validate_theory(t);
    if (!problems.empty())
        throw std::invalid_argument("invalid theory: " + problems.front());

    JointMeasurementSystem sys;
    sys.measurement_names = subset;
    std::vector<std::size_t> midx;
    for (const auto& name : subset) {
        std::size_t mi = static_cast<std::size_t>(t.measurement_index(name));
        midx.push_back(mi);
        sys.outcome_counts.push_back(t.measurements[mi].outcomes);
    }

    // Associated state space: pure states with a definite value under at
    // least one subset measurement. Every (measurement, outcome) must have
    // one, otherwise the theory is not regular over the subset.
    std::set<std::string> assoc;
    for (std::size_t s = 0; s < t.pure_states.size(); ++s)
        for (std::size_t i = 0; i < midx.size(); ++i)
            if (definite_outcome(t.pure_states[s], midx[i]) >= 0)
                assoc.insert(t.pure_states[s].name);
    for (std::size_t i = 0; i < midx.size(); ++i)
        for (int o = 0; o < sys.outcome_counts[i]; ++o) {
            bool found = false;
            for (const auto& name : assoc)
                if (definite_outcome(t.state(name), midx[i]) == o) found = true;
            if (!found)
                throw std::invalid_argument("not regular over subset: no eigenstate for " +
                                            subset[i] + " outcome " + std::to_string(o));
        }
    sys.state_names.assign(assoc.begin(), assoc.end());

    sys.tuples = all_tuples(sys.outcome_counts);

    std::vector<Vec> points;
    for (const auto& name : sys.state_names) points.push_back(t.point(t.state(name)));
    sys.dependencies = nonsimpliciality_conditions(sys.state_names, points);

    ConstraintSystem& cs = sys.system;
    std::map<std::string, std::size_t> var_of;
    for (const auto& sname : sys.state_names)
        for (const auto& tup : sys.tuples) {
            var_of[sys.var_name(tup, sname)] = cs.variables.size();
            cs.variables.push_back(sys.var_name(tup, sname));
        }

    auto zero = [&] { return Vec(cs.variables.size(), Rational(0)); };

    for (std::size_t v = 0; v < cs.variables.size(); ++v) {
        Vec row = zero();
        row[v] = 1;
        cs.add_inequality(row, 0);
    }

    // Marginalization blocks per state and per subset measurement.
    for (const auto& sname : sys.state_names) {
        const auto& st = t.state(sname);
        for (std::size_t i = 0; i < midx.size(); ++i)
            for (int o = 0; o < sys.outcome_counts[i]; ++o) {
                Vec row = zero();
                for (const auto& tup : sys.tuples)
                    if (tup[i] == o) row[var_of[sys.var_name(tup, sname)]] = 1;
                cs.add_equality(row, st.dists[midx[i]][static_cast<std::size_t>(o)]);
            }
    }

    // Dependency blocks: the joint measurement must be affine, so equal
    // mixtures must give equal joint statistics on every outcome tuple.
    for (const auto& dep : sys.dependencies)
        for (const auto& tup : sys.tuples) {
            Vec row = zero();
            for (const auto& [sname, w] : dep.left.weights)
                row[var_of[sys.var_name(tup, sname)]] += w;
            for (const auto& [sname, w] : dep.right.weights)
                row[var_of[sys.var_name(tup, sname)]] -= w;
            cs.add_equality(row, 0);
        }

    return sys;
}

ComeasureResult comeasurable(const Theory& t, const std::vector<std::string>& subset) {
    auto sys = build_joint_system(t, subset);
    auto res = feasible(sys.system);
    ComeasureResult out;
    out.yes = res.feasible;
    if (res.feasible) {
        for (std::size_t v = 0; v < sys.system.variables.size(); ++v)
            out.witness[sys.system.variables[v]] = res.assignment[v];
        return out;
    }
    out.certificate = res.certificate;
    // Forced entries for the trace: a state definite under one subset
    // measurement has all rows but one zeroed, so the other measurement's
    // marginals fix every entry of its block (pair case).
    if (subset.size() == 2) {
        std::size_t m0 = static_cast<std::size_t>(t.measurement_index(subset[0]));
        std::size_t m1 = static_cast<std::size_t>(t.measurement_index(subset[1]));
        for (const auto& sname : sys.state_names) {
            const auto& st = t.state(sname);
            int d0 = -1, d1 = -1;
            for (int o = 0; o < sys.outcome_counts[0]; ++o)
                if (st.dists[m0][static_cast<std::size_t>(o)] == 1) d0 = o;
            for (int o = 0; o < sys.outcome_counts[1]; ++o)
                if (st.dists[m1][static_cast<std::size_t>(o)] == 1) d1 = o;
            if (d0 < 0 && d1 < 0) continue;
            for (const auto& tup : sys.tuples) {
                Rational value;
                if (d0 >= 0 && d1 >= 0)
                    value = (tup[0] == d0 && tup[1] == d1) ? 1 : 0;
                else if (d0 >= 0)
                    value = tup[0] == d0
                                ? st.dists[m1][static_cast<std::size_t>(tup[1])]
                                : Rational(0);
                else
                    value = tup[1] == d1
                                ? st.dists[m0][static_cast<std::size_t>(tup[0])]
                                : Rational(0);
                out.forced_values[sys.var_name(tup, sname)] = value;
            }
        }
    }
    return out;
}

CountingReport counting_report(int m, int n, int nu) {
    if (m < 1 || n < 2 || nu < 0 || nu > m - 1)
        throw std::invalid_argument("counting_report: need m >= 1, n >= 2, 0 <= nu <= m-1");
    CountingReport r;
    Integer mi = m, ni = n, nui = nu;
    r.constraints = 2 * (ni - 1) * mi * ni + (ni * ni - 1) * nui;
    r.free_variables = mi * (ni - 1) * (ni + 1) * ni;
    r.overconstrained = r.constraints > r.free_variables;
    r.state_count_threshold = Rational(ni + 1, ni - 1);
    return r;
}

}  // namespace gptk

#include "gptk/statics.hpp"

#include "gptk/geometry.hpp"

#include <random>
#include <stdexcept>

namespace gptk {

const Mixture& DisturbanceRule::image(const std::string& state, int outcome) const {
    auto it = images.find({state, outcome});
    if (it == images.end()) it = images.find({state, -1});
    if (it == images.end())
        throw std::invalid_argument("no disturbance image for " + measurement + " on " + state);
    return it->second;
}

bool DisturbanceRule::covers(const std::string& state, int outcome) const {
    return images.count({state, outcome}) || images.count({state, -1});
}

std::vector<DisturbanceRule> rules_from_entries(const std::vector<DisturbanceEntry>& entries) {
    std::map<std::string, DisturbanceRule> by_meas;
    for (const auto& e : entries) {
        auto& rule = by_meas[e.measurement];
        rule.measurement = e.measurement;
        rule.images[{e.state, e.outcome ? *e.outcome : -1}] = e.image;
    }
    std::vector<DisturbanceRule> out;
    for (auto& [name, rule] : by_meas) out.push_back(std::move(rule));
    return out;
}

UncertaintyReport uncertainty(const Theory& t) {
    if (t.measurements.size() < 2)
        throw std::invalid_argument("uncertainty needs at least two measurements");
    UncertaintyReport rep;
    Rational m(static_cast<long>(t.measurements.size()));
    bool first = true;
    for (const auto& s : t.pure_states) {
        // max over outcome tuples of the average probability factorizes
        // into the sum of per-measurement maxima
        Rational best = 0;
        for (const auto& d : s.dists) {
            Rational mx = d[0];
            for (const auto& p : d)
                if (p > mx) mx = p;
            best += mx;
        }
        Rational u = 1 - best / m;
        if (first || u > rep.vertex_value) rep.vertex_value = u;
        first = false;
    }
    if (first) throw std::invalid_argument("uncertainty needs at least one pure state");

    long long tuple_count = 1;
    for (const auto& meas : t.measurements) {
        tuple_count *= meas.outcomes;
        if (tuple_count > 4096) return rep;
    }
    // LP over the whole polytope: maximize u subject to, for every outcome
    // tuple, u <= 1 - average tuple probability of the mixed state.
    ConstraintSystem cs;
    for (const auto& s : t.pure_states) cs.variables.push_back(s.name);
    cs.variables.push_back("_u");
    std::size_t ns = t.pure_states.size();
    {
        Vec row(ns + 1, Rational(0));
        for (std::size_t j = 0; j < ns; ++j) row[j] = 1;
        cs.add_equality(row, 1);
    }
    for (std::size_t j = 0; j < ns; ++j) {
        Vec row(ns + 1, Rational(0));
        row[j] = 1;
        cs.add_inequality(row, 0);
    }
    std::vector<int> tup(t.measurements.size(), 0);
    for (;;) {
        Vec row(ns + 1, Rational(0));
        row[ns] = -1;
        for (std::size_t j = 0; j < ns; ++j) {
            Rational avg = 0;
            for (std::size_t i = 0; i < tup.size(); ++i)
                avg += t.pure_states[j].dists[i][static_cast<std::size_t>(tup[i])];
            row[j] = -avg / m;
        }
        cs.add_inequality(row, -1);  // u + avg(w) <= 1
        std::size_t i = 0;
        while (i < tup.size()) {
            if (++tup[i] < t.measurements[i].outcomes) break;
            tup[i] = 0;
            ++i;
        }
        if (i == tup.size()) break;
    }
    Vec obj(ns + 1, Rational(0));
    obj[ns] = 1;
    rep.hull_value = maximize(cs, obj).value;
    return rep;
}

bool jointly_distinguishable(const Theory& t, const std::vector<std::string>& subset) {
    std::vector<std::string> names;
    std::vector<Vec> points;
    for (const auto& name : subset) {
        std::size_t mi = static_cast<std::size_t>(t.measurement_index(name));
        for (int o = 0; o < t.measurements[mi].outcomes; ++o) {
            auto it = t.eigenstates.find({name, o});
            if (it == t.eigenstates.end())
                throw std::invalid_argument("not regular over subset: no eigenstate for " +
                                            name + " outcome " + std::to_string(o));
            if (std::find(names.begin(), names.end(), it->second) == names.end()) {
                names.push_back(it->second);
                points.push_back(t.point(t.state(it->second)));
            }
        }
    }
    return is_simplex(points);
}

int measurement_dimension_bound(const Theory& t) {
    return tomographic_dimension(t) + 1;
}

namespace {

// Operational point of a rule-weighted push-forward of a mixture.
Vec push_forward(const Theory& t, const DisturbanceRule& rule, const Mixture& mixture) {
    std::size_t mi = static_cast<std::size_t>(t.measurement_index(rule.measurement));
    Vec acc(t.point(t.pure_states[0]).size(), Rational(0));
    for (const auto& [sname, w] : mixture.weights) {
        const auto& s = t.state(sname);
        for (std::size_t o = 0; o < s.dists[mi].size(); ++o) {
            Rational p = s.dists[mi][o];
            if (p == 0) continue;
            Vec img = mix_point(t, rule.image(sname, static_cast<int>(o)));
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * p * img[k];
        }
    }
    return acc;
}

}  // namespace

std::vector<DisturbanceViolation> check_disturbance_consistency(
    const Theory& t, const std::vector<DisturbanceRule>& rules) {
    for (const auto& m : t.measurements) {
        const DisturbanceRule* rule = nullptr;
        for (const auto& r : rules)
            if (r.measurement == m.name) rule = &r;
        if (!rule)
            throw std::invalid_argument("incomplete rule set: no rule for " + m.name);
        std::size_t mi = static_cast<std::size_t>(t.measurement_index(m.name));
        for (const auto& s : t.pure_states)
            for (int o = 0; o < m.outcomes; ++o)
                if (s.dists[mi][static_cast<std::size_t>(o)] > 0 && !rule->covers(s.name, o))
                    throw std::invalid_argument("incomplete rule set: " + m.name +
                                                " has no image for " + s.name);
    }

    std::vector<DisturbanceViolation> out;
    std::vector<std::string> names;
    std::vector<Vec> points;
    for (const auto& s : t.pure_states) {
        names.push_back(s.name);
        points.push_back(t.point(s));
    }
    for (const auto& rule : rules) {
        // Designated eigenstates of the measured observable must be fixed points.
        for (const auto& [key, sname] : t.eigenstates) {
            if (key.first != rule.measurement) continue;
            const auto& s = t.state(sname);
            if (mix_point(t, rule.image(sname, key.second)) != t.point(s))
                out.push_back({rule.measurement,
                               "eigenstate " + sname + " is not left invariant"});
        }
        for (const auto& dep : nonsimpliciality_conditions(names, points)) {
            Vec lhs = push_forward(t, rule, dep.left);
            Vec rhs = push_forward(t, rule, dep.right);
            if (lhs != rhs)
                out.push_back({rule.measurement,
                               "equal mixtures become distinguishable after measuring " +
                                   rule.measurement});
        }
    }
    return out;
}

namespace {

// Enclosure of atanh(x) for rational 0 <= x < 1.
std::pair<Rational, Rational> atanh_bounds(const Rational& x, int terms) {
    Rational x2 = x * x;
    Rational power = x;
    Rational s = 0;
    for (int i = 0; i < terms; ++i) {
        s += power / Rational(2 * i + 1);
        power *= x2;
    }
    // power == x^(2*terms+1)
    Rational rem = power / (Rational(2 * terms + 1) * (1 - x2));
    return {s, s + rem};
}

}  // namespace

std::pair<Rational, Rational> log_bounds(const Rational& q, int terms) {
    if (q <= 0) throw std::invalid_argument("log_bounds: argument must be positive");
    Rational r = q;
    long long k = 0;
    while (r >= Rational(3, 2)) {
        r /= 2;
        ++k;
    }
    while (r < Rational(3, 4)) {
        r *= 2;
        --k;
    }
    auto ln2 = atanh_bounds(Rational(1, 3), terms);  // ln 2 = 2 atanh(1/3)
    Rational x = (r - 1) / (r + 1);
    std::pair<Rational, Rational> lnr;
    if (x >= 0) {
        auto b = atanh_bounds(x, terms);
        lnr = {2 * b.first, 2 * b.second};
    } else {
        auto b = atanh_bounds(-x, terms);
        lnr = {-2 * b.second, -2 * b.first};
    }
    std::pair<Rational, Rational> kln2;
    if (k >= 0)
        kln2 = {2 * k * ln2.first, 2 * k * ln2.second};
    else
        kln2 = {2 * k * ln2.second, 2 * k * ln2.first};
    return {kln2.first + lnr.first, kln2.second + lnr.second};
}

namespace {

Integer ceil_rational(const Rational& r) {
    Integer num = numerator(r), den = denominator(r);
    Integer q = num / den;
    if (q * den < num) q += 1;
    return q;
}

}  // namespace

long long chernoff_trials(const Rational& epsilon, const Rational& delta, int n) {
    if (epsilon <= 0 || epsilon > 1)
        throw std::invalid_argument("chernoff_trials: epsilon must be in (0, 1]");
    if (delta <= 0 || delta >= 1)
        throw std::invalid_argument("chernoff_trials: delta must be in (0, 1)");
    if (n < 2) throw std::invalid_argument("chernoff_trials: n must be >= 2");
    Rational q = 2 / delta;
    Rational factor = Rational(3 * n) / (epsilon * epsilon);
    for (int terms = 8;; terms *= 2) {
        auto [lo, hi] = log_bounds(q, terms);
        Integer tlo = ceil_rational(factor * lo);
        Integer thi = ceil_rational(factor * hi);
        if (tlo == thi) return tlo.convert_to<long long>();
        if (terms > 1 << 20)
            throw std::runtime_error("chernoff_trials: bound enclosure did not converge");
    }
}

TomographyOutcome simulate_clone_tomography(const Theory& t, const std::string& state,
                                            const TomographyPlan& plan, std::uint64_t seed) {
    if (plan.trials < 1) throw std::invalid_argument("trials must be >= 1");
    const auto& s = t.state(state);
    std::mt19937_64 gen(seed);
    const Rational scale = Rational(Integer(1) << 64);
    TomographyOutcome out;
    for (std::size_t mi = 0; mi < t.measurements.size(); ++mi) {
        const Vec& mu = s.dists[mi];
        std::vector<long long> counts(mu.size(), 0);
        for (long long trial = 0; trial < plan.trials; ++trial) {
            Rational u = Rational(Integer(gen())) / scale;
            Rational cdf = 0;
            std::size_t picked = mu.size() - 1;
            for (std::size_t o = 0; o < mu.size(); ++o) {
                cdf += mu[o];
                if (u < cdf) {
                    picked = o;
                    break;
                }
            }
            ++counts[picked];
        }
        Vec freq(mu.size());
        for (std::size_t o = 0; o < mu.size(); ++o)
            freq[o] = Rational(counts[o], plan.trials);
        bool dev = true;  // componentwise conjunction |f - mu| >= eps * mu
        for (std::size_t o = 0; o < mu.size(); ++o) {
            Rational diff = freq[o] - mu[o];
            if (diff < 0) diff = -diff;
            if (diff < plan.epsilon * mu[o]) dev = false;
        }
        out.frequencies.push_back(std::move(freq));
        out.deviated.push_back(dev);
        if (dev) out.any_deviation = true;
    }
    return out;
}

}  // namespace gptk

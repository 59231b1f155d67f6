#include "gptk/gdit.hpp"

#include <random>
#include <stdexcept>

namespace gptk {

std::vector<int> GditTheory::vertex_values(int index) const {
    std::vector<int> values(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        values[static_cast<std::size_t>(j)] = index % n;
        index /= n;
    }
    return values;
}

int GditTheory::vertex_index(const std::vector<int>& values) const {
    int index = 0;
    for (int j = m - 1; j >= 0; --j) index = index * n + values[static_cast<std::size_t>(j)];
    return index;
}

GditTheory build_gdit(int m, int n) {
    if (m < 1 || n < 2) throw std::invalid_argument("build_gdit: need m >= 1, n >= 2");
    GditTheory g;
    g.m = m;
    g.n = n;
    for (int j = 0; j < m; ++j)
        g.theory.measurements.push_back({"X" + std::to_string(j + 1), n});
    long long count = 1;
    for (int j = 0; j < m; ++j) count *= n;
    for (long long v = 0; v < count; ++v) {
        PureState s;
        s.name = "g" + std::to_string(v);
        auto values = g.vertex_values(static_cast<int>(v));
        for (int j = 0; j < m; ++j) {
            Vec d(static_cast<std::size_t>(n), Rational(0));
            d[static_cast<std::size_t>(values[static_cast<std::size_t>(j)])] = 1;
            s.dists.push_back(std::move(d));
        }
        g.theory.pure_states.push_back(std::move(s));
    }
    return g;
}

std::vector<DisturbanceRule> symmetric_disturbance(const GditTheory& g) {
    std::vector<DisturbanceRule> rules;
    for (int i = 0; i < g.m; ++i) {
        DisturbanceRule rule;
        rule.measurement = g.theory.measurements[static_cast<std::size_t>(i)].name;
        for (const auto& s : g.theory.pure_states) {
            auto values = g.vertex_values(g.vertex_index([&] {
                std::vector<int> v;
                for (const auto& d : s.dists)
                    for (std::size_t o = 0; o < d.size(); ++o)
                        if (d[o] == 1) v.push_back(static_cast<int>(o));
                return v;
            }()));
            Mixture image;
            long long images = 1;
            for (int j = 0; j < g.m; ++j)
                if (j != i) images *= g.n;
            std::vector<int> tup(static_cast<std::size_t>(g.m), 0);
            tup[static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(i)];
            // enumerate all assignments of the other coordinates
            std::vector<int> other;
            for (int j = 0; j < g.m; ++j)
                if (j != i) other.push_back(j);
            std::vector<int> cur(other.size(), 0);
            for (;;) {
                for (std::size_t k = 0; k < other.size(); ++k)
                    tup[static_cast<std::size_t>(other[k])] = cur[k];
                image.weights["g" + std::to_string(g.vertex_index(tup))] +=
                    Rational(1, images);
                std::size_t k = 0;
                while (k < cur.size()) {
                    if (++cur[k] < g.n) break;
                    cur[k] = 0;
                    ++k;
                }
                if (k == cur.size()) break;
            }
            rule.images[{s.name, -1}] = std::move(image);
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

Correspondence corresponding_regular_theory(const GditTheory& g,
                                            const std::vector<DisturbanceRule>& rules) {
    auto violations = check_disturbance_consistency(g.theory, rules);
    if (!violations.empty())
        throw std::invalid_argument("inconsistent disturbance rules: " +
                                    violations.front().description);
    Correspondence c;
    c.gdit = g;
    c.rules = rules;
    c.regular.measurements = g.theory.measurements;
    for (int i = 0; i < g.m; ++i) {
        const auto& mname = g.theory.measurements[static_cast<std::size_t>(i)].name;
        const DisturbanceRule* rule = nullptr;
        for (const auto& r : rules)
            if (r.measurement == mname) rule = &r;
        for (int value = 0; value < g.n; ++value) {
            // Class-averaged rule image over the vertices sharing X_i=value.
            Mixture decomposition;
            long long class_size = 0;
            for (const auto& s : g.theory.pure_states) {
                if (s.dists[static_cast<std::size_t>(i)][static_cast<std::size_t>(value)] != 1)
                    continue;
                ++class_size;
                for (const auto& [vname, w] : rule->image(s.name, value).weights)
                    decomposition.weights[vname] += w;
            }
            for (auto& [vname, w] : decomposition.weights) w /= class_size;
            PureState s;
            s.name = mname + "=" + std::to_string(value);
            auto dists = mix(g.theory, decomposition);
            s.dists = std::move(dists);
            c.regular.pure_states.push_back(s);
            c.regular.eigenstates[{mname, value}] = s.name;
            c.decompositions[s.name] = std::move(decomposition);
        }
    }
    auto problems = validate_theory(c.regular);
    if (!problems.empty())
        throw std::invalid_argument("correspondence produced an invalid theory: " +
                                    problems.front());
    return c;
}

TrialResult indistinguishability_trial(const Correspondence& c,
                                       const std::string& prepare_meas, int prepare_outcome,
                                       const std::string& then_measure, long long trials,
                                       std::uint64_t seed) {
    const GditTheory& g = c.gdit;
    int pi = g.theory.measurement_index(prepare_meas);
    int ti = g.theory.measurement_index(then_measure);
    if (prepare_outcome < 0 || prepare_outcome >= g.n)
        throw std::invalid_argument("prepare outcome out of range");
    const DisturbanceRule* rule = nullptr;
    for (const auto& r : c.rules)
        if (r.measurement == prepare_meas) rule = &r;

    std::mt19937_64 gen(seed);
    const Rational scale = Rational(Integer(1) << 64);
    auto draw = [&](const Vec& dist) {
        Rational u = Rational(Integer(gen())) / scale;
        Rational cdf = 0;
        for (std::size_t o = 0; o < dist.size(); ++o) {
            cdf += dist[o];
            if (u < cdf) return static_cast<int>(o);
        }
        return static_cast<int>(dist.size()) - 1;
    };
    auto draw_mixture = [&](const Mixture& m) {
        Rational u = Rational(Integer(gen())) / scale;
        Rational cdf = 0;
        const std::string* last = nullptr;
        for (const auto& [name, w] : m.weights) {
            cdf += w;
            last = &name;
            if (u < cdf) return name;
        }
        return *last;
    };

    long long vertex_count = static_cast<long long>(g.theory.pure_states.size());
    std::vector<long long> gdit_counts(static_cast<std::size_t>(g.n), 0);
    std::vector<long long> reg_counts(static_cast<std::size_t>(g.n), 0);

    for (long long trial = 0; trial < trials; ++trial) {
        // gdit side: uniform prior, post-select the preparation outcome
        int vertex;
        for (;;) {
            vertex = static_cast<int>(gen() % static_cast<std::uint64_t>(vertex_count));
            if (g.vertex_values(vertex)[static_cast<std::size_t>(pi)] == prepare_outcome)
                break;
        }
        int outcome;
        if (ti == pi) {
            outcome = prepare_outcome;  // repeatability
        } else {
            std::string post = draw_mixture(
                rule->image(g.theory.pure_states[static_cast<std::size_t>(vertex)].name,
                            prepare_outcome));
            outcome = g.vertex_values(g.theory.state_index(post))[static_cast<std::size_t>(ti)];
        }
        ++gdit_counts[static_cast<std::size_t>(outcome)];

        // regular side: the eigenstate preparation, then sample
        const auto& eig = c.regular.state(prepare_meas + "=" + std::to_string(prepare_outcome));
        int reg_outcome = ti == pi ? prepare_outcome
                                   : draw(eig.dists[static_cast<std::size_t>(ti)]);
        ++reg_counts[static_cast<std::size_t>(reg_outcome)];
    }

    TrialResult out;
    for (int o = 0; o < g.n; ++o) {
        out.gdit_distribution.push_back(Rational(gdit_counts[static_cast<std::size_t>(o)], trials));
        out.regular_distribution.push_back(
            Rational(reg_counts[static_cast<std::size_t>(o)], trials));
    }
    return out;
}

}  // namespace gptk

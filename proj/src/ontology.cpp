#include "gptk/ontology.hpp"

#include <algorithm>
#include <stdexcept>

namespace gptk {

namespace {

long long tuple_count(const Theory& t) {
    long long count = 1;
    for (const auto& m : t.measurements) {
        count *= m.outcomes;
        if (count > 1 << 20)
            throw std::invalid_argument("underlying simplex too large to enumerate");
    }
    return count;
}

// Generalized coordinates of a value tuple: per measurement, a one-hot
// vector over outcomes 1..n-1.
Vec tuple_coords(const Theory& t, const std::vector<int>& tup) {
    Vec coords;
    for (std::size_t j = 0; j < t.measurements.size(); ++j)
        for (int o = 1; o < t.measurements[j].outcomes; ++o)
            coords.push_back(tup[j] == o ? Rational(1) : Rational(0));
    return coords;
}

}  // namespace

std::vector<std::vector<int>> underlying_simplex(const Theory& t) {
    long long count = tuple_count(t);
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long long idx = 0; idx < count; ++idx) {
        std::vector<int> tup(t.measurements.size());
        long long rest = idx;
        for (std::size_t j = t.measurements.size(); j-- > 0;) {
            tup[j] = static_cast<int>(rest % t.measurements[j].outcomes);
            rest /= t.measurements[j].outcomes;
        }
        out.push_back(std::move(tup));
    }
    return out;
}

Vec compress_g(const Theory& t, const Vec& barycentric) {
    auto tuples = underlying_simplex(t);
    if (barycentric.size() != tuples.size())
        throw std::invalid_argument("compress_g: barycentric length mismatch");
    Vec coords(static_cast<std::size_t>(tomographic_dimension(t)), Rational(0));
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        if (barycentric[i] == 0) continue;
        Vec c = tuple_coords(t, tuples[i]);
        for (std::size_t k = 0; k < coords.size(); ++k) coords[k] += barycentric[i] * c[k];
    }
    return coords;
}

namespace {

OnticModel g_model_shell(const Theory& t) {
    OnticModel model;
    model.kind = "g";
    auto tuples = underlying_simplex(t);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        model.ontic_names.push_back("l" + std::to_string(i + 1));
        model.intermediate_coords.push_back(tuple_coords(t, tuples[i]));
    }
    return model;
}

}  // namespace

OnticModel ontic_distributions_g(const Theory& t) {
    OnticModel model = g_model_shell(t);
    auto tuples = underlying_simplex(t);
    for (const auto& s : t.pure_states) {
        Vec mu(tuples.size());
        for (std::size_t i = 0; i < tuples.size(); ++i) {
            Rational w = 1;
            for (std::size_t j = 0; j < t.measurements.size(); ++j)
                w *= s.dists[j][static_cast<std::size_t>(tuples[i][j])];
            mu[i] = w;
        }
        model.state_distributions[s.name] = std::move(mu);
    }
    auto problems = verify_ontic_model(t, model);
    if (!problems.empty())
        throw std::runtime_error("g-type model failed push-forward: " + problems.front());
    return model;
}

OnticModel ontic_distributions_g(const Correspondence& c) {
    const Theory& t = c.regular;
    OnticModel model = g_model_shell(t);
    auto tuples = underlying_simplex(t);
    for (const auto& [sname, decomposition] : c.decompositions) {
        Vec mu(tuples.size(), Rational(0));
        for (const auto& [vname, w] : decomposition.weights) {
            auto values = c.gdit.vertex_values(c.gdit.theory.state_index(vname));
            // gdit vertex order is little-endian; ontic order is big-endian
            std::size_t idx = 0;
            for (std::size_t j = 0; j < values.size(); ++j)
                idx = idx * static_cast<std::size_t>(c.gdit.n) +
                      static_cast<std::size_t>(values[j]);
            mu[idx] += w;
        }
        model.state_distributions[sname] = std::move(mu);
    }
    auto problems = verify_ontic_model(t, model);
    if (!problems.empty())
        throw std::runtime_error("correspondence model failed push-forward: " +
                                 problems.front());
    return model;
}

OnticModel ontic_distributions_s(const Theory& t, const OntologySpec& spec) {
    OnticModel model;
    model.kind = "s";
    if (spec.intermediate_vertices.empty())
        throw std::invalid_argument("s-type model needs intermediate vertices");
    std::size_t dim = static_cast<std::size_t>(tomographic_dimension(t));
    for (const auto& v : spec.intermediate_vertices) {
        if (v.coords.size() != dim)
            throw std::invalid_argument("intermediate vertex " + v.name +
                                        " has wrong coordinate count");
        model.ontic_names.push_back(v.name);
        model.intermediate_coords.push_back(v.coords);
    }
    for (const auto& s : t.pure_states) {
        auto it = spec.decompositions.find(s.name);
        if (it == spec.decompositions.end())
            throw std::invalid_argument("no decomposition for state " + s.name);
        Vec mu(model.ontic_names.size(), Rational(0));
        for (const auto& [vname, w] : it->second) {
            auto pos = std::find(model.ontic_names.begin(), model.ontic_names.end(), vname);
            if (pos == model.ontic_names.end())
                throw std::invalid_argument("decomposition of " + s.name +
                                            " references unknown vertex " + vname);
            mu[static_cast<std::size_t>(pos - model.ontic_names.begin())] += w;
        }
        model.state_distributions[s.name] = std::move(mu);
    }
    auto problems = verify_ontic_model(t, model);
    if (!problems.empty())
        throw std::invalid_argument("decomposition fails to reproduce operational states: " +
                                    problems.front());
    return model;
}

std::vector<std::string> verify_ontic_model(const Theory& t, const OnticModel& model) {
    std::vector<std::string> problems;
    for (const auto& [sname, mu] : model.state_distributions) {
        if (mu.size() != model.ontic_names.size()) {
            problems.push_back("distribution length mismatch for " + sname);
            continue;
        }
        Rational total = 0;
        for (const auto& w : mu) {
            if (w < 0) problems.push_back("negative ontic weight for " + sname);
            total += w;
        }
        if (total != 1) problems.push_back("ontic distribution of " + sname +
                                           " sums to " + to_string(total));
        Vec pushed(model.intermediate_coords.empty() ? 0 : model.intermediate_coords[0].size(),
                   Rational(0));
        for (std::size_t i = 0; i < mu.size(); ++i)
            for (std::size_t k = 0; k < pushed.size(); ++k)
                pushed[k] += mu[i] * model.intermediate_coords[i][k];
        if (pushed != t.generalized_point(t.state(sname)))
            problems.push_back("push-forward of " + sname +
                               " does not reproduce the operational state");
    }
    return problems;
}

namespace {

bool extend_permutation(const std::vector<std::vector<bool>>& allowed, std::vector<int>& perm,
                        std::vector<bool>& used, std::size_t next) {
    if (next == perm.size()) return true;
    for (std::size_t image = 0; image < perm.size(); ++image) {
        if (used[image] || !allowed[next][image]) continue;
        perm[next] = static_cast<int>(image);
        used[image] = true;
        if (extend_permutation(allowed, perm, used, next + 1)) return true;
        used[image] = false;
    }
    return false;
}

}  // namespace

PermutationResult find_ontic_permutation(const OnticModel& model,
                                         const std::map<std::string, std::string>& target) {
    std::vector<const Vec*> sources, images;
    for (const auto& [from, to] : target) {
        auto sit = model.state_distributions.find(from);
        auto tit = model.state_distributions.find(to);
        if (sit == model.state_distributions.end() || tit == model.state_distributions.end())
            throw std::invalid_argument("state map references a state without a distribution");
        sources.push_back(&sit->second);
        images.push_back(&tit->second);
    }
    std::size_t n = model.ontic_names.size();
    std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, true));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t i = 0; i < sources.size(); ++i)
                if ((*sources[i])[a] != (*images[i])[b]) {
                    allowed[a][b] = false;
                    break;
                }
    PermutationResult out;
    std::vector<int> perm(n, -1);
    std::vector<bool> used(n, false);
    if (extend_permutation(allowed, perm, used, 0)) {
        out.found = true;
        out.permutation = perm;
    }
    return out;
}

PrepContextualityResult prep_contextuality_witness(const Theory& t, const OnticModel& model,
                                                   const Mixture& a, const Mixture& b) {
    if (mix_point(t, a) != mix_point(t, b))
        throw std::invalid_argument("mixtures are not operationally equal");
    auto combine = [&](const Mixture& m) {
        Vec acc(model.ontic_names.size(), Rational(0));
        for (const auto& [sname, w] : m.weights) {
            auto it = model.state_distributions.find(sname);
            if (it == model.state_distributions.end())
                throw std::invalid_argument("no ontic distribution for state " + sname);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * it->second[i];
        }
        return acc;
    };
    PrepContextualityResult out;
    out.distribution_a = combine(a);
    out.distribution_b = combine(b);
    out.witness = out.distribution_a != out.distribution_b;
    return out;
}

}  // namespace gptk

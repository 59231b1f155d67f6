#include "gptk/contextuality.hpp"

#include "gptk/geometry.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gptk {

namespace {

std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : key) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

bool same_set(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) return false;
    std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    return sa == sb;
}

}  // namespace

bool CongruenceGraph::has_edge(const std::string& a, const std::string& b) const {
    for (const auto& [x, y] : edges)
        if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
}

CongruenceReport congruence_classes(const CongruenceGraph& g) {
    CongruenceReport rep;
    // an intransitivity witness is a path A-B-C with no closing edge
    for (const auto& b : g.nodes) {
        std::vector<std::string> nbrs;
        for (const auto& other : g.nodes)
            if (other != b && g.has_edge(b, other)) nbrs.push_back(other);
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (!g.has_edge(nbrs[i], nbrs[j])) {
                    rep.transitive = false;
                    rep.witness = {nbrs[i], b, nbrs[j]};
                    return rep;
                }
    }
    rep.transitive = true;
    std::set<std::string> seen;
    for (const auto& start : g.nodes) {
        if (seen.count(start)) continue;
        std::vector<std::string> cls, frontier{start};
        seen.insert(start);
        while (!frontier.empty()) {
            std::string node = frontier.back();
            frontier.pop_back();
            cls.push_back(node);
            for (const auto& other : g.nodes)
                if (!seen.count(other) && g.has_edge(node, other)) {
                    seen.insert(other);
                    frontier.push_back(other);
                }
        }
        std::sort(cls.begin(), cls.end());
        rep.classes.push_back(std::move(cls));
    }
    return rep;
}

int Behavior::measurement_index(const std::string& name) const {
    for (std::size_t i = 0; i < measurements.size(); ++i)
        if (measurements[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown measurement: " + name);
}

std::string Behavior::context_key(const std::vector<std::string>& names) {
    std::string key;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) key += ',';
        key += names[i];
    }
    return key;
}

std::string Behavior::tuple_key(const std::vector<int>& values) {
    std::string key;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) key += ',';
        key += std::to_string(values[i]);
    }
    return key;
}

std::vector<int> Behavior::parse_tuple(const std::string& key) {
    std::vector<int> values;
    for (const auto& part : split_key(key)) {
        std::size_t used = 0;
        int v = std::stoi(part, &used);
        if (used != part.size() || v < 0)
            throw std::invalid_argument("bad outcome tuple: " + key);
        values.push_back(v);
    }
    return values;
}

const std::map<std::string, Rational>& Behavior::context_stats(
    const std::vector<std::string>& names) const {
    auto it = stats.find(context_key(names));
    if (it == stats.end())
        throw std::invalid_argument("no statistics for context " + context_key(names));
    return it->second;
}

Rational Behavior::probability(const std::vector<std::string>& names,
                               const std::vector<int>& values) const {
    const auto& s = context_stats(names);
    auto it = s.find(tuple_key(values));
    return it == s.end() ? Rational(0) : it->second;
}

Behavior parse_behavior(const std::string& document) {
    nlohmann::json j = nlohmann::json::parse(document);
    Behavior b;
    for (const auto& m : j.at("measurements")) {
        b.measurements.push_back(m.at("name").get<std::string>());
        b.outcome_counts.push_back(m.at("outcomes").get<int>());
    }
    for (const auto& ctx : j.at("contexts"))
        b.contexts.push_back(ctx.get<std::vector<std::string>>());
    for (const auto& [ckey, dist] : j.at("stats").items())
        for (const auto& [tkey, p] : dist.items())
            b.stats[ckey][tkey] = parse_rational(p.get<std::string>());
    auto problems = validate_behavior(b);
    if (!problems.empty()) throw std::invalid_argument("invalid behavior: " + problems.front());
    return b;
}

std::string serialize_behavior(const Behavior& b) {
    nlohmann::json j;
    j["measurements"] = nlohmann::json::array();
    for (std::size_t i = 0; i < b.measurements.size(); ++i)
        j["measurements"].push_back(
            {{"name", b.measurements[i]}, {"outcomes", b.outcome_counts[i]}});
    j["contexts"] = b.contexts;
    nlohmann::json stats = nlohmann::json::object();
    for (const auto& [ckey, dist] : b.stats) {
        nlohmann::json d = nlohmann::json::object();
        for (const auto& [tkey, p] : dist) d[tkey] = to_string(p);
        stats[ckey] = std::move(d);
    }
    j["stats"] = std::move(stats);
    return j.dump(2) + "\n";
}

Behavior load_behavior(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_behavior(ss.str());
}

std::vector<std::string> validate_behavior(const Behavior& b) {
    std::vector<std::string> problems;
    if (b.measurements.size() != b.outcome_counts.size()) {
        problems.push_back("measurement/outcome count mismatch");
        return problems;
    }
    for (std::size_t i = 0; i < b.measurements.size(); ++i)
        if (b.outcome_counts[i] < 2)
            problems.push_back("measurement " + b.measurements[i] + " needs >= 2 outcomes");
    for (const auto& ctx : b.contexts) {
        std::string key = Behavior::context_key(ctx);
        std::set<std::string> seen;
        bool names_ok = true;
        for (const auto& name : ctx) {
            if (std::find(b.measurements.begin(), b.measurements.end(), name) ==
                b.measurements.end()) {
                problems.push_back("context " + key + " uses unknown measurement " + name);
                names_ok = false;
            }
            if (!seen.insert(name).second)
                problems.push_back("context " + key + " repeats " + name);
        }
        auto it = b.stats.find(key);
        if (it == b.stats.end()) {
            problems.push_back("no statistics for context " + key);
            continue;
        }
        if (!names_ok) continue;
        Rational total = 0;
        for (const auto& [tkey, p] : it->second) {
            std::vector<int> tup;
            try {
                tup = Behavior::parse_tuple(tkey);
            } catch (const std::exception&) {
                problems.push_back("context " + key + " has malformed tuple " + tkey);
                continue;
            }
            if (tup.size() != ctx.size()) {
                problems.push_back("context " + key + " tuple " + tkey + " has wrong arity");
                continue;
            }
            for (std::size_t i = 0; i < tup.size(); ++i)
                if (tup[i] >=
                    b.outcome_counts[static_cast<std::size_t>(b.measurement_index(ctx[i]))])
                    problems.push_back("context " + key + " tuple " + tkey + " out of range");
            if (p < 0) problems.push_back("context " + key + " has negative probability");
            total += p;
        }
        if (total != 1)
            problems.push_back("context " + key + " statistics sum to " + to_string(total));
    }
    for (const auto& [ckey, dist] : b.stats) {
        bool known = false;
        for (const auto& ctx : b.contexts)
            if (Behavior::context_key(ctx) == ckey) known = true;
        if (!known) problems.push_back("statistics for undeclared context " + ckey);
    }
    return problems;
}

Vec single_marginal(const Behavior& b, const std::vector<std::string>& context,
                    const std::string& name) {
    std::size_t pos = context.size();
    for (std::size_t i = 0; i < context.size(); ++i)
        if (context[i] == name) pos = i;
    if (pos == context.size())
        throw std::invalid_argument("measurement " + name + " not in context");
    int n = b.outcome_counts[static_cast<std::size_t>(b.measurement_index(name))];
    Vec marg(static_cast<std::size_t>(n), Rational(0));
    for (const auto& [tkey, p] : b.context_stats(context)) {
        auto tup = Behavior::parse_tuple(tkey);
        marg[static_cast<std::size_t>(tup[pos])] += p;
    }
    return marg;
}

std::vector<std::string> gleason_nosignaling_check(const Behavior& b) {
    std::vector<std::string> violations;
    for (const auto& name : b.measurements) {
        const std::vector<std::string>* first_ctx = nullptr;
        Vec reference;
        for (const auto& ctx : b.contexts) {
            if (std::find(ctx.begin(), ctx.end(), name) == ctx.end()) continue;
            Vec marg = single_marginal(b, ctx, name);
            if (!first_ctx) {
                first_ctx = &ctx;
                reference = std::move(marg);
            } else if (marg != reference) {
                violations.push_back("marginal of " + name + " differs between contexts " +
                                     Behavior::context_key(*first_ctx) + " and " +
                                     Behavior::context_key(ctx));
            }
        }
    }
    return violations;
}

namespace {

// Iterates outcome tuples for the named measurements, low index fastest.
struct TupleRange {
    std::vector<int> sizes;
    std::vector<int> cur;
    bool done = false;

    explicit TupleRange(std::vector<int> s) : sizes(std::move(s)), cur(sizes.size(), 0) {
        for (int n : sizes)
            if (n <= 0) done = true;
    }
    void advance() {
        std::size_t i = 0;
        while (i < cur.size()) {
            if (++cur[i] < sizes[i]) return;
            cur[i] = 0;
            ++i;
        }
        done = true;
    }
};

std::vector<int> context_sizes(const Behavior& b, const std::vector<std::string>& ctx) {
    std::vector<int> sizes;
    for (const auto& name : ctx)
        sizes.push_back(b.outcome_counts[static_cast<std::size_t>(b.measurement_index(name))]);
    return sizes;
}

const std::vector<std::string>& stored_context(const Behavior& b,
                                               const std::vector<std::string>& names) {
    for (const auto& ctx : b.contexts)
        if (same_set(ctx, names)) return ctx;
    throw std::invalid_argument("no context over " + Behavior::context_key(names));
}

}  // namespace

Behavior product_jd(const Behavior& b, const std::vector<std::vector<std::string>>& classes) {
    std::set<std::string> covered;
    for (const auto& cls : classes)
        for (const auto& name : cls)
            if (!covered.insert(name).second)
                throw std::invalid_argument("classes overlap at " + name);
    for (const auto& name : b.measurements)
        if (!covered.count(name))
            throw std::invalid_argument("classes do not cover " + name);
    if (covered.size() != b.measurements.size())
        throw std::invalid_argument("classes mention unknown measurements");

    std::vector<const std::vector<std::string>*> stored;
    for (const auto& cls : classes) stored.push_back(&stored_context(b, cls));

    Behavior out;
    out.measurements = b.measurements;
    out.outcome_counts = b.outcome_counts;
    std::vector<std::string> global;
    for (const auto* ctx : stored) global.insert(global.end(), ctx->begin(), ctx->end());
    out.contexts.push_back(global);

    auto& dist = out.stats[Behavior::context_key(global)];
    std::vector<std::map<std::string, Rational>> parts;
    for (const auto* ctx : stored) parts.push_back(b.context_stats(*ctx));
    // product over the per-class supports
    std::vector<std::size_t> pick(parts.size(), 0);
    std::vector<std::vector<std::pair<std::string, Rational>>> flat;
    for (const auto& p : parts) flat.emplace_back(p.begin(), p.end());
    for (;;) {
        Rational w = 1;
        std::vector<int> tup;
        for (std::size_t i = 0; i < flat.size(); ++i) {
            const auto& [tkey, p] = flat[i][pick[i]];
            w *= p;
            for (int v : Behavior::parse_tuple(tkey)) tup.push_back(v);
        }
        if (w != 0) dist[Behavior::tuple_key(tup)] += w;
        std::size_t i = 0;
        while (i < pick.size()) {
            if (++pick[i] < flat[i].size()) break;
            pick[i] = 0;
            ++i;
        }
        if (i == pick.size()) break;
    }
    return out;
}

Behavior conditional_jd_2x2(const Behavior& b) {
    const std::vector<std::string>* pair = nullptr;
    std::vector<const std::vector<std::string>*> triples;
    for (const auto& ctx : b.contexts) {
        if (ctx.size() == 2) pair = &ctx;
        if (ctx.size() == 3) triples.push_back(&ctx);
    }
    if (!pair || triples.size() != 2)
        throw std::invalid_argument("need contexts {A1,B1,B2}, {A2,B1,B2} and {B1,B2}");
    const std::string &b1 = (*pair)[0], &b2 = (*pair)[1];
    std::vector<std::string> as;
    for (const auto* t : triples) {
        std::string unique;
        int shared = 0;
        for (const auto& name : *t) {
            if (name == b1 || name == b2)
                ++shared;
            else
                unique = name;
        }
        if (shared != 2 || unique.empty())
            throw std::invalid_argument("triple context must extend the pair context");
        as.push_back(unique);
    }

    int nb1 = b.outcome_counts[static_cast<std::size_t>(b.measurement_index(b1))];
    int nb2 = b.outcome_counts[static_cast<std::size_t>(b.measurement_index(b2))];
    auto pair_prob = [&](int v1, int v2) {
        std::vector<int> tup(2);
        tup[(*pair)[0] == b1 ? 0 : 1] = v1;
        tup[(*pair)[0] == b1 ? 1 : 0] = v2;
        return b.probability(*pair, tup);
    };
    auto triple_prob = [&](std::size_t ti, int a, int v1, int v2) {
        const auto& ctx = *triples[ti];
        std::vector<int> tup(3);
        for (std::size_t i = 0; i < 3; ++i) {
            if (ctx[i] == as[ti]) tup[i] = a;
            if (ctx[i] == b1) tup[i] = v1;
            if (ctx[i] == b2) tup[i] = v2;
        }
        return b.probability(ctx, tup);
    };

    // consistency and positivity of the shared marginal
    for (int v1 = 0; v1 < nb1; ++v1)
        for (int v2 = 0; v2 < nb2; ++v2) {
            Rational base = pair_prob(v1, v2);
            if (base == 0)
                throw std::invalid_argument("zero shared-marginal cell at (" +
                                            std::to_string(v1) + "," + std::to_string(v2) + ")");
            for (std::size_t ti = 0; ti < 2; ++ti) {
                int na = b.outcome_counts[static_cast<std::size_t>(b.measurement_index(as[ti]))];
                Rational total = 0;
                for (int a = 0; a < na; ++a) total += triple_prob(ti, a, v1, v2);
                if (total != base)
                    throw std::invalid_argument("inconsistent shared marginals in context " +
                                                Behavior::context_key(*triples[ti]));
            }
        }

    Behavior out;
    out.measurements = b.measurements;
    out.outcome_counts = b.outcome_counts;
    std::vector<std::string> global{as[0], as[1], b1, b2};
    out.contexts.push_back(global);
    auto& dist = out.stats[Behavior::context_key(global)];
    int na1 = b.outcome_counts[static_cast<std::size_t>(b.measurement_index(as[0]))];
    int na2 = b.outcome_counts[static_cast<std::size_t>(b.measurement_index(as[1]))];
    for (int a1 = 0; a1 < na1; ++a1)
        for (int a2 = 0; a2 < na2; ++a2)
            for (int v1 = 0; v1 < nb1; ++v1)
                for (int v2 = 0; v2 < nb2; ++v2) {
                    Rational p = triple_prob(0, a1, v1, v2) * triple_prob(1, a2, v1, v2) /
                                 pair_prob(v1, v2);
                    if (p != 0) dist[Behavior::tuple_key({a1, a2, v1, v2})] = p;
                }
    return out;
}

JdResult jd_feasible(const Behavior& b, long long guard) {
    long long total = 1;
    for (int n : b.outcome_counts) {
        total *= n;
        if (total > guard) throw std::invalid_argument("global tuple space exceeds guard");
    }

    ConstraintSystem cs;
    std::vector<std::string> keys;
    for (TupleRange r(b.outcome_counts); !r.done; r.advance()) {
        keys.push_back(Behavior::tuple_key(r.cur));
        cs.variables.push_back(keys.back());
    }
    std::size_t nv = keys.size();
    for (std::size_t j = 0; j < nv; ++j) {
        Vec row(nv, Rational(0));
        row[j] = 1;
        cs.add_inequality(row, 0);
    }
    {
        Vec row(nv, Rational(1));
        cs.add_equality(row, 1);
    }
    for (const auto& ctx : b.contexts) {
        std::vector<std::size_t> positions;
        for (const auto& name : ctx)
            positions.push_back(static_cast<std::size_t>(b.measurement_index(name)));
        for (TupleRange r(context_sizes(b, ctx)); !r.done; r.advance()) {
            Vec row(nv, Rational(0));
            std::size_t gi = 0;
            for (TupleRange g(b.outcome_counts); !g.done; g.advance(), ++gi) {
                bool match = true;
                for (std::size_t i = 0; i < positions.size(); ++i)
                    if (g.cur[positions[i]] != r.cur[i]) {
                        match = false;
                        break;
                    }
                if (match) row[gi] = 1;
            }
            cs.add_equality(row, b.probability(ctx, r.cur));
        }
    }

    auto res = feasible(cs);
    JdResult out;
    out.exists = res.feasible;
    if (res.feasible) {
        for (std::size_t j = 0; j < nv; ++j)
            if (res.assignment[j] != 0) out.joint[keys[j]] = res.assignment[j];
    } else {
        out.certified_infeasible = verify_farkas(cs, res.certificate);
    }
    return out;
}

Rational os_value(const Behavior& b, const std::string& a, const std::string& bm,
                  const std::string& c) {
    auto correlator = [&](const std::string& x, const std::string& y) {
        const auto& ctx = stored_context(b, {x, y});
        Rational e = 0;
        for (const auto& [tkey, p] : b.context_stats(ctx)) {
            auto tup = Behavior::parse_tuple(tkey);
            int sign = 1;
            for (int v : tup) sign *= v == 0 ? 1 : -1;
            e += sign * p;
        }
        return e;
    };
    return correlator(a, bm) + correlator(bm, c) + correlator(a, c);
}

std::pair<Rational, Rational> os_noncontextual_range() {
    Rational lo, hi;
    bool first = true;
    for (int a : {1, -1})
        for (int b : {1, -1})
            for (int c : {1, -1}) {
                Rational v = a * b + b * c + a * c;
                if (first || v < lo) lo = v;
                if (first || v > hi) hi = v;
                first = false;
            }
    return {lo, hi};
}

int xos_score_triple(int x, int y, int z) {
    for (int v : {x, y, z})
        if (v < 0 || v > 2) throw std::invalid_argument("outcome out of range");
    int lo = std::min({x, y, z}), hi = std::max({x, y, z});
    int mid = x + y + z - lo - hi;  // majority tie rule: a repeat fills both slots
    return (hi - mid) * (mid - lo);
}

Rational xos_value(const Behavior& b) {
    if (b.measurements.size() != 4)
        throw std::invalid_argument("xos_value needs four measurements");
    Rational total = 0;
    for (std::size_t start = 0; start < 4; ++start) {
        std::vector<std::string> names;
        for (std::size_t k = 0; k < 3; ++k) names.push_back(b.measurements[(start + k) % 4]);
        const auto& ctx = stored_context(b, names);
        for (const auto& [tkey, p] : b.context_stats(ctx)) {
            auto tup = Behavior::parse_tuple(tkey);
            total += xos_score_triple(tup[0], tup[1], tup[2]) * p;
        }
    }
    return total;
}

Rational xos_noncontextual_max() {
    int best = 0;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z)
                for (int w = 0; w < 3; ++w) {
                    int v = xos_score_triple(x, y, z) + xos_score_triple(y, z, w) +
                            xos_score_triple(z, w, x) + xos_score_triple(w, x, y);
                    best = std::max(best, v);
                }
    return best;
}

ContextualConfigReport enumerate_contextual_configurations(
    const std::vector<std::string>& measurements, const std::vector<int>& outcome_counts,
    const std::vector<std::vector<std::string>>& contexts, bool materialize, long long guard) {
    Behavior scenario;
    scenario.measurements = measurements;
    scenario.outcome_counts = outcome_counts;
    ContextualConfigReport rep;
    rep.count = 1;
    std::vector<int> per_context;
    for (const auto& ctx : contexts) {
        long long options = 1;
        for (const auto& name : ctx)
            options *= outcome_counts[static_cast<std::size_t>(scenario.measurement_index(name))];
        per_context.push_back(static_cast<int>(options));
        if (rep.count > guard / options)
            throw std::invalid_argument("configuration space exceeds guard");
        rep.count *= options;
    }
    if (!materialize) return rep;

    std::vector<std::vector<std::string>> tuple_keys;
    for (const auto& ctx : contexts) {
        std::vector<std::string> keys;
        for (TupleRange r(context_sizes(scenario, ctx)); !r.done; r.advance())
            keys.push_back(Behavior::tuple_key(r.cur));
        tuple_keys.push_back(std::move(keys));
    }
    for (TupleRange r(per_context); !r.done; r.advance()) {
        ContextualConfiguration config;
        for (std::size_t i = 0; i < contexts.size(); ++i)
            config.assignment[Behavior::context_key(contexts[i])] =
                tuple_keys[i][static_cast<std::size_t>(r.cur[i])];
        rep.configurations.push_back(std::move(config));
    }
    return rep;
}

Behavior configuration_behavior(const std::vector<std::string>& measurements,
                                const std::vector<int>& outcome_counts,
                                const std::vector<std::vector<std::string>>& contexts,
                                const ContextualConfiguration& config) {
    Behavior b;
    b.measurements = measurements;
    b.outcome_counts = outcome_counts;
    b.contexts = contexts;
    for (const auto& ctx : contexts) {
        std::string key = Behavior::context_key(ctx);
        auto it = config.assignment.find(key);
        if (it == config.assignment.end())
            throw std::invalid_argument("configuration misses context " + key);
        b.stats[key][it->second] = 1;
    }
    auto problems = validate_behavior(b);
    if (!problems.empty())
        throw std::invalid_argument("invalid configuration: " + problems.front());
    return b;
}

namespace {

bool bit_flip_partners(const Behavior& a, const Behavior& b) {
    for (const auto& ctx : a.contexts) {
        std::string key = Behavior::context_key(ctx);
        const auto& da = a.stats.at(key);
        const auto& db = b.stats.at(key);
        for (const auto& [tkey, p] : da) {
            auto tup = Behavior::parse_tuple(tkey);
            for (auto& v : tup) v = 1 - v;
            auto it = db.find(Behavior::tuple_key(tup));
            if ((it == db.end() ? Rational(0) : it->second) != p) return false;
        }
    }
    return true;
}

}  // namespace

Behavior contextual_box(const std::vector<Behavior>& parts) {
    if (parts.empty()) throw std::invalid_argument("nothing to mix");
    const Behavior& first = parts.front();
    for (const auto& p : parts)
        if (p.measurements != first.measurements || p.outcome_counts != first.outcome_counts ||
            p.contexts != first.contexts)
            throw std::invalid_argument("behaviors describe different scenarios");
    bool all_binary =
        std::all_of(first.outcome_counts.begin(), first.outcome_counts.end(),
                    [](int n) { return n == 2; });
    if (parts.size() == 2 && all_binary && parts[0].stats != parts[1].stats &&
        !bit_flip_partners(parts[0], parts[1]))
        throw std::invalid_argument("partner mismatch: behaviors are not bit-flip partners");

    Behavior out;
    out.measurements = first.measurements;
    out.outcome_counts = first.outcome_counts;
    out.contexts = first.contexts;
    Rational w(1, static_cast<long>(parts.size()));
    for (const auto& p : parts)
        for (const auto& [ckey, dist] : p.stats)
            for (const auto& [tkey, prob] : dist)
                if (prob != 0) out.stats[ckey][tkey] += w * prob;
    return out;
}

DimensionReport contextual_dimension_report(int n) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    DimensionReport rep;
    long long nn = n;
    rep.unrestricted_dimension = 3 * (nn * nn - 1);
    rep.gleason_constraints = 3 * (nn - 1);
    rep.box_polytope_dimension = 3 * nn * (nn - 1);
    rep.simplex_dimension = 3 * (nn - 1);
    return rep;
}

}  // namespace gptk

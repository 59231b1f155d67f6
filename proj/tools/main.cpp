#include "gptk/comeasure.hpp"
#include "gptk/contextuality.hpp"
#include "gptk/gdit.hpp"
#include "gptk/geometry.hpp"
#include "gptk/ontology.hpp"
#include "gptk/statics.hpp"
#include "gptk/theory.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace gptk;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Accumulates one canonical report; text mode prints the lines, structured
// mode prints the JSON document. Both are byte-stable.
struct Report {
    std::string format;
    json doc = json::object();
    std::vector<std::string> lines;

    Report(const std::string& command, const std::string& fmt) : format(fmt) {
        doc["command"] = command;
        doc["inputs"] = json::object();
    }
    void input(const std::string& path, const std::string& content) {
        doc["inputs"][path] = fnv1a64(content);
    }
    void line(const std::string& s) { lines.push_back(s); }
    void emit() const {
        if (format == "structured") {
            std::cout << doc.dump(2) << "\n";
        } else {
            for (const auto& s : lines) std::cout << s << "\n";
        }
    }
};

json mixture_json(const Mixture& m) {
    json j = json::object();
    for (const auto& [name, w] : m.weights) j[name] = to_string(w);
    return j;
}

std::string mixture_text(const Mixture& m) {
    std::string s;
    for (const auto& [name, w] : m.weights) {
        if (!s.empty()) s += " + ";
        s += to_string(w) + " " + name;
    }
    return s.empty() ? "0" : s;
}

json vec_json(const Vec& v) {
    json j = json::array();
    for (const auto& x : v) j.push_back(to_string(x));
    return j;
}

std::string vec_text(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

Theory load_theory_arg(Report& rep, const std::string& path) {
    std::string content = read_file(path);
    rep.input(path, content);
    try {
        Theory t = parse_theory(content);
        auto problems = validate_theory(t);
        if (!problems.empty()) throw std::invalid_argument(problems.front());
        return t;
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

Behavior load_behavior_arg(Report& rep, const std::string& path) {
    std::string content = read_file(path);
    rep.input(path, content);
    try {
        return parse_behavior(content);
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

Mixture load_mixture_arg(Report& rep, const std::string& path) {
    std::string content = read_file(path);
    rep.input(path, content);
    Mixture m;
    try {
        json j = json::parse(content);
        for (const auto& [name, w] : j.items())
            m.weights[name] = parse_rational(w.get<std::string>());
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    return m;
}

std::vector<DisturbanceRule> load_rules_arg(Report& rep, const GditTheory& g,
                                            const std::string& source) {
    if (source == "symmetric") return symmetric_disturbance(g);
    std::string content = read_file(source);
    rep.input(source, content);
    std::vector<DisturbanceEntry> entries;
    try {
        json j = json::parse(content);
        const json& arr = j.is_array() ? j : j.at("disturbance");
        for (const auto& e : arr) {
            DisturbanceEntry entry;
            entry.measurement = e.at("measurement").get<std::string>();
            entry.state = e.at("state").get<std::string>();
            if (e.contains("outcome")) entry.outcome = e.at("outcome").get<int>();
            for (const auto& [name, w] : e.at("image").items())
                entry.image.weights[name] = parse_rational(w.get<std::string>());
            entries.push_back(std::move(entry));
        }
    } catch (const std::exception& e) {
        throw InputError(source + ": " + e.what());
    }
    return rules_from_entries(entries);
}

std::vector<std::string> theory_points(const Theory& t, std::vector<Vec>& points) {
    std::vector<std::string> names;
    for (const auto& s : t.pure_states) {
        names.push_back(s.name);
        points.push_back(t.point(s));
    }
    return names;
}

void verify_dependencies(const Theory& t, const std::vector<AffineDependency>& deps) {
    for (const auto& d : deps)
        if (mix_point(t, d.left) != mix_point(t, d.right))
            throw VerifyError("affine dependency does not hold");
}

OnticModel build_model(const Theory& t, const std::string& kind) {
    if (kind == "g") return ontic_distributions_g(t);
    if (!t.ontology || t.ontology->kind != "s")
        throw InputError("theory carries no s-type ontology section");
    return ontic_distributions_s(t, *t.ontology);
}

json model_json(const OnticModel& model) {
    json j = json::object();
    j["kind"] = model.kind;
    j["ontic_points"] = model.ontic_names;
    json dists = json::object();
    for (const auto& [name, mu] : model.state_distributions) dists[name] = vec_json(mu);
    j["distributions"] = std::move(dists);
    return j;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"exact analysis of finite single-system probabilistic theories"};
    app.require_subcommand(1);
    std::string format = "text";
    bool verify = false;
    app.add_option("--format", format)->check(CLI::IsMember({"text", "structured"}));
    app.add_flag("--verify", verify);

    std::string theory_path, behavior_path, state_name, map_path, mix_a_path, mix_b_path;
    std::vector<std::string> pair;
    std::string eps_s, delta_s;
    int outcomes = 2, gdit_inputs = 2, gdit_outputs = 2, prepare_outcome = 0;
    long long trials = 1000;
    std::uint64_t seed = 1;
    std::string disturbance_source = "symmetric", kind = "g";
    std::string prepare_meas = "X1", then_meas = "X2";
    bool materialize = false;

    auto* cs = app.add_subcommand("check-simplex", "is the pure state set a simplex");
    cs->add_option("theory", theory_path)->required();

    auto* ns = app.add_subcommand("nonsimpliciality", "affine dependencies among pure states");
    ns->add_option("theory", theory_path)->required();

    auto* cm = app.add_subcommand("comeasurable", "joint measurement feasibility for a subset");
    cm->add_option("theory", theory_path)->required();
    cm->add_option("--pair", pair)->expected(2, -1)->required();

    auto* dc = app.add_subcommand("disturbance-check", "validate the theory's update rules");
    dc->add_option("theory", theory_path)->required();

    auto* un = app.add_subcommand("uncertainty", "worst-case preparation uncertainty");
    un->add_option("theory", theory_path)->required();

    auto* di = app.add_subcommand("distinguishable", "joint distinguishability of eigenstates");
    di->add_option("theory", theory_path)->required();
    di->add_option("--pair", pair)->expected(2, -1)->required();

    auto* ch = app.add_subcommand("chernoff", "certified trial count for tomography");
    ch->add_option("--epsilon", eps_s)->required();
    ch->add_option("--delta", delta_s)->required();
    ch->add_option("--outcomes", outcomes)->required();

    auto* ts = app.add_subcommand("tomography-sim", "seeded single-clone tomography run");
    ts->add_option("theory", theory_path)->required();
    ts->add_option("--state", state_name)->required();
    ts->add_option("--trials", trials)->required();
    ts->add_option("--seed", seed)->required();
    ts->add_option("--epsilon", eps_s)->required();

    auto* gd = app.add_subcommand("gdit", "build a gdit and check its disturbance rules");
    gd->add_option("--inputs", gdit_inputs)->required();
    gd->add_option("--outputs", gdit_outputs)->required();
    gd->add_option("--disturbance", disturbance_source);

    auto* co = app.add_subcommand("correspond", "regular theory carried by a gdit");
    co->add_option("--inputs", gdit_inputs)->required();
    co->add_option("--outputs", gdit_outputs)->required();
    co->add_option("--disturbance", disturbance_source);

    auto* is = app.add_subcommand("indistinguishability-sim",
                                  "two-step protocol, gdit vs regular theory");
    is->add_option("--inputs", gdit_inputs)->required();
    is->add_option("--outputs", gdit_outputs)->required();
    is->add_option("--disturbance", disturbance_source);
    is->add_option("--prepare", prepare_meas);
    is->add_option("--outcome", prepare_outcome);
    is->add_option("--measure", then_meas);
    is->add_option("--trials", trials);
    is->add_option("--seed", seed);

    auto* on = app.add_subcommand("ontology", "ontic distributions over the underlying simplex");
    on->add_option("theory", theory_path)->required();
    on->add_option("--kind", kind)->check(CLI::IsMember({"g", "s"}));

    auto* fc = app.add_subcommand("find-coherent", "ontic permutation realizing a state map");
    fc->add_option("theory", theory_path)->required();
    fc->add_option("--kind", kind)->check(CLI::IsMember({"g", "s"}));
    fc->add_option("--map", map_path)->required();

    auto* pc = app.add_subcommand("prep-contextuality",
                                  "ontic comparison of operationally equal mixtures");
    pc->add_option("theory", theory_path)->required();
    pc->add_option("--kind", kind)->check(CLI::IsMember({"g", "s"}));
    pc->add_option("--mix-a", mix_a_path)->required();
    pc->add_option("--mix-b", mix_b_path)->required();

    auto* cg = app.add_subcommand("congruence", "transitivity of a comeasurability graph");
    cg->add_option("graph", behavior_path)->required();

    auto* jd = app.add_subcommand("jd", "joint distribution existence for a behavior");
    jd->add_option("behavior", behavior_path)->required();

    auto* os = app.add_subcommand("os-eval", "pairwise correlator sum and marginal consistency");
    os->add_option("behavior", behavior_path)->required();

    auto* xs = app.add_subcommand("xos-eval", "triple-score sum and marginal consistency");
    xs->add_option("behavior", behavior_path)->required();

    auto* cc = app.add_subcommand("contextual-configs",
                                  "deterministic per-context assignments of a scenario");
    cc->add_option("behavior", behavior_path)->required();
    cc->add_flag("--materialize", materialize);

    auto* dr = app.add_subcommand("dimension-report", "dimension counts of the box polytope");
    dr->add_option("--outcomes", outcomes)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Report rep(app.get_subcommands().front()->get_name(), format);

    if (cs->parsed() || ns->parsed()) {
        Theory t = load_theory_arg(rep, theory_path);
        std::vector<Vec> points;
        auto names = theory_points(t, points);
        auto deps = nonsimpliciality_conditions(names, points);
        if (verify) verify_dependencies(t, deps);
        rep.doc["verdict"] = deps.empty() ? "simplex" : "non-simplex";
        json jdeps = json::array();
        for (const auto& d : deps)
            jdeps.push_back({{"left", mixture_json(d.left)}, {"right", mixture_json(d.right)}});
        rep.doc["dependencies"] = std::move(jdeps);
        if (deps.empty()) {
            rep.line("simplex");
        } else {
            rep.line("non-simplex, " + std::to_string(deps.size()) +
                     (deps.size() == 1 ? " dependency" : " dependencies"));
        }
        if (ns->parsed())
            for (const auto& d : deps)
                rep.line(mixture_text(d.left) + " = " + mixture_text(d.right));
    } else if (cm->parsed()) {
        Theory t = load_theory_arg(rep, theory_path);
        auto sys = build_joint_system(t, pair);
        auto res = comeasurable(t, pair);
        rep.doc["verdict"] = res.yes ? "comeasurable" : "not comeasurable";
        if (res.yes) {
            json w = json::object();
            for (const auto& [name, v] : res.witness) w[name] = to_string(v);
            rep.doc["witness"] = std::move(w);
            rep.line("comeasurable");
            for (const auto& [name, v] : res.witness)
                rep.line(name + " = " + to_string(v));
            if (verify) {
                Vec x;
                for (const auto& var : sys.system.variables) x.push_back(res.witness.at(var));
                if (!verify_assignment(sys.system, x))
                    throw VerifyError("joint measurement witness fails the constraints");
            }
        } else {
            json forced = json::object();
            for (const auto& [name, v] : res.forced_values) forced[name] = to_string(v);
            rep.doc["forced_values"] = std::move(forced);
            rep.doc["certificate"] = {{"equalities", vec_json(res.certificate.eq_multipliers)},
                                      {"inequalities", vec_json(res.certificate.ineq_multipliers)}};
            rep.line("not comeasurable");
            for (const auto& [name, v] : res.forced_values)
                rep.line("forced: " + name + " = " + to_string(v));
            if (verify && !verify_farkas(sys.system, res.certificate))
                throw VerifyError("infeasibility certificate fails");
        }
    } else if (dc->parsed()) {
        Theory t = load_theory_arg(rep, theory_path);
        auto rules = rules_from_entries(t.disturbance);
        auto violations = check_disturbance_consistency(t, rules);
        rep.doc["consistent"] = violations.empty();
        json jv = json::array();
        for (const auto& v : violations)
            jv.push_back({{"measurement", v.measurement}, {"description", v.description}});
        rep.doc["violations"] = std::move(jv);
        rep.line(violations.empty() ? "consistent" : "inconsistent");
        for (const auto& v : violations) rep.line(v.measurement + ": " + v.description);
    } else if (un->parsed()) {
        Theory t = load_theory_arg(rep, theory_path);
        auto u = uncertainty(t);
        rep.doc["vertex_value"] = to_string(u.vertex_value);
        rep.line(to_string(u.vertex_value));
        if (u.hull_value) {
            rep.doc["polytope_value"] = to_string(*u.hull_value);
            rep.line("polytope maximum: " + to_string(*u.hull_value));
        }
    } else if (di->parsed()) {
        Theory t = load_theory_arg(rep, theory_path);
        bool yes = jointly_distinguishable(t, pair);
        rep.doc["verdict"] = yes ? "distinguishable" : "not distinguishable";
        rep.doc["bound"] = measurement_dimension_bound(t);
        rep.line(yes ? "distinguishable" : "not distinguishable");
        rep.line("dimension bound: " + std::to_string(measurement_dimension_bound(t)));
    } else if (ch->parsed()) {
        Rational eps = parse_rational(eps_s), delta = parse_rational(delta_s);
        long long t = chernoff_trials(eps, delta, outcomes);
        rep.doc["trials"] = t;
        rep.line(std::to_string(t));
    } else if (ts->parsed()) {
        Theory t = load_theory_arg(rep, theory_path);
        TomographyPlan plan;
        plan.epsilon = parse_rational(eps_s);
        plan.delta = Rational(1, 2);  // unused by the simulation itself
        plan.trials = trials;
        auto out = simulate_clone_tomography(t, state_name, plan, seed);
        json freqs = json::array();
        for (const auto& f : out.frequencies) freqs.push_back(vec_json(f));
        rep.doc["frequencies"] = std::move(freqs);
        rep.doc["any_deviation"] = out.any_deviation;
        for (std::size_t i = 0; i < out.frequencies.size(); ++i)
            rep.line(t.measurements[i].name + ": " + vec_text(out.frequencies[i]) +
                     (out.deviated[i] ? " deviated" : ""));
        rep.line(out.any_deviation ? "deviation detected" : "within tolerance");
    } else if (gd->parsed() || co->parsed() || is->parsed()) {
        GditTheory g = build_gdit(gdit_inputs, gdit_outputs);
        auto rules = load_rules_arg(rep, g, disturbance_source);
        if (gd->parsed()) {
            auto violations = check_disturbance_consistency(g.theory, rules);
            rep.doc["vertices"] = g.theory.pure_states.size();
            rep.doc["consistent"] = violations.empty();
            json jv = json::array();
            for (const auto& v : violations)
                jv.push_back({{"measurement", v.measurement}, {"description", v.description}});
            rep.doc["violations"] = std::move(jv);
            rep.line("vertices: " + std::to_string(g.theory.pure_states.size()));
            rep.line(violations.empty() ? "disturbance: consistent" : "disturbance: inconsistent");
            for (const auto& v : violations) rep.line(v.measurement + ": " + v.description);
        } else if (co->parsed()) {
            auto c = corresponding_regular_theory(g, rules);
            json jstates = json::object();
            for (const auto& s : c.regular.pure_states) {
                json dists = json::array();
                for (const auto& d : s.dists) dists.push_back(vec_json(d));
                jstates[s.name] = std::move(dists);
            }
            rep.doc["states"] = std::move(jstates);
            json jdec = json::object();
            for (const auto& [name, m] : c.decompositions) jdec[name] = mixture_json(m);
            rep.doc["decompositions"] = std::move(jdec);
            for (const auto& s : c.regular.pure_states) {
                std::string line = s.name + ":";
                for (const auto& d : s.dists) line += " " + vec_text(d);
                rep.line(line);
                rep.line("  = " + mixture_text(c.decompositions.at(s.name)));
            }
            if (verify) {
                for (const auto& [name, m] : c.decompositions)
                    if (mix_point(c.gdit.theory, m) != c.regular.point(c.regular.state(name)))
                        throw VerifyError("decomposition does not reproduce " + name);
            }
        } else {
            auto c = corresponding_regular_theory(g, rules);
            auto out = indistinguishability_trial(c, prepare_meas, prepare_outcome, then_meas,
                                                  trials, seed);
            rep.doc["gdit"] = vec_json(out.gdit_distribution);
            rep.doc["regular"] = vec_json(out.regular_distribution);
            rep.line("gdit:    " + vec_text(out.gdit_distribution));
            rep.line("regular: " + vec_text(out.regular_distribution));
        }
    } else if (on->parsed()) {
        Theory t = load_theory_arg(rep, theory_path);
        auto model = build_model(t, kind);
        rep.doc.update(model_json(model));
        rep.line("kind: " + model.kind);
        for (const auto& [name, mu] : model.state_distributions)
            rep.line(name + ": " + vec_text(mu));
        if (verify) {
            auto problems = verify_ontic_model(t, model);
            if (!problems.empty()) throw VerifyError(problems.front());
        }
    } else if (fc->parsed()) {
        Theory t = load_theory_arg(rep, theory_path);
        auto model = build_model(t, kind);
        std::string content = read_file(map_path);
        rep.input(map_path, content);
        std::map<std::string, std::string> target;
        try {
            json j = json::parse(content);
            for (const auto& [from, to] : j.items()) target[from] = to.get<std::string>();
        } catch (const std::exception& e) {
            throw InputError(map_path + ": " + e.what());
        }
        auto res = find_ontic_permutation(model, target);
        rep.doc["verdict"] = res.found ? "found" : "impossible";
        if (res.found) {
            json perm = json::object();
            for (std::size_t i = 0; i < res.permutation.size(); ++i)
                perm[model.ontic_names[i]] =
                    model.ontic_names[static_cast<std::size_t>(res.permutation[i])];
            rep.doc["permutation"] = std::move(perm);
            rep.line("found");
            for (std::size_t i = 0; i < res.permutation.size(); ++i)
                rep.line(model.ontic_names[i] + " -> " +
                         model.ontic_names[static_cast<std::size_t>(res.permutation[i])]);
            if (verify) {
                for (const auto& [from, to] : target) {
                    const Vec& src = model.state_distributions.at(from);
                    const Vec& dst = model.state_distributions.at(to);
                    for (std::size_t i = 0; i < src.size(); ++i)
                        if (dst[static_cast<std::size_t>(res.permutation[i])] != src[i])
                            throw VerifyError("permutation does not carry " + from + " to " + to);
                }
            }
        } else {
            rep.line("impossible");
        }
    } else if (pc->parsed()) {
        Theory t = load_theory_arg(rep, theory_path);
        auto model = build_model(t, kind);
        Mixture a = load_mixture_arg(rep, mix_a_path);
        Mixture b = load_mixture_arg(rep, mix_b_path);
        auto res = prep_contextuality_witness(t, model, a, b);
        rep.doc["verdict"] = res.witness ? "witness" : "no witness";
        rep.doc["distribution_a"] = vec_json(res.distribution_a);
        rep.doc["distribution_b"] = vec_json(res.distribution_b);
        rep.line(res.witness ? "witness" : "no witness");
        rep.line("a: " + vec_text(res.distribution_a));
        rep.line("b: " + vec_text(res.distribution_b));
    } else if (cg->parsed()) {
        std::string content = read_file(behavior_path);
        rep.input(behavior_path, content);
        CongruenceGraph g;
        try {
            json j = json::parse(content);
            g.nodes = j.at("nodes").get<std::vector<std::string>>();
            for (const auto& e : j.at("edges"))
                g.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        } catch (const std::exception& e) {
            throw InputError(behavior_path + ": " + e.what());
        }
        auto res = congruence_classes(g);
        rep.doc["transitive"] = res.transitive;
        if (res.transitive) {
            rep.doc["classes"] = res.classes;
            rep.line("transitive");
            for (const auto& cls : res.classes) {
                std::string line = "class:";
                for (const auto& name : cls) line += " " + name;
                rep.line(line);
            }
        } else {
            rep.doc["witness"] = res.witness;
            rep.line("intransitive: " + res.witness[0] + "-" + res.witness[1] + "-" +
                     res.witness[2] + " has no closing edge");
        }
    } else if (jd->parsed()) {
        Behavior b = load_behavior_arg(rep, behavior_path);
        auto res = jd_feasible(b);
        rep.doc["verdict"] = res.exists ? "exists" : "no joint distribution";
        if (res.exists) {
            json joint = json::object();
            for (const auto& [k, v] : res.joint) joint[k] = to_string(v);
            rep.doc["joint"] = std::move(joint);
            rep.line("exists");
            for (const auto& [k, v] : res.joint) rep.line(k + ": " + to_string(v));
            if (verify) {
                for (const auto& ctx : b.contexts) {
                    std::vector<std::size_t> pos;
                    for (const auto& name : ctx)
                        pos.push_back(static_cast<std::size_t>(b.measurement_index(name)));
                    std::map<std::string, Rational> marg;
                    for (const auto& [k, v] : res.joint) {
                        auto tup = Behavior::parse_tuple(k);
                        std::vector<int> sub;
                        for (auto p : pos) sub.push_back(tup[p]);
                        marg[Behavior::tuple_key(sub)] += v;
                    }
                    for (const auto& [tkey, p] : b.context_stats(ctx)) {
                        auto it = marg.find(tkey);
                        if ((it == marg.end() ? Rational(0) : it->second) != p)
                            throw VerifyError("joint marginal mismatch in context " +
                                              Behavior::context_key(ctx));
                    }
                }
            }
        } else {
            rep.doc["certified"] = res.certified_infeasible;
            rep.line("no joint distribution");
            if (verify && !res.certified_infeasible)
                throw VerifyError("infeasibility certificate fails");
        }
    } else if (os->parsed()) {
        Behavior b = load_behavior_arg(rep, behavior_path);
        if (b.measurements.size() != 3)
            throw InputError("os-eval expects exactly three measurements");
        Rational v = os_value(b, b.measurements[0], b.measurements[1], b.measurements[2]);
        auto violations = gleason_nosignaling_check(b);
        rep.doc["value"] = to_string(v);
        rep.doc["no_signaling"] = violations.empty();
        rep.doc["violations"] = violations;
        rep.line(to_string(v) + ", no-signaling: " + (violations.empty() ? "pass" : "fail"));
        for (const auto& s : violations) rep.line(s);
    } else if (xs->parsed()) {
        Behavior b = load_behavior_arg(rep, behavior_path);
        Rational v = xos_value(b);
        auto violations = gleason_nosignaling_check(b);
        rep.doc["value"] = to_string(v);
        rep.doc["no_signaling"] = violations.empty();
        rep.doc["violations"] = violations;
        rep.line(to_string(v) + ", no-signaling: " + (violations.empty() ? "pass" : "fail"));
        for (const auto& s : violations) rep.line(s);
    } else if (cc->parsed()) {
        Behavior b = load_behavior_arg(rep, behavior_path);
        auto res = enumerate_contextual_configurations(b.measurements, b.outcome_counts,
                                                       b.contexts, materialize);
        rep.doc["count"] = res.count;
        rep.line("configurations: " + std::to_string(res.count));
        if (materialize) {
            json jc = json::array();
            for (const auto& config : res.configurations) {
                json one = json::object();
                for (const auto& [ckey, tkey] : config.assignment) one[ckey] = tkey;
                jc.push_back(std::move(one));
            }
            rep.doc["configurations"] = std::move(jc);
            for (const auto& config : res.configurations) {
                std::string line;
                for (const auto& [ckey, tkey] : config.assignment) {
                    if (!line.empty()) line += "; ";
                    line += ckey + " -> " + tkey;
                }
                rep.line(line);
            }
        }
    } else if (dr->parsed()) {
        auto res = contextual_dimension_report(outcomes);
        rep.doc["unrestricted_dimension"] = res.unrestricted_dimension;
        rep.doc["gleason_constraints"] = res.gleason_constraints;
        rep.doc["box_polytope_dimension"] = res.box_polytope_dimension;
        rep.doc["simplex_dimension"] = res.simplex_dimension;
        rep.line("unrestricted dimension: " + std::to_string(res.unrestricted_dimension));
        rep.line("marginal constraints: " + std::to_string(res.gleason_constraints));
        rep.line("box polytope dimension: " + std::to_string(res.box_polytope_dimension));
        rep.line("simplex dimension: " + std::to_string(res.simplex_dimension));
    }

    if (verify) {
        rep.doc["verified"] = true;
        rep.line("verify: pass");
    }
    rep.emit();
    return 0;
}

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const VerifyError& e) {
        std::cerr << "verify failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

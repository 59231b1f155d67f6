// Acceptance gate: one criterion per invocation, one PASS/FAIL line each.
#include "gptk/comeasure.hpp"
#include "gptk/contextuality.hpp"
#include "gptk/gdit.hpp"
#include "gptk/geometry.hpp"
#include "gptk/ontology.hpp"
#include "gptk/statics.hpp"
#include "gptk/theory.hpp"

#include "util.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace gptk;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::vector<Vec> points_of(const Theory& t, std::vector<std::string>& names) {
    std::vector<Vec> pts;
    for (const auto& s : t.pure_states) {
        names.push_back(s.name);
        pts.push_back(t.point(s));
    }
    return pts;
}

Mixture half(const std::string& a, const std::string& b) {
    Mixture m;
    m.weights[a] = m.weights[b] = Rational(1, 2);
    return m;
}

bool square_dependency(const Theory& t) {
    std::vector<std::string> names;
    auto pts = points_of(t, names);
    auto deps = nonsimpliciality_conditions(names, pts);
    if (deps.size() != 1) return false;
    Mixture x = half("X+", "X-"), z = half("Z+", "Z-");
    bool direct = deps[0].left == x && deps[0].right == z;
    bool swapped = deps[0].left == z && deps[0].right == x;
    return direct || swapped;
}

Outcome criterion1() {
    Outcome out;
    Theory cl = load_theory(fixture("classical_xz.theory"));
    std::vector<std::string> names;
    out.require(is_simplex(points_of(cl, names)), "classical theory is not a simplex");

    out.require(square_dependency(load_theory(fixture("square_symmetric.theory"))),
                "half-half square theory misses its single dependency");
    out.require(square_dependency(load_theory(fixture("square_asymmetric.theory"))),
                "quarter square theory misses its single dependency");

    Theory sp = load_theory(fixture("spekkens.theory"));
    names.clear();
    auto deps = nonsimpliciality_conditions(names, points_of(sp, names));
    out.require(deps.size() == 2, "six-state dependency space should have dimension two");
    for (const auto& d : deps)
        out.require(mix_point(sp, d.left) == mix_point(sp, d.right),
                    "reported dependency does not hold");
    // the three displayed pairwise mixture identities all hold
    Vec x = mix_point(sp, half("X+", "X-"));
    out.require(x == mix_point(sp, half("Y+", "Y-")), "X and Y mixtures differ");
    out.require(x == mix_point(sp, half("Z+", "Z-")), "X and Z mixtures differ");
    return out;
}

Outcome criterion2() {
    Outcome out;
    out.require(uncertainty(load_theory(fixture("classical_xz.theory"))).vertex_value == 0,
                "classical uncertainty is nonzero");
    out.require(uncertainty(load_theory(fixture("square_asymmetric.theory"))).vertex_value ==
                    Rational(1, 8),
                "quarter square uncertainty is not 1/8");
    out.require(uncertainty(load_theory(fixture("square_symmetric.theory"))).vertex_value ==
                    Rational(1, 4),
                "half-half square uncertainty is not 1/4");
    for (int m = 2; m <= 3; ++m)
        for (int n = 2; n <= 3; ++n)
            out.require(uncertainty(build_gdit(m, n).theory).vertex_value == 0,
                        "gdit uncertainty is nonzero");

    // single state with uniform marginals on three binary measurements
    Theory box;
    for (const char* name : {"A", "B", "C"}) box.measurements.push_back({name, 2});
    PureState s;
    s.name = "box";
    for (int j = 0; j < 3; ++j) s.dists.push_back({Rational(1, 2), Rational(1, 2)});
    box.pure_states.push_back(s);
    out.require(uncertainty(box).vertex_value == Rational(1, 2),
                "box marginal uncertainty is not 1/2");
    return out;
}

Outcome criterion3() {
    Outcome out;
    out.require(comeasurable(load_theory(fixture("classical_pair.theory")), {"X", "Z"}).yes,
                "classical pair should be comeasurable");

    auto quarter = comeasurable(load_theory(fixture("square_asymmetric.theory")), {"X", "Z"});
    if (quarter.yes) {
        out.require(false,
                    "the quarter square X,Z pair admits an exact joint measurement: the "
                    "marginal-forced table (including M(1,0|X+) = " +
                        to_string(quarter.witness.at("M(1,0|X+)")) + ", M(1,0|Z+) = " +
                        to_string(quarter.witness.at("M(1,0|Z+)")) +
                        ") satisfies every dependency row, so the required infeasibility "
                        "does not occur");
    } else {
        out.require(quarter.forced_values.at("M(1,0|X+)") == 0 &&
                        quarter.forced_values.at("M(1,0|Z+)") == Rational(3, 4),
                    "forced entries missing from the infeasibility trace");
    }

    for (int m = 2; m <= 3; ++m)
        for (int n = 2; n <= 3; ++n) {
            GditTheory g = build_gdit(m, n);
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    out.require(!comeasurable(g.theory, {g.theory.measurements[i].name,
                                                         g.theory.measurements[j].name})
                                     .yes,
                                "a gdit pair is comeasurable");
        }

    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int m = 2 + static_cast<int>(gen() % 2);
        int n = 2 + static_cast<int>(gen() % 2);
        Theory t = random_regular_theory(gen, m, n);
        std::vector<std::string> subset, names;
        for (const auto& meas : t.measurements) subset.push_back(meas.name);
        auto pts = points_of(t, names);
        bool distinct = true;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i] == pts[j]) distinct = false;
        if (!distinct) continue;
        out.require(comeasurable(t, subset).yes == is_simplex(pts),
                    "random theory breaks the comeasurable-iff-simplex equivalence");
    }
    return out;
}

Outcome criterion4() {
    Outcome out;
    Theory sp = load_theory(fixture("spekkens.theory"));
    auto g = ontic_distributions_g(sp);
    Vec quarter_front = {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4),
                         0, 0, 0, 0};
    out.require(g.state_distributions.at("X+") == quarter_front,
                "six-state g-type distribution of X+ is wrong");
    out.require(g.state_distributions.at("Z+") ==
                    Vec{Rational(1, 4), 0, Rational(1, 4), 0, Rational(1, 4), 0,
                        Rational(1, 4), 0},
                "six-state g-type distribution of Z+ is wrong");

    Theory sq = load_theory(fixture("square_symmetric.theory"));
    auto gsq = ontic_distributions_g(sq);
    out.require(gsq.state_distributions.at("X+") ==
                    Vec{Rational(1, 2), Rational(1, 2), 0, 0},
                "square g-type distribution of X+ is wrong");
    out.require(gsq.state_distributions.at("Z-") ==
                    Vec{0, Rational(1, 2), 0, Rational(1, 2)},
                "square g-type distribution of Z- is wrong");

    auto s = ontic_distributions_s(sp, *sp.ontology);
    out.require(s.state_distributions.at("X+") == Vec{Rational(1, 2), Rational(1, 2), 0, 0},
                "six-state s-type distribution of X+ is wrong");
    out.require(s.state_distributions.at("Z-") == Vec{0, Rational(1, 2), Rational(1, 2), 0},
                "six-state s-type distribution of Z- is wrong");
    out.require(verify_ontic_model(sp, s).empty(), "s-type model fails push-forward");

    Vec a = {Rational(1, 2), 0, 0, Rational(1, 2)};
    Vec b = {0, Rational(1, 2), Rational(1, 2), 0};
    Vec target = {Rational(1, 2), Rational(1, 2)};
    out.require(compress_g(sq, a) == target && compress_g(sq, b) == target,
                "compression collision example fails");
    return out;
}

Outcome criterion5() {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    Theory sp = load_theory(fixture("spekkens.theory"));
    std::map<std::string, std::string> inverter = {{"X+", "X-"}, {"X-", "X+"}, {"Y+", "Y-"},
                                                   {"Y-", "Y+"}, {"Z+", "Z-"}, {"Z-", "Z+"}};
    auto found = find_ontic_permutation(ontic_distributions_g(sp), inverter);
    out.require(found.found, "six-state g-type inverter not found");
    out.require(found.permutation == std::vector<int>{7, 6, 5, 4, 3, 2, 1, 0},
                "inverter pairing differs from the full reversal");
    out.require(!find_ontic_permutation(ontic_distributions_s(sp, *sp.ontology), inverter).found,
                "six-state s-type inverter should be impossible");
    Theory mod = load_theory(fixture("spekkens_modified.theory"));
    out.require(!find_ontic_permutation(ontic_distributions_g(mod), inverter).found,
                "modified-theory inverter should be impossible");
    auto elapsed = std::chrono::steady_clock::now() - start;
    out.require(std::chrono::duration_cast<std::chrono::seconds>(elapsed).count() < 5,
                "permutation search exceeded five seconds");
    return out;
}

Outcome criterion6() {
    Outcome out;
    Theory sq = load_theory(fixture("square_symmetric.theory"));
    auto res = prep_contextuality_witness(sq, ontic_distributions_g(sq), half("X+", "X-"),
                                          half("Z+", "Z-"));
    Vec uniform(4, Rational(1, 4));
    out.require(!res.witness && res.distribution_a == uniform && res.distribution_b == uniform,
                "X/Z mixtures should agree at (1/4,1/4,1/4,1/4)");

    Theory rot = load_theory(fixture("rotated.theory"));
    auto model = ontic_distributions_g(rot);
    auto wit = prep_contextuality_witness(rot, model, half("Y1+", "Y1-"), half("Y2+", "Y2-"));
    out.require(wit.witness, "rotated mixtures should witness preparation contextuality");
    auto shaped = [](const Vec& v, const Rational& xi) {
        Rational hi = (1 + xi) / 4, lo = (1 - xi) / 4;
        return v == Vec{hi, lo, lo, hi};
    };
    out.require(shaped(wit.distribution_a, Rational(12, 25)),
                "first rotated mixture has the wrong ontic shape");
    out.require(shaped(wit.distribution_b, Rational(60, 169)),
                "second rotated mixture has the wrong ontic shape");
    return out;
}

Outcome criterion7() {
    Outcome out;
    out.require(os_noncontextual_range() == std::make_pair(Rational(-1), Rational(3)),
                "deterministic correlator range is not [-1, 3]");
    out.require(xos_noncontextual_max() == 2, "deterministic triple-score maximum is not 2");

    Behavior q1 = load_behavior(fixture("os_q1.behavior"));
    Behavior obox = load_behavior(fixture("os_box.behavior"));
    out.require(os_value(q1, "A", "B", "C") == -3, "assignment does not reach -3");
    out.require(os_value(obox, "A", "B", "C") == -3, "box does not reach -3");
    out.require(!gleason_nosignaling_check(q1).empty(),
                "per-context assignment should fail the marginal check");
    out.require(gleason_nosignaling_check(obox).empty(), "box should pass the marginal check");

    Behavior r1 = load_behavior(fixture("xos_r1.behavior"));
    Behavior xbox = load_behavior(fixture("xos_box.behavior"));
    out.require(xos_value(r1) == 4, "ternary assignment does not reach 4");
    out.require(xos_value(xbox) == 4, "ternary box does not reach 4");
    out.require(!gleason_nosignaling_check(r1).empty(),
                "ternary assignment should fail the marginal check");
    out.require(gleason_nosignaling_check(xbox).empty(),
                "ternary box should pass the marginal check");
    return out;
}

Outcome criterion8() {
    Outcome out;
    auto obox = jd_feasible(load_behavior(fixture("os_box.behavior")));
    out.require(!obox.exists && obox.certified_infeasible,
                "anticorrelation box should have no joint distribution");
    auto xbox = jd_feasible(load_behavior(fixture("xos_box.behavior")));
    out.require(!xbox.exists && xbox.certified_infeasible,
                "ternary box should have no joint distribution");
    out.require(jd_feasible(load_behavior(fixture("product.behavior"))).exists,
                "product behavior should have a joint distribution");

    std::mt19937_64 gen(88);
    for (int trial = 0; trial < 100; ++trial) {
        Behavior b;
        b.measurements = {"A", "B", "C"};
        b.outcome_counts = {2, 2, 2};
        b.contexts = {{"A"}, {"B", "C"}};
        Vec da = random_distribution(gen, 2);
        b.stats["A"]["0"] = da[0];
        b.stats["A"]["1"] = da[1];
        Vec dbc = random_distribution(gen, 4);
        for (int o1 = 0; o1 < 2; ++o1)
            for (int o2 = 0; o2 < 2; ++o2)
                b.stats["B,C"][Behavior::tuple_key({o1, o2})] =
                    dbc[static_cast<std::size_t>(o1 * 2 + o2)];
        Behavior joint = product_jd(b, {{"A"}, {"B", "C"}});
        out.require(jd_feasible(joint).exists, "product joint distribution missing");
        Vec ma(2, Rational(0));
        std::map<std::string, Rational> mbc;
        for (const auto& [tkey, p] : joint.context_stats(joint.contexts[0])) {
            auto tup = Behavior::parse_tuple(tkey);
            ma[static_cast<std::size_t>(tup[0])] += p;
            mbc[Behavior::tuple_key({tup[1], tup[2]})] += p;
        }
        out.require(ma == da, "product marginal round-trip fails on A");
        for (const auto& [tkey, p] : b.stats["B,C"])
            if (p != 0) out.require(mbc[tkey] == p, "product marginal round-trip fails on B,C");
    }

    for (int trial = 0; trial < 100; ++trial) {
        Behavior b;
        b.measurements = {"A1", "A2", "B1", "B2"};
        b.outcome_counts = {2, 2, 2, 2};
        b.contexts = {{"B1", "B2"}, {"A1", "B1", "B2"}, {"A2", "B1", "B2"}};
        Rational weights[4], total = 0;
        for (auto& w : weights) {
            w = Rational(1 + static_cast<long>(gen() % 5));
            total += w;
        }
        for (auto& w : weights) w /= total;
        for (int v1 = 0; v1 < 2; ++v1)
            for (int v2 = 0; v2 < 2; ++v2) {
                Rational base = weights[v1 * 2 + v2];
                b.stats["B1,B2"][Behavior::tuple_key({v1, v2})] = base;
                for (int ti = 0; ti < 2; ++ti) {
                    Rational p(static_cast<long>(gen() % 7), 7);
                    std::string key = ti == 0 ? "A1,B1,B2" : "A2,B1,B2";
                    b.stats[key][Behavior::tuple_key({0, v1, v2})] = base * p;
                    b.stats[key][Behavior::tuple_key({1, v1, v2})] = base * (1 - p);
                }
            }
        Behavior joint = conditional_jd_2x2(b);
        out.require(jd_feasible(joint).exists, "conditional joint distribution missing");
        for (int a1 = 0; a1 < 2; ++a1)
            for (int v1 = 0; v1 < 2; ++v1)
                for (int v2 = 0; v2 < 2; ++v2) {
                    Rational got = 0;
                    for (int a2 = 0; a2 < 2; ++a2)
                        got += joint.probability(joint.contexts[0], {a1, a2, v1, v2});
                    out.require(got == b.probability({"A1", "B1", "B2"}, {a1, v1, v2}),
                                "conditional marginal round-trip fails");
                }
    }
    return out;
}

Outcome criterion9() {
    Outcome out;
    Theory t = load_theory(fixture("square_symmetric.theory"));
    TomographyPlan plan;
    plan.epsilon = Rational(1, 2);
    plan.trials = chernoff_trials(Rational(1, 2), Rational(1, 10), 2);
    int failures = 0;
    for (int seed = 0; seed < 1000; ++seed)
        if (simulate_clone_tomography(t, "Z+", plan, static_cast<std::uint64_t>(seed))
                .any_deviation)
            ++failures;
    // rate <= 1/10 + 3 sqrt(0.1 * 0.9 / 1000), compared exactly by squaring
    Rational d = Rational(failures, 1000) - Rational(1, 10);
    bool within = d <= 0 || d * d <= Rational(9, 100) * Rational(9, 1000);
    out.require(within, "failure rate " + to_string(Rational(failures, 1000)) +
                            " exceeds the certified bound");
    return out;
}

Outcome criterion10() {
    Outcome out;
    std::vector<std::string> invocations = {
        "--verify check-simplex " + fixture("square_symmetric.theory"),
        "--verify nonsimpliciality " + fixture("spekkens.theory"),
        "--verify comeasurable " + fixture("square_symmetric.theory") + " --pair X Z",
        "--verify comeasurable " + fixture("gdit22.theory") + " --pair X1 X2",
        "--verify correspond --inputs 2 --outputs 2",
        "--verify correspond --inputs 2 --outputs 2 --disturbance " +
            fixture("gdit22_asymmetric.rules"),
        "--verify ontology " + fixture("spekkens.theory") + " --kind g",
        "--verify ontology " + fixture("spekkens.theory") + " --kind s",
        "--verify find-coherent " + fixture("spekkens.theory") + " --kind g --map " +
            fixture("inverter.map"),
        "--verify jd " + fixture("product.behavior"),
        "--verify jd " + fixture("os_box.behavior"),
        "disturbance-check " + fixture("square_asymmetric.theory"),
        "uncertainty " + fixture("square_asymmetric.theory"),
        "os-eval " + fixture("os_box.behavior"),
        "xos-eval " + fixture("xos_box.behavior"),
        "congruence " + fixture("intransitive.graph"),
        "prep-contextuality " + fixture("rotated.theory") + " --kind g --mix-a " +
            fixture("mix_y1.mixture") + " --mix-b " + fixture("mix_y2.mixture"),
        "tomography-sim " + fixture("square_symmetric.theory") +
            " --state Z+ --trials 200 --seed 11 --epsilon 1/2",
        "contextual-configs " + fixture("os_box.behavior") + " --materialize",
        "dimension-report --outcomes 2",
    };
    for (const auto& inv : invocations) {
        for (const std::string fmt : {"text", "structured"}) {
            std::string cmd = "--format " + fmt + " " + inv;
            auto a = run_cli(cmd);
            auto b = run_cli(cmd);
            out.require(a.exit_code == 0, "nonzero exit: " + cmd);
            out.require(a.output == b.output, "output not byte-stable: " + cmd);
            if (fmt == "text" && inv.rfind("--verify", 0) == 0)
                out.require(a.output.find("verify: pass") != std::string::npos,
                            "verification line missing: " + cmd);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: acceptance <criterion 1..10>\n";
        return 2;
    }
    int n = std::atoi(argv[1]);
    static const char* labels[] = {
        "simpliciality verdicts and dependency structure",
        "exact uncertainty values",
        "joint measurement decisions",
        "ontic distribution constructions",
        "coherent permutation search",
        "preparation contextuality witnesses",
        "brute-force contextuality bounds",
        "joint distribution existence",
        "tomography failure rate",
        "deterministic, verifiable CLI output",
    };
    Outcome out;
    switch (n) {
        case 1: out = criterion1(); break;
        case 2: out = criterion2(); break;
        case 3: out = criterion3(); break;
        case 4: out = criterion4(); break;
        case 5: out = criterion5(); break;
        case 6: out = criterion6(); break;
        case 7: out = criterion7(); break;
        case 8: out = criterion8(); break;
        case 9: out = criterion9(); break;
        case 10: out = criterion10(); break;
        default:
            std::cerr << "usage: acceptance <criterion 1..10>\n";
            return 2;
    }
    if (out.pass) {
        std::cout << "PASS criterion " << n << ": " << labels[n - 1] << "\n";
        return 0;
    }
    std::cout << "FAIL criterion " << n << ": " << labels[n - 1] << " (" << out.detail << ")\n";
    return 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gptk/gdit.hpp"
#include "gptk/ontology.hpp"

#include "util.hpp"

using namespace gptk;

namespace {

Vec q(std::initializer_list<const char*> xs) {
    Vec v;
    for (const char* x : xs) v.push_back(parse_rational(x));
    return v;
}

}  // namespace

TEST_CASE("the underlying simplex enumerates value tuples, first measurement most significant") {
    Theory t = load_theory(fixture("square_symmetric.theory"));
    auto tuples = underlying_simplex(t);
    REQUIRE(tuples.size() == 4);
    CHECK(tuples[0] == std::vector<int>{0, 0});
    CHECK(tuples[1] == std::vector<int>{0, 1});
    CHECK(tuples[2] == std::vector<int>{1, 0});
    CHECK(tuples[3] == std::vector<int>{1, 1});

    Theory sp = load_theory(fixture("spekkens.theory"));
    auto big = underlying_simplex(sp);
    REQUIRE(big.size() == 8);
    CHECK(big[0] == std::vector<int>{0, 0, 0});
    CHECK(big[5] == std::vector<int>{1, 0, 1});
    CHECK(big[7] == std::vector<int>{1, 1, 1});
}

TEST_CASE("compression maps barycentric points to generalized coordinates") {
    Theory t = load_theory(fixture("square_symmetric.theory"));
    // collision: two different barycentric points with the same image
    Vec a = q({"1/2", "0", "0", "1/2"});
    Vec b = q({"0", "1/2", "1/2", "0"});
    CHECK(compress_g(t, a) == q({"1/2", "1/2"}));
    CHECK(compress_g(t, b) == q({"1/2", "1/2"}));
    // vertices map to their own generalized coordinates
    CHECK(compress_g(t, q({"1", "0", "0", "0"})) == q({"0", "0"}));
    CHECK(compress_g(t, q({"0", "0", "0", "1"})) == q({"1", "1"}));
    CHECK_THROWS(compress_g(t, q({"1", "0"})));
}

TEST_CASE("g-type distributions are the product lifts") {
    Theory t = load_theory(fixture("square_symmetric.theory"));
    auto model = ontic_distributions_g(t);
    CHECK(model.ontic_names ==
          std::vector<std::string>{"l1", "l2", "l3", "l4"});
    CHECK(model.state_distributions.at("X+") == q({"1/2", "1/2", "0", "0"}));
    CHECK(model.state_distributions.at("X-") == q({"0", "0", "1/2", "1/2"}));
    CHECK(model.state_distributions.at("Z+") == q({"1/2", "0", "1/2", "0"}));
    CHECK(model.state_distributions.at("Z-") == q({"0", "1/2", "0", "1/2"}));
    CHECK(verify_ontic_model(t, model).empty());
}

TEST_CASE("g-type distributions for the six-state theory") {
    Theory t = load_theory(fixture("spekkens.theory"));
    auto model = ontic_distributions_g(t);
    CHECK(model.state_distributions.at("X+") ==
          q({"1/4", "1/4", "1/4", "1/4", "0", "0", "0", "0"}));
    CHECK(model.state_distributions.at("Y-") ==
          q({"0", "0", "1/4", "1/4", "0", "0", "1/4", "1/4"}));
    CHECK(model.state_distributions.at("Z+") ==
          q({"1/4", "0", "1/4", "0", "1/4", "0", "1/4", "0"}));
    CHECK(verify_ontic_model(t, model).empty());
}

TEST_CASE("g-type distributions for the modified six-state theory") {
    Theory t = load_theory(fixture("spekkens_modified.theory"));
    auto model = ontic_distributions_g(t);
    CHECK(model.state_distributions.at("Z+") ==
          q({"1/6", "0", "1/6", "0", "1/3", "0", "1/3", "0"}));
    CHECK(model.state_distributions.at("Z-") ==
          q({"0", "1/6", "0", "1/6", "0", "1/3", "0", "1/3"}));
}

TEST_CASE("correspondence-derived distributions match the product lift") {
    GditTheory g = build_gdit(2, 2);
    auto c = corresponding_regular_theory(g, symmetric_disturbance(g));
    auto from_rules = ontic_distributions_g(c);
    auto lifted = ontic_distributions_g(c.regular);
    for (const auto& [name, mu] : lifted.state_distributions)
        CHECK(from_rules.state_distributions.at(name) == mu);
}

TEST_CASE("s-type model from the ontology section") {
    Theory t = load_theory(fixture("spekkens.theory"));
    REQUIRE(t.ontology.has_value());
    auto model = ontic_distributions_s(t, *t.ontology);
    CHECK(model.ontic_names == std::vector<std::string>{"v1", "v2", "v3", "v4"});
    CHECK(model.state_distributions.at("X+") == q({"1/2", "1/2", "0", "0"}));
    CHECK(model.state_distributions.at("Z-") == q({"0", "1/2", "1/2", "0"}));
    CHECK(verify_ontic_model(t, model).empty());

    // a broken decomposition is rejected
    OntologySpec bad = *t.ontology;
    bad.decompositions["X+"] = {{"v1", Rational(1)}};
    CHECK_THROWS_WITH_AS(ontic_distributions_s(t, bad), doctest::Contains("reproduce"),
                         std::invalid_argument);
}

TEST_CASE("the inverter exists for the g-type six-state model") {
    Theory t = load_theory(fixture("spekkens.theory"));
    auto model = ontic_distributions_g(t);
    std::map<std::string, std::string> inverter = {{"X+", "X-"}, {"X-", "X+"}, {"Y+", "Y-"},
                                                   {"Y-", "Y+"}, {"Z+", "Z-"}, {"Z-", "Z+"}};
    auto res = find_ontic_permutation(model, inverter);
    REQUIRE(res.found);
    // full reversal: l_k <-> l_{9-k}
    CHECK(res.permutation == std::vector<int>{7, 6, 5, 4, 3, 2, 1, 0});
}

TEST_CASE("the inverter does not exist for the s-type six-state model") {
    Theory t = load_theory(fixture("spekkens.theory"));
    auto model = ontic_distributions_s(t, *t.ontology);
    std::map<std::string, std::string> inverter = {{"X+", "X-"}, {"X-", "X+"}, {"Y+", "Y-"},
                                                   {"Y-", "Y+"}, {"Z+", "Z-"}, {"Z-", "Z+"}};
    CHECK(!find_ontic_permutation(model, inverter).found);
}

TEST_CASE("the inverter does not exist for the modified six-state theory") {
    Theory t = load_theory(fixture("spekkens_modified.theory"));
    auto model = ontic_distributions_g(t);
    std::map<std::string, std::string> inverter = {{"X+", "X-"}, {"X-", "X+"}, {"Y+", "Y-"},
                                                   {"Y-", "Y+"}, {"Z+", "Z-"}, {"Z-", "Z+"}};
    CHECK(!find_ontic_permutation(model, inverter).found);
}

TEST_CASE("identity maps always have the identity permutation") {
    Theory t = load_theory(fixture("square_symmetric.theory"));
    auto model = ontic_distributions_g(t);
    std::map<std::string, std::string> identity;
    for (const auto& s : t.pure_states) identity[s.name] = s.name;
    auto res = find_ontic_permutation(model, identity);
    REQUIRE(res.found);
    CHECK(res.permutation == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("preparation contextuality of equal mixtures") {
    Theory sq = load_theory(fixture("square_symmetric.theory"));
    auto model = ontic_distributions_g(sq);
    Mixture mx, mz;
    mx.weights["X+"] = mx.weights["X-"] = Rational(1, 2);
    mz.weights["Z+"] = mz.weights["Z-"] = Rational(1, 2);
    auto res = prep_contextuality_witness(sq, model, mx, mz);
    CHECK(!res.witness);
    CHECK(res.distribution_a == q({"1/4", "1/4", "1/4", "1/4"}));
    CHECK(res.distribution_b == res.distribution_a);
}

TEST_CASE("rotated pairs witness preparation contextuality") {
    Theory t = load_theory(fixture("rotated.theory"));
    auto model = ontic_distributions_g(t);
    Mixture y1, y2;
    y1.weights["Y1+"] = y1.weights["Y1-"] = Rational(1, 2);
    y2.weights["Y2+"] = y2.weights["Y2-"] = Rational(1, 2);
    auto res = prep_contextuality_witness(t, model, y1, y2);
    CHECK(res.witness);
    // 1/4 (1+xi, 1-xi, 1-xi, 1+xi) with xi = 12/25 and 60/169
    CHECK(res.distribution_a == q({"37/100", "13/100", "13/100", "37/100"}));
    CHECK(res.distribution_b == q({"229/676", "109/676", "109/676", "229/676"}));

    Mixture mx;
    mx.weights["X+"] = mx.weights["X-"] = Rational(1, 2);
    auto against_x = prep_contextuality_witness(t, model, y1, mx);
    CHECK(against_x.witness);

    // operationally different mixtures are rejected outright
    Mixture skew;
    skew.weights["X+"] = Rational(1);
    CHECK_THROWS(prep_contextuality_witness(t, model, y1, skew));
}

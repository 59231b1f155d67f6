#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gptk/geometry.hpp"
#include "gptk/theory.hpp"

#include "util.hpp"

#include <random>

using namespace gptk;

namespace {

// Independent feasibility oracle: Fourier-Motzkin elimination over the
// inequality form coeff.x >= rhs (equalities become two inequalities).
// Exponential, fine for <= 6 variables.
bool fm_feasible(const ConstraintSystem& cs) {
    std::vector<std::pair<Vec, Rational>> rows;
    for (const auto& [c, r] : cs.inequalities) rows.emplace_back(c, r);
    for (const auto& [c, r] : cs.equalities) {
        rows.emplace_back(c, r);
        Vec neg(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
        rows.emplace_back(neg, -r);
    }
    std::size_t nvars = cs.variables.size();
    for (std::size_t k = 0; k < nvars; ++k) {
        std::vector<std::pair<Vec, Rational>> pos, neg, zero;
        for (auto& row : rows) {
            if (row.first[k] > 0)
                pos.push_back(row);
            else if (row.first[k] < 0)
                neg.push_back(row);
            else
                zero.push_back(row);
        }
        rows = zero;
        for (const auto& [cp, rp] : pos)
            for (const auto& [cn, rn] : neg) {
                // scale both to coefficient +-1 at k and add
                Vec combined(nvars, Rational(0));
                Rational sp = cp[k], sn = -cn[k];
                for (std::size_t i = 0; i < nvars; ++i)
                    combined[i] = cp[i] / sp + cn[i] / sn;
                rows.emplace_back(combined, rp / sp + rn / sn);
            }
    }
    for (const auto& [c, r] : rows)
        if (r > 0) return false;
    return true;
}

ConstraintSystem random_system(std::mt19937_64& gen, int nvars, int neq, int nineq) {
    ConstraintSystem cs;
    for (int i = 0; i < nvars; ++i) cs.variables.push_back("x" + std::to_string(i));
    auto coeff = [&] {
        Vec c;
        for (int i = 0; i < nvars; ++i)
            c.push_back(Rational(static_cast<long>(gen() % 7) - 3, 1 + static_cast<long>(gen() % 3)));
        return c;
    };
    auto rhs = [&] { return Rational(static_cast<long>(gen() % 9) - 4, 1 + static_cast<long>(gen() % 3)); };
    for (int i = 0; i < neq; ++i) cs.add_equality(coeff(), rhs());
    for (int i = 0; i < nineq; ++i) cs.add_inequality(coeff(), rhs());
    return cs;
}

}  // namespace

TEST_CASE("feasibility agrees with the elimination oracle") {
    std::mt19937_64 gen(42);
    int feasible_count = 0, infeasible_count = 0;
    for (int trial = 0; trial < 150; ++trial) {
        int nvars = 1 + static_cast<int>(gen() % 4);
        ConstraintSystem cs = random_system(gen, nvars, static_cast<int>(gen() % 3),
                                            1 + static_cast<int>(gen() % 5));
        bool oracle = fm_feasible(cs);
        auto res = feasible(cs);
        REQUIRE(res.feasible == oracle);
        if (res.feasible) {
            ++feasible_count;
            CHECK(verify_assignment(cs, res.assignment));
        } else {
            ++infeasible_count;
            CHECK(verify_farkas(cs, res.certificate));
        }
    }
    // both branches must actually be exercised
    CHECK(feasible_count > 10);
    CHECK(infeasible_count > 10);
}

TEST_CASE("exact maximization") {
    ConstraintSystem cs;
    cs.variables = {"x", "y"};
    cs.add_inequality({Rational(1), Rational(0)}, Rational(0));
    cs.add_inequality({Rational(0), Rational(1)}, Rational(0));
    cs.add_inequality({Rational(-1), Rational(-2)}, Rational(-1));  // x + 2y <= 1
    cs.add_inequality({Rational(-3), Rational(-1)}, Rational(-2));  // 3x + y <= 2

    auto res = maximize(cs, {Rational(1), Rational(1)});
    CHECK(res.value == Rational(4, 5));  // x = 3/5, y = 1/5
    CHECK(res.argmax == Vec{Rational(3, 5), Rational(1, 5)});

    SUBCASE("unbounded objective throws") {
        ConstraintSystem open;
        open.variables = {"x"};
        open.add_inequality({Rational(1)}, Rational(0));
        CHECK_THROWS(maximize(open, {Rational(1)}));
    }
    SUBCASE("infeasible system throws") {
        cs.add_inequality({Rational(1), Rational(1)}, Rational(5));
        CHECK_THROWS(maximize(cs, {Rational(1), Rational(1)}));
    }
}

TEST_CASE("simplex recognition") {
    std::vector<Vec> triangle = {{Rational(0), Rational(0)},
                                 {Rational(1), Rational(0)},
                                 {Rational(0), Rational(1)}};
    CHECK(is_simplex(triangle));
    triangle.push_back({Rational(1), Rational(1)});
    CHECK(!is_simplex(triangle));

    Theory sq = load_theory(fixture("square_symmetric.theory"));
    std::vector<Vec> pts;
    for (const auto& s : sq.pure_states) pts.push_back(sq.point(s));
    CHECK(!is_simplex(pts));

    Theory cl = load_theory(fixture("classical_xz.theory"));
    pts.clear();
    for (const auto& s : cl.pure_states) pts.push_back(cl.point(s));
    CHECK(is_simplex(pts));
}

TEST_CASE("affine dependencies of the square theories") {
    for (const char* name : {"square_symmetric.theory", "square_asymmetric.theory"}) {
        Theory t = load_theory(fixture(name));
        std::vector<std::string> names;
        std::vector<Vec> pts;
        for (const auto& s : t.pure_states) {
            names.push_back(s.name);
            pts.push_back(t.point(s));
        }
        auto deps = nonsimpliciality_conditions(names, pts);
        REQUIRE(deps.size() == 1);
        // the single condition is 1/2(X+ + X-) = 1/2(Z+ + Z-) up to side swap
        Mixture x, z;
        x.weights["X+"] = x.weights["X-"] = Rational(1, 2);
        z.weights["Z+"] = z.weights["Z-"] = Rational(1, 2);
        bool direct = deps[0].left == x && deps[0].right == z;
        bool swapped = deps[0].left == z && deps[0].right == x;
        CHECK((direct || swapped));
        CHECK(mix_point(t, deps[0].left) == mix_point(t, deps[0].right));
    }
}

TEST_CASE("spekkens dependency space has dimension three") {
    Theory t = load_theory(fixture("spekkens.theory"));
    std::vector<std::string> names;
    std::vector<Vec> pts;
    for (const auto& s : t.pure_states) {
        names.push_back(s.name);
        pts.push_back(t.point(s));
    }
    auto deps = nonsimpliciality_conditions(names, pts);
    // 6 states, affine dimension 3: kernel dimension 2... X/Y, X/Z pair mixtures
    CHECK(deps.size() == 2);
    for (const auto& d : deps) CHECK(mix_point(t, d.left) == mix_point(t, d.right));
}

TEST_CASE("dependencies found are always real, none missed") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 60; ++trial) {
        int dim = 2 + static_cast<int>(gen() % 3);
        int count = 2 + static_cast<int>(gen() % 4);
        std::vector<std::string> names;
        std::vector<Vec> pts;
        for (int i = 0; i < count; ++i) {
            names.push_back("p" + std::to_string(i));
            Vec v;
            for (int k = 0; k < dim; ++k)
                v.push_back(Rational(static_cast<long>(gen() % 5), 1 + static_cast<long>(gen() % 4)));
            pts.push_back(v);
        }
        auto deps = nonsimpliciality_conditions(names, pts);
        CHECK(deps.empty() == is_simplex(pts));
        for (const auto& d : deps) {
            // evaluate both mixtures directly on the raw points
            Vec l(static_cast<std::size_t>(dim), Rational(0)), r = l;
            Rational lw = 0, rw = 0;
            for (const auto& [n, w] : d.left.weights) {
                lw += w;
                for (int k = 0; k < dim; ++k)
                    l[static_cast<std::size_t>(k)] +=
                        w * pts[static_cast<std::size_t>(std::stoi(n.substr(1)))]
                           [static_cast<std::size_t>(k)];
            }
            for (const auto& [n, w] : d.right.weights) {
                rw += w;
                for (int k = 0; k < dim; ++k)
                    r[static_cast<std::size_t>(k)] +=
                        w * pts[static_cast<std::size_t>(std::stoi(n.substr(1)))]
                           [static_cast<std::size_t>(k)];
            }
            CHECK(lw == 1);
            CHECK(rw == 1);
            CHECK(l == r);
        }
    }
}

TEST_CASE("hull membership with certificates") {
    std::vector<std::string> names = {"a", "b", "c"};
    std::vector<Vec> pts = {{Rational(0), Rational(0)},
                            {Rational(1), Rational(0)},
                            {Rational(0), Rational(1)}};

    auto inside = hull_membership(names, pts, {Rational(1, 4), Rational(1, 4)});
    REQUIRE(inside.inside);
    Vec recon(2, Rational(0));
    Rational total = 0;
    for (const auto& [n, w] : inside.witness.weights) {
        total += w;
        std::size_t i = static_cast<std::size_t>(n == "a" ? 0 : n == "b" ? 1 : 2);
        for (std::size_t k = 0; k < 2; ++k) recon[k] += w * pts[i][k];
    }
    CHECK(total == 1);
    CHECK(recon == Vec{Rational(1, 4), Rational(1, 4)});

    auto outside = hull_membership(names, pts, {Rational(1), Rational(1)});
    REQUIRE(!outside.inside);
    // separating functional: positive at the query, <= 0 on every hull point
    CHECK(outside.offset + dot(outside.functional, {Rational(1), Rational(1)}) > 0);
    for (const auto& p : pts) CHECK(outside.offset + dot(outside.functional, p) <= 0);
}

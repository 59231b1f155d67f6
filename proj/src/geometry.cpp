#include "gptk/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gptk {

int ConstraintSystem::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown variable: " + name);
}

void ConstraintSystem::add_equality(const Vec& coeff, const Rational& rhs) {
    if (coeff.size() != variables.size())
        throw std::invalid_argument("equality coefficient length mismatch");
    equalities.emplace_back(coeff, rhs);
}

void ConstraintSystem::add_inequality(const Vec& coeff, const Rational& rhs) {
    if (coeff.size() != variables.size())
        throw std::invalid_argument("inequality coefficient length mismatch");
    inequalities.emplace_back(coeff, rhs);
}

namespace {

// Dense phase-1/phase-2 simplex over exact rationals. Inequality rows of
// the shape c*x_k >= 0 (c > 0) are absorbed as nonnegativity of x_k, so
// that variable keeps a single column; remaining free variables are split
// x = u - v. Every kept inequality coeff.x >= rhs gets a surplus variable;
// rows are sign-flipped to a nonnegative right hand side. A row whose
// surplus enters with coefficient +1 starts slack-basic, every other row
// starts on its artificial. All rows carry an artificial column so the
// dual multipliers can be read off B^{-1} afterwards.
struct SimplexTableau {
    std::size_t nvars = 0;  // original variables
    std::vector<std::size_t> pos_col;
    std::vector<long> neg_col;     // -1 when the variable is nonnegative
    std::vector<long> marker_row;  // absorbed nonnegativity inequality per variable
    std::vector<Rational> marker_coeff;
    std::vector<std::size_t> kept_ineq;  // original indices of kept inequalities
    std::size_t var_cols = 0;
    std::size_t first_art = 0;
    std::size_t nrows = 0;  // equalities + kept inequalities
    std::size_t ncols = 0;
    std::vector<Vec> rows;  // nrows x (ncols + 1), last column = b
    std::vector<int> basis;
    std::vector<int> row_sign;  // +1 or -1 applied to the original row

    std::size_t scol(std::size_t j) const { return var_cols + j; }
    std::size_t acol(std::size_t r) const { return first_art + r; }

    explicit SimplexTableau(const ConstraintSystem& cs) {
        nvars = cs.variables.size();
        marker_row.assign(nvars, -1);
        marker_coeff.assign(nvars, Rational(0));
        std::vector<char> absorbed(cs.inequalities.size(), 0);
        for (std::size_t j = 0; j < cs.inequalities.size(); ++j) {
            const auto& [coeff, rhs] = cs.inequalities[j];
            if (rhs != 0) continue;
            long nz = -1;
            bool single = true;
            for (std::size_t k = 0; k < nvars; ++k)
                if (coeff[k] != 0) {
                    if (nz >= 0) single = false;
                    nz = static_cast<long>(k);
                }
            if (!single || nz < 0 || coeff[static_cast<std::size_t>(nz)] <= 0) continue;
            absorbed[j] = 1;
            if (marker_row[static_cast<std::size_t>(nz)] < 0) {
                marker_row[static_cast<std::size_t>(nz)] = static_cast<long>(j);
                marker_coeff[static_cast<std::size_t>(nz)] =
                    coeff[static_cast<std::size_t>(nz)];
            }
        }
        pos_col.assign(nvars, 0);
        neg_col.assign(nvars, -1);
        std::size_t c = 0;
        for (std::size_t k = 0; k < nvars; ++k) {
            pos_col[k] = c++;
            if (marker_row[k] < 0) neg_col[k] = static_cast<long>(c++);
        }
        var_cols = c;
        for (std::size_t j = 0; j < cs.inequalities.size(); ++j)
            if (!absorbed[j]) kept_ineq.push_back(j);
        nrows = cs.equalities.size() + kept_ineq.size();
        first_art = var_cols + kept_ineq.size();
        ncols = first_art + nrows;
        rows.assign(nrows, Vec(ncols + 1, Rational(0)));
        basis.assign(nrows, 0);
        row_sign.assign(nrows, 1);
        std::size_t r = 0;
        auto fill = [&](const Vec& coeff, const Rational& rhs, long slack) {
            int sign = rhs < 0 ? -1 : 1;
            row_sign[r] = sign;
            for (std::size_t k = 0; k < nvars; ++k) {
                rows[r][pos_col[k]] = sign * coeff[k];
                if (neg_col[k] >= 0)
                    rows[r][static_cast<std::size_t>(neg_col[k])] = -sign * coeff[k];
            }
            if (slack >= 0) rows[r][scol(static_cast<std::size_t>(slack))] = Rational(-sign);
            rows[r][acol(r)] = 1;
            rows[r][ncols] = sign * rhs;
            basis[r] = slack >= 0 && sign < 0
                           ? static_cast<int>(scol(static_cast<std::size_t>(slack)))
                           : static_cast<int>(acol(r));
            ++r;
        };
        for (const auto& [coeff, rhs] : cs.equalities) fill(coeff, rhs, -1);
        for (std::size_t j = 0; j < kept_ineq.size(); ++j)
            fill(cs.inequalities[kept_ineq[j]].first, cs.inequalities[kept_ineq[j]].second,
                 static_cast<long>(j));
    }

    void pivot(std::size_t pr, std::size_t pc) {
        Rational p = rows[pr][pc];
        for (auto& x : rows[pr]) x /= p;
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == pr) continue;
            Rational f = rows[r][pc];
            if (f == 0) continue;
            for (std::size_t c = 0; c <= ncols; ++c) rows[r][c] -= f * rows[pr][c];
        }
        basis[pr] = static_cast<int>(pc);
    }

    // Minimizes cost.x over the tableau; entering columns with
    // allow(col) == false are skipped. Returns false if unbounded.
    // Dantzig's rule while the objective moves, Bland's rule during
    // degenerate stretches to guarantee termination.
    template <typename Allow>
    bool run(const Vec& cost, Allow allow) {
        Vec red(ncols, Rational(0));  // maintained reduced-cost row
        for (std::size_t j = 0; j < ncols; ++j) {
            Rational z = cost[j];
            for (std::size_t r = 0; r < nrows; ++r) {
                const Rational& cb = cost[static_cast<std::size_t>(basis[r])];
                if (cb != 0) z -= cb * rows[r][j];
            }
            red[j] = z;
        }
        int stalled = 0;
        for (;;) {
            long chosen = -1;
            if (stalled < 64) {
                for (std::size_t j = 0; j < ncols; ++j)
                    if (allow(j) && red[j] < 0 &&
                        (chosen < 0 || red[j] < red[static_cast<std::size_t>(chosen)]))
                        chosen = static_cast<long>(j);
            } else {
                for (std::size_t j = 0; j < ncols; ++j)
                    if (allow(j) && red[j] < 0) {
                        chosen = static_cast<long>(j);
                        break;
                    }
            }
            if (chosen < 0) return true;
            std::size_t pc = static_cast<std::size_t>(chosen);
            long pr = -1;
            Rational best;
            for (std::size_t r = 0; r < nrows; ++r) {
                if (rows[r][pc] <= 0) continue;
                Rational ratio = rows[r][ncols] / rows[r][pc];
                if (pr < 0 || ratio < best ||
                    (ratio == best && basis[r] < basis[static_cast<std::size_t>(pr)])) {
                    pr = static_cast<long>(r);
                    best = ratio;
                }
            }
            if (pr < 0) return false;
            stalled = best == 0 ? stalled + 1 : 0;
            pivot(static_cast<std::size_t>(pr), pc);
            Rational f = red[pc];
            if (f != 0)
                for (std::size_t j = 0; j < ncols; ++j)
                    red[j] -= f * rows[static_cast<std::size_t>(pr)][j];
        }
    }

    Rational basic_value(std::size_t col) const {
        for (std::size_t r = 0; r < nrows; ++r)
            if (basis[r] == static_cast<int>(col)) return rows[r][ncols];
        return Rational(0);
    }

    Vec solution() const {
        Vec x(nvars, Rational(0));
        for (std::size_t k = 0; k < nvars; ++k) {
            x[k] = basic_value(pos_col[k]);
            if (neg_col[k] >= 0) x[k] -= basic_value(static_cast<std::size_t>(neg_col[k]));
        }
        return x;
    }
};

}  // namespace

FeasibleResult feasible(const ConstraintSystem& cs) {
    FeasibleResult out;
    SimplexTableau tab(cs);
    Vec cost(tab.ncols, Rational(0));
    for (std::size_t r = 0; r < tab.nrows; ++r) cost[tab.acol(r)] = 1;
    std::size_t first_art = tab.first_art;
    tab.run(cost, [first_art](std::size_t j) { return j < first_art; });
    Rational z = 0;
    for (std::size_t r = 0; r < tab.nrows; ++r)
        if (cost[static_cast<std::size_t>(tab.basis[r])] != 0) z += tab.rows[r][tab.ncols];
    if (z == 0) {
        out.feasible = true;
        out.assignment = tab.solution();
        return out;
    }
    // Dual multipliers y = c_B B^{-1}, read off the artificial columns
    // (which hold B^{-1}); λ_r = row_sign[r] * y_r maps back to the
    // original, un-flipped constraints.
    std::size_t ne = cs.equalities.size();
    out.certificate.eq_multipliers.assign(ne, Rational(0));
    out.certificate.ineq_multipliers.assign(cs.inequalities.size(), Rational(0));
    for (std::size_t i = 0; i < tab.nrows; ++i) {
        Rational y = 0;
        for (std::size_t r = 0; r < tab.nrows; ++r)
            if (cost[static_cast<std::size_t>(tab.basis[r])] != 0)
                y += tab.rows[r][tab.acol(i)];
        Rational lambda = tab.row_sign[i] * y;
        if (i < ne)
            out.certificate.eq_multipliers[i] = lambda;
        else
            out.certificate.ineq_multipliers[tab.kept_ineq[i - ne]] = lambda;
    }
    // Multipliers for the absorbed nonnegativity rows cancel whatever the
    // combination leaves on their variables; phase-1 optimality makes the
    // leftover nonpositive there, so these multipliers are nonnegative.
    Vec combo(cs.variables.size(), Rational(0));
    for (std::size_t i = 0; i < ne; ++i)
        for (std::size_t k = 0; k < combo.size(); ++k)
            combo[k] += out.certificate.eq_multipliers[i] * cs.equalities[i].first[k];
    for (std::size_t j : tab.kept_ineq)
        for (std::size_t k = 0; k < combo.size(); ++k)
            combo[k] += out.certificate.ineq_multipliers[j] * cs.inequalities[j].first[k];
    for (std::size_t k = 0; k < combo.size(); ++k)
        if (tab.marker_row[k] >= 0 && combo[k] != 0)
            out.certificate.ineq_multipliers[static_cast<std::size_t>(tab.marker_row[k])] =
                -combo[k] / tab.marker_coeff[k];
    out.feasible = false;
    return out;
}

bool verify_farkas(const ConstraintSystem& cs, const FarkasCertificate& c) {
    if (c.eq_multipliers.size() != cs.equalities.size() ||
        c.ineq_multipliers.size() != cs.inequalities.size())
        return false;
    for (const auto& m : c.ineq_multipliers)
        if (m < 0) return false;
    Vec combo(cs.variables.size(), Rational(0));
    Rational rhs = 0;
    for (std::size_t i = 0; i < cs.equalities.size(); ++i) {
        for (std::size_t k = 0; k < combo.size(); ++k)
            combo[k] += c.eq_multipliers[i] * cs.equalities[i].first[k];
        rhs += c.eq_multipliers[i] * cs.equalities[i].second;
    }
    for (std::size_t j = 0; j < cs.inequalities.size(); ++j) {
        for (std::size_t k = 0; k < combo.size(); ++k)
            combo[k] += c.ineq_multipliers[j] * cs.inequalities[j].first[k];
        rhs += c.ineq_multipliers[j] * cs.inequalities[j].second;
    }
    for (const auto& x : combo)
        if (x != 0) return false;
    return rhs > 0;
}

bool verify_assignment(const ConstraintSystem& cs, const Vec& x) {
    if (x.size() != cs.variables.size()) return false;
    for (const auto& [coeff, rhs] : cs.equalities)
        if (dot(coeff, x) != rhs) return false;
    for (const auto& [coeff, rhs] : cs.inequalities)
        if (dot(coeff, x) < rhs) return false;
    return true;
}

OptimumResult maximize(const ConstraintSystem& cs, const Vec& objective) {
    if (objective.size() != cs.variables.size())
        throw std::invalid_argument("objective length mismatch");
    SimplexTableau tab(cs);
    Vec cost1(tab.ncols, Rational(0));
    for (std::size_t r = 0; r < tab.nrows; ++r) cost1[tab.acol(r)] = 1;
    std::size_t art0 = tab.first_art;
    tab.run(cost1, [art0](std::size_t j) { return j < art0; });
    Rational z = 0;
    for (std::size_t r = 0; r < tab.nrows; ++r)
        if (cost1[static_cast<std::size_t>(tab.basis[r])] != 0) z += tab.rows[r][tab.ncols];
    if (z != 0) throw std::invalid_argument("maximize: infeasible system");
    // Drive remaining basic artificials out where the row allows it.
    for (std::size_t r = 0; r < tab.nrows; ++r) {
        if (static_cast<std::size_t>(tab.basis[r]) < art0) continue;
        for (std::size_t j = 0; j < art0; ++j)
            if (tab.rows[r][j] != 0) {
                tab.pivot(r, j);
                break;
            }
    }
    Vec cost2(tab.ncols, Rational(0));
    for (std::size_t k = 0; k < tab.nvars; ++k) {
        cost2[tab.pos_col[k]] = -objective[k];
        if (tab.neg_col[k] >= 0)
            cost2[static_cast<std::size_t>(tab.neg_col[k])] = objective[k];
    }
    bool bounded = tab.run(cost2, [&](std::size_t j) { return j < art0; });
    if (!bounded) throw std::invalid_argument("maximize: unbounded objective");
    OptimumResult out;
    out.argmax = tab.solution();
    out.value = dot(objective, out.argmax);
    return out;
}

namespace {

// Row-reduces m in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(std::vector<Vec>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[sel], m[row]);
        Rational p = m[row][col];
        for (auto& x : m[row]) x /= p;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row) continue;
            Rational f = m[r][col];
            if (f == 0) continue;
            for (std::size_t c = 0; c < cols; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

bool is_simplex(const std::vector<Vec>& points) {
    if (points.empty()) throw std::invalid_argument("is_simplex: no points");
    if (points.size() == 1) return true;
    std::vector<Vec> diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].size() != points[0].size())
            throw std::invalid_argument("is_simplex: point length mismatch");
        Vec d(points[0].size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = points[i][k] - points[0][k];
        diffs.push_back(std::move(d));
    }
    return rref(diffs).size() == points.size() - 1;
}

std::vector<AffineDependency> nonsimpliciality_conditions(
    const std::vector<std::string>& names, const std::vector<Vec>& points) {
    if (names.size() != points.size())
        throw std::invalid_argument("nonsimpliciality_conditions: name/point count mismatch");
    if (points.size() < 2) return {};
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });

    // Kernel of the matrix whose columns are (1, point); kernel vectors c
    // satisfy sum(c) = 0 and sum(c_i * point_i) = 0.
    std::size_t dim = points[0].size();
    std::vector<Vec> m(dim + 1, Vec(points.size(), Rational(0)));
    for (std::size_t j = 0; j < points.size(); ++j) {
        m[0][j] = 1;
        for (std::size_t k = 0; k < dim; ++k) m[k + 1][j] = points[order[j]][k];
    }
    auto pivots = rref(m);
    std::vector<AffineDependency> out;
    std::size_t next_pivot = 0;
    for (std::size_t col = 0; col < points.size(); ++col) {
        if (next_pivot < pivots.size() && pivots[next_pivot] == col) {
            ++next_pivot;
            continue;
        }
        Vec c(points.size(), Rational(0));
        c[col] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) c[pivots[pr]] = -m[pr][col];
        Rational pos = 0;
        for (const auto& x : c)
            if (x > 0) pos += x;
        AffineDependency dep;
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (c[j] > 0) dep.left.weights[names[order[j]]] += c[j] / pos;
            if (c[j] < 0) dep.right.weights[names[order[j]]] += -c[j] / pos;
        }
        out.push_back(std::move(dep));
    }
    return out;
}

HullResult hull_membership(const std::vector<std::string>& names,
                           const std::vector<Vec>& points, const Vec& query) {
    if (names.size() != points.size())
        throw std::invalid_argument("hull_membership: name/point count mismatch");
    ConstraintSystem cs;
    cs.variables = names;
    Vec ones(points.size(), Rational(1));
    cs.add_equality(ones, 1);
    for (std::size_t k = 0; k < query.size(); ++k) {
        Vec row(points.size());
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (points[j].size() != query.size())
                throw std::invalid_argument("hull_membership: point length mismatch");
            row[j] = points[j][k];
        }
        cs.add_equality(row, query[k]);
    }
    for (std::size_t j = 0; j < points.size(); ++j) {
        Vec row(points.size(), Rational(0));
        row[j] = 1;
        cs.add_inequality(row, 0);
    }
    auto res = feasible(cs);
    HullResult out;
    if (res.feasible) {
        out.inside = true;
        for (std::size_t j = 0; j < points.size(); ++j)
            if (res.assignment[j] != 0) out.witness.weights[names[j]] = res.assignment[j];
        return out;
    }
    // The equality multipliers form an affine functional F(x) = offset +
    // normal.x with F(query) > 0 and F(point_j) = -mu_j <= 0.
    out.inside = false;
    out.offset = res.certificate.eq_multipliers[0];
    out.functional.assign(res.certificate.eq_multipliers.begin() + 1,
                          res.certificate.eq_multipliers.end());
    return out;
}

}  // namespace gptk

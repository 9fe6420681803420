#include "bfc/lp.hpp"

#include <algorithm>
#include <cmath>

#include "bfc/error.hpp"
#include "bfc/linalg.hpp"

namespace bfc {

void LpProblem::add(std::vector<double> coefficients, Relation relation, double bound) {
    constraints.push_back({std::move(coefficients), relation, bound});
}

void LpProblem::validate() const {
    const auto n = variables();
    if (lower.size() != n || upper.size() != n) throw PreconditionError("LP bound vectors do not match variable count");
    for (std::size_t k = 0; k < constraints.size(); ++k)
        if (constraints[k].coefficients.size() != n)
            throw PreconditionError("LP row " + std::to_string(k) + " has width " +
                                    std::to_string(constraints[k].coefficients.size()) + ", expected " +
                                    std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
        if (lower[j] > upper[j]) throw PreconditionError("LP variable " + std::to_string(j) + " has lower > upper");
}

std::string to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

// Original variable j maps to offset + sum(sign * column value).
struct VariableMap {
    double offset = 0.0;
    std::vector<std::pair<std::size_t, double>> columns;
};

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    double rhs(std::size_t r) const { return at(r, cols_); }
    // Row `rows_` holds reduced costs; its rhs slot holds minus the objective.
    double& cost(std::size_t c) { return at(rows_, c); }

    void pivot(std::size_t pr, std::size_t pc) {
        const double p = at(pr, pc);
        for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == pr) continue;
            const double factor = at(r, pc);
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
            at(r, pc) = 0.0;
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

struct Standard {
    std::size_t rows = 0;
    std::size_t structural = 0;  // columns before slacks
    std::size_t total_cols = 0;
    std::vector<VariableMap> vars;
    std::vector<double> sign;          // row multiplier applied to make rhs >= 0
    std::vector<std::size_t> initial;  // initial basic column per row (slack or artificial)
    std::vector<bool> artificial;      // per column
    std::size_t original_rows = 0;
};

}  // namespace

LpResult solve_lp(const LpProblem& problem, const LpOptions& options) {
    problem.validate();
    const std::size_t n = problem.variables();

    Standard sf;
    sf.vars.resize(n);
    std::vector<std::pair<std::size_t, double>> bound_rows;  // (column, upper - lower)
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = problem.lower[j];
        const double hi = problem.upper[j];
        auto& vm = sf.vars[j];
        if (std::isfinite(lo)) {
            vm.offset = lo;
            vm.columns.push_back({col, 1.0});
            if (std::isfinite(hi)) bound_rows.push_back({col, hi - lo});
            ++col;
        } else if (std::isfinite(hi)) {
            vm.offset = hi;
            vm.columns.push_back({col++, -1.0});
        } else {
            vm.columns.push_back({col++, 1.0});
            vm.columns.push_back({col++, -1.0});
        }
    }
    sf.structural = col;
    sf.original_rows = problem.constraints.size();
    sf.rows = sf.original_rows + bound_rows.size();

    // Dense rows over structural columns, with relation and rhs.
    struct Row {
        std::vector<double> a;
        Relation rel;
        double b;
    };
    std::vector<Row> rows;
    rows.reserve(sf.rows);
    for (const auto& c : problem.constraints) {
        Row r{std::vector<double>(sf.structural, 0.0), c.relation, c.bound};
        for (std::size_t j = 0; j < n; ++j) {
            const double a = c.coefficients[j];
            if (a == 0.0) continue;
            r.b -= a * sf.vars[j].offset;
            for (auto [cidx, s] : sf.vars[j].columns) r.a[cidx] += a * s;
        }
        rows.push_back(std::move(r));
    }
    for (auto [cidx, width] : bound_rows) {
        Row r{std::vector<double>(sf.structural, 0.0), Relation::LessEqual, width};
        r.a[cidx] = 1.0;
        rows.push_back(std::move(r));
    }

    // Slack columns, then artificials where the slack cannot start basic.
    std::size_t slack_count = 0;
    for (const auto& r : rows)
        if (r.rel != Relation::Equal) ++slack_count;
    sf.sign.assign(sf.rows, 1.0);
    std::vector<std::size_t> slack_col(sf.rows, SIZE_MAX);
    std::size_t next = sf.structural;
    for (std::size_t i = 0; i < sf.rows; ++i)
        if (rows[i].rel != Relation::Equal) slack_col[i] = next++;
    std::vector<bool> needs_artificial(sf.rows, true);
    for (std::size_t i = 0; i < sf.rows; ++i) {
        if (rows[i].b < 0) sf.sign[i] = -1.0;
        const double slack_coef = rows[i].rel == Relation::LessEqual ? 1.0 : -1.0;
        if (rows[i].rel != Relation::Equal && slack_coef * sf.sign[i] > 0) needs_artificial[i] = false;
    }
    std::size_t art_count = static_cast<std::size_t>(std::count(needs_artificial.begin(), needs_artificial.end(), true));
    sf.total_cols = sf.structural + slack_count + art_count;
    sf.artificial.assign(sf.total_cols, false);
    sf.initial.assign(sf.rows, 0);

    Tableau t(sf.rows, sf.total_cols);
    std::vector<std::size_t> basis(sf.rows);
    for (std::size_t i = 0; i < sf.rows; ++i) {
        const double s = sf.sign[i];
        for (std::size_t c = 0; c < sf.structural; ++c) t.at(i, c) = s * rows[i].a[c];
        if (slack_col[i] != SIZE_MAX)
            t.at(i, slack_col[i]) = s * (rows[i].rel == Relation::LessEqual ? 1.0 : -1.0);
        t.rhs(i) = s * rows[i].b;
        if (needs_artificial[i]) {
            t.at(i, next) = 1.0;
            sf.artificial[next] = true;
            basis[i] = next++;
        } else {
            basis[i] = slack_col[i];
        }
        sf.initial[i] = basis[i];
    }

    const Tableau original = t;
    // Basis matrix from the untouched columns; solving against it avoids the
    // drift that accumulates in the tableau over many pivots.
    auto basis_matrix = [&]() {
        Matrix b(sf.rows, sf.rows);
        for (std::size_t r = 0; r < sf.rows; ++r)
            for (std::size_t i = 0; i < sf.rows; ++i) b(r, i) = original.at(r, basis[i]);
        return b;
    };

    LpResult result;
    auto price = [&](const std::vector<double>& costs) {
        // Reduced costs relative to the current basis.
        for (std::size_t c = 0; c <= sf.total_cols; ++c) t.cost(c) = c < sf.total_cols ? costs[c] : 0.0;
        for (std::size_t i = 0; i < sf.rows; ++i) {
            const double cb = costs[basis[i]];
            if (cb == 0.0) continue;
            for (std::size_t c = 0; c <= sf.total_cols; ++c) t.cost(c) -= cb * t.at(i, c);
        }
    };
    // Rebuilds the tableau as B^-1 [A | b] from the original data.
    auto refactor = [&](const std::vector<double>& costs) {
        try {
            LuFactor lu(basis_matrix());
            std::vector<double> column(sf.rows);
            for (std::size_t c = 0; c <= sf.total_cols; ++c) {
                for (std::size_t r = 0; r < sf.rows; ++r) column[r] = original.at(r, c);
                auto x = lu.solve(column);
                for (std::size_t r = 0; r < sf.rows; ++r) t.at(r, c) = x[r];
            }
        } catch (const NumericalFailure&) {
            return;
        }
        for (std::size_t r = 0; r < sf.rows; ++r) {
            for (std::size_t i = 0; i < sf.rows; ++i) t.at(r, basis[i]) = r == i ? 1.0 : 0.0;
            if (t.rhs(r) < 0.0 && t.rhs(r) > -1e-9) t.rhs(r) = 0.0;
        }
        price(costs);
    };

    auto run = [&](const std::vector<double>& costs, bool allow_artificial) -> bool {
        price(costs);
        const double eps = options.pivot_tolerance;
        int since_refactor = 0;
        int degenerate_run = 0;
        bool bland = false;
        while (true) {
            if (since_refactor >= options.refactor_interval) {
                refactor(costs);
                since_refactor = 0;
            }
            // Dantzig pricing; Bland's rule takes over during degenerate runs.
            std::size_t enter = SIZE_MAX;
            double most_negative = -1e-10;
            for (std::size_t c = 0; c < sf.total_cols; ++c) {
                if (!allow_artificial && sf.artificial[c]) continue;
                if (t.cost(c) < most_negative) {
                    enter = c;
                    if (bland) break;
                    most_negative = t.cost(c);
                }
            }
            if (enter == SIZE_MAX) {
                if (since_refactor == 0) return true;
                // Confirm optimality on a freshly factored tableau.
                refactor(costs);
                since_refactor = 0;
                continue;
            }
            // Pivots small relative to the column would make the basis
            // numerically singular.
            double column_max = 0.0;
            for (std::size_t i = 0; i < sf.rows; ++i) column_max = std::max(column_max, std::abs(t.at(i, enter)));
            const double floor = std::max(eps, 1e-9 * column_max);
            std::size_t leave = SIZE_MAX;
            double best_ratio = kInf;
            for (std::size_t i = 0; i < sf.rows; ++i) {
                const double a = t.at(i, enter);
                if (a <= floor) continue;
                const double ratio = std::max(t.rhs(i), 0.0) / a;
                bool take = ratio < best_ratio - 1e-12;
                if (!take && leave != SIZE_MAX && std::abs(ratio - best_ratio) <= 1e-12)
                    take = bland ? basis[i] < basis[leave] : a > t.at(leave, enter);
                if (take) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave == SIZE_MAX) {
                if (since_refactor == 0) return false;
                refactor(costs);
                since_refactor = 0;
                continue;
            }
            if (best_ratio <= 1e-12) {
                if (++degenerate_run >= options.degenerate_switch) bland = true;
            } else {
                degenerate_run = 0;
                bland = false;
            }
            t.pivot(leave, enter);
            basis[leave] = enter;
            ++since_refactor;
            if (++result.iterations > options.max_iterations)
                throw NumericalFailure("simplex iteration cap " + std::to_string(options.max_iterations) + " exceeded");
        }
    };

    // Phase 1: minimise the sum of artificials.
    std::vector<double> phase1(sf.total_cols, 0.0);
    for (std::size_t c = 0; c < sf.total_cols; ++c)
        if (sf.artificial[c]) phase1[c] = 1.0;
    if (art_count > 0) {
        run(phase1, true);
        const double infeasibility = -t.rhs(sf.rows);
        double scale = 1.0;
        for (std::size_t i = 0; i < sf.rows; ++i) scale = std::max(scale, std::abs(sf.sign[i] * rows[i].b));
        if (infeasibility > 1e-9 * scale) {
            result.status = LpStatus::Infeasible;
            // Simplex multipliers pi solve B^T pi = c_B; y_std = -pi.
            std::vector<double> pi(sf.rows);
            try {
                std::vector<double> cb(sf.rows);
                for (std::size_t i = 0; i < sf.rows; ++i) cb[i] = phase1[basis[i]];
                pi = solve_linear(basis_matrix().transposed(), cb);
            } catch (const NumericalFailure&) {
                // Fall back to pi_i = c_init(i) - d_init(i) read off the tableau.
                for (std::size_t i = 0; i < sf.rows; ++i) pi[i] = phase1[sf.initial[i]] - t.cost(sf.initial[i]);
            }
            result.farkas.assign(sf.original_rows, 0.0);
            for (std::size_t i = 0; i < sf.original_rows; ++i) result.farkas[i] = -pi[i] * sf.sign[i];
            return result;
        }
        // Drive remaining artificials out of the basis where possible.
        for (std::size_t i = 0; i < sf.rows; ++i) {
            if (!sf.artificial[basis[i]]) continue;
            for (std::size_t c = 0; c < sf.total_cols; ++c) {
                if (sf.artificial[c] || std::abs(t.at(i, c)) <= 1e-9) continue;
                t.pivot(i, c);
                basis[i] = c;
                break;
            }
        }
    }

    // Phase 2 on the original objective, expressed as a minimisation.
    std::vector<double> phase2(sf.total_cols, 0.0);
    const double flip = problem.sense == Sense::Maximize ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double cj = flip * problem.objective[j];
        for (auto [cidx, s] : sf.vars[j].columns) phase2[cidx] += cj * s;
    }
    if (!run(phase2, false)) {
        result.status = LpStatus::Unbounded;
        return result;
    }

    std::vector<double> values(sf.total_cols, 0.0);
    std::vector<double> xb(sf.rows);
    for (std::size_t i = 0; i < sf.rows; ++i) xb[i] = t.rhs(i);
    try {
        std::vector<double> rhs(sf.rows);
        for (std::size_t r = 0; r < sf.rows; ++r) rhs[r] = original.rhs(r);
        xb = solve_linear(basis_matrix(), rhs);
    } catch (const NumericalFailure&) {
    }
    for (std::size_t i = 0; i < sf.rows; ++i) values[basis[i]] = xb[i];
    result.point.assign(n, 0.0);
    double objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double x = sf.vars[j].offset;
        for (auto [cidx, s] : sf.vars[j].columns) x += s * values[cidx];
        result.point[j] = x;
        objective += problem.objective[j] * x;
    }
    result.status = LpStatus::Optimal;
    result.value = objective;
    return result;
}

double max_violation(const LpProblem& problem, const std::vector<double>& point) {
    if (point.size() != problem.variables()) throw PreconditionError("point has the wrong dimension");
    double worst = 0.0;
    for (std::size_t j = 0; j < point.size(); ++j) {
        worst = std::max(worst, problem.lower[j] - point[j]);
        worst = std::max(worst, point[j] - problem.upper[j]);
    }
    for (const auto& c : problem.constraints) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < point.size(); ++j) lhs += c.coefficients[j] * point[j];
        switch (c.relation) {
            case Relation::LessEqual: worst = std::max(worst, lhs - c.bound); break;
            case Relation::GreaterEqual: worst = std::max(worst, c.bound - lhs); break;
            case Relation::Equal: worst = std::max(worst, std::abs(lhs - c.bound)); break;
        }
    }
    return worst;
}

FarkasCheck verify_farkas(const LpProblem& problem, const std::vector<double>& y_in, double tolerance) {
    FarkasCheck check;
    if (y_in.size() != problem.constraints.size()) {
        check.reason = "certificate has the wrong length";
        return check;
    }
    double scale = 0.0;
    for (double v : y_in) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) {
        check.reason = "certificate is zero";
        return check;
    }
    std::vector<double> y(y_in.size());
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = y_in[k] / scale;

    const std::size_t n = problem.variables();
    std::vector<double> g(n, 0.0);
    double yb = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const auto& c = problem.constraints[k];
        if (c.relation == Relation::LessEqual && y[k] < -tolerance) {
            check.reason = "negative multiplier on <= row " + std::to_string(k);
            return check;
        }
        if (c.relation == Relation::GreaterEqual && y[k] > tolerance) {
            check.reason = "positive multiplier on >= row " + std::to_string(k);
            return check;
        }
        for (std::size_t j = 0; j < n; ++j) g[j] += y[k] * c.coefficients[j];
        yb += y[k] * c.bound;
    }
    // Minimum of g.x over the variable box.
    double box_min = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double gj = std::abs(g[j]) <= tolerance ? 0.0 : g[j];
        if (gj > 0) {
            if (!std::isfinite(problem.lower[j])) {
                check.reason = "unbounded direction on variable " + std::to_string(j);
                return check;
            }
            box_min += gj * problem.lower[j];
        } else if (gj < 0) {
            if (!std::isfinite(problem.upper[j])) {
                check.reason = "unbounded direction on variable " + std::to_string(j);
                return check;
            }
            box_min += gj * problem.upper[j];
        }
    }
    check.gap = box_min - yb;
    check.valid = check.gap > tolerance;
    if (!check.valid) check.reason = "gap " + std::to_string(check.gap) + " not above tolerance";
    return check;
}

}  // namespace bfc

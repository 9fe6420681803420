#pragma once

#include <limits>
#include <string>
#include <vector>

namespace bfc {

enum class Relation { LessEqual, GreaterEqual, Equal };
enum class Sense { Maximize, Minimize };

struct LpConstraint {
    std::vector<double> coefficients;
    Relation relation = Relation::LessEqual;
    double bound = 0.0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Dense linear program. Variables default to the bounds [0, +inf); use
/// -kInf / kInf for free directions.
struct LpProblem {
    Sense sense = Sense::Maximize;
    std::vector<double> objective;
    std::vector<LpConstraint> constraints;
    std::vector<double> lower;
    std::vector<double> upper;

    explicit LpProblem(std::size_t variables = 0)
        : objective(variables, 0.0), lower(variables, 0.0), upper(variables, kInf) {}

    std::size_t variables() const { return objective.size(); }
    void add(std::vector<double> coefficients, Relation relation, double bound);
    /// Throws PreconditionError when a row width or bound vector is off.
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// On infeasibility, `farkas` holds one multiplier per constraint with
/// y_k >= 0 on <= rows, y_k <= 0 on >= rows and free on = rows, such that
/// g = sum_k y_k a_k satisfies min over the variable box of g.x > y.b.
struct LpResult {
    LpStatus status = LpStatus::Optimal;
    double value = 0.0;
    std::vector<double> point;
    std::vector<double> farkas;
    int iterations = 0;
};

struct LpOptions {
    int max_iterations = 200000;
    double pivot_tolerance = 1e-11;
    int degenerate_switch = 20;   // consecutive degenerate pivots before Bland's rule is used
    int refactor_interval = 100;  // pivots between rebuilds of the tableau from the original rows
};

/// Two-phase dense tableau simplex. Entering columns are priced by the most
/// negative reduced cost; after a run of degenerate pivots Bland's rule takes
/// over until the objective moves again, which rules out cycling.
LpResult solve_lp(const LpProblem& problem, const LpOptions& options = {});

/// Largest violation of a row or bound at `point` (0 when feasible).
double max_violation(const LpProblem& problem, const std::vector<double>& point);

struct FarkasCheck {
    bool valid = false;
    double gap = 0.0;  // min over the box of g.x minus y.b, after scaling max|y| to 1
    std::string reason;
};

FarkasCheck verify_farkas(const LpProblem& problem, const std::vector<double>& y, double tolerance = 1e-7);

std::string to_string(LpStatus status);

}  // namespace bfc

#pragma once

#include <cstdint>
#include <vector>

#include "bfc/lp.hpp"
#include "bfc/truth_table.hpp"

namespace bfc {

/// Unique multilinear polynomial of f over the reals. coefficients[S] is the
/// coefficient of the monomial prod_{i in S} x_i, S encoded as a bit mask.
struct MultilinearExpansion {
    int arity = 0;
    std::vector<std::int64_t> coefficients;

    std::int64_t evaluate(Input x) const;
    int degree() const;
};

MultilinearExpansion mobius_expansion(const TruthTable& f);

/// Coefficients of f over GF(2) (algebraic normal form), one bit per mask.
TruthTable gf2_expansion(const TruthTable& f);

int degree(const TruthTable& f);
int degree_gf2(const TruthTable& f);

inline constexpr int kApproximateDegreeCap = 8;
inline constexpr double kDefaultEpsilon = 1.0 / 3.0;
inline constexpr double kLpFeasibilityTolerance = 1e-7;

/// Monomial masks of degree <= d, ascending by popcount then numerically.
std::vector<Input> monomials_up_to(int arity, int d);

/// Feasibility program for an epsilon-approximating polynomial of degree <= d,
/// written in the +-1 character basis (one free variable per mask).
LpProblem approximation_lp(const TruthTable& f, int d, double epsilon);

struct ApproximationVerdict {
    int degree = 0;
    bool feasible = false;
    LpStatus status = LpStatus::Infeasible;
    double max_violation = 0.0;   // for feasible verdicts
    double certificate_gap = 0.0;  // for infeasible verdicts
    bool from_exact_polynomial = false;
};

/// Solves and independently re-checks one degree. Throws NumericalFailure
/// when neither the point nor the dual certificate survives the re-check.
ApproximationVerdict approximation_feasible(const TruthTable& f, int d, double epsilon = kDefaultEpsilon);

struct ApproximateDegreeResult {
    int value = 0;
    std::vector<ApproximationVerdict> verdicts;  // one per degree tried
};

ApproximateDegreeResult approximate_degree_report(const TruthTable& f, double epsilon = kDefaultEpsilon);
int approximate_degree(const TruthTable& f, double epsilon = kDefaultEpsilon);

}  // namespace bfc

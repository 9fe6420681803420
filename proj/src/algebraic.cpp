#include "bfc/algebraic.hpp"

#include <algorithm>
#include <string>

#include "bfc/error.hpp"

namespace bfc {

std::int64_t MultilinearExpansion::evaluate(Input x) const {
    std::int64_t sum = 0;
    // Sum over all submasks of x, including the empty one.
    for (Input s = x;; s = (s - 1) & x) {
        sum += coefficients[s];
        if (s == 0) break;
    }
    return sum;
}

int MultilinearExpansion::degree() const {
    int d = 0;
    for (Input s = 0; s < coefficients.size(); ++s)
        if (coefficients[s] != 0) d = std::max(d, popcount(s));
    return d;
}

MultilinearExpansion mobius_expansion(const TruthTable& f) {
    MultilinearExpansion e;
    e.arity = f.arity();
    e.coefficients.resize(f.size());
    for (Input x = 0; x < f.size(); ++x) e.coefficients[x] = f(x) ? 1 : 0;
    for (int i = 0; i < f.arity(); ++i) {
        const Input bit = Input{1} << i;
        for (Input s = 0; s < f.size(); ++s)
            if (s & bit) e.coefficients[s] -= e.coefficients[s ^ bit];
    }
    return e;
}

TruthTable gf2_expansion(const TruthTable& f) {
    TruthTable anf = f;
    for (int i = 0; i < f.arity(); ++i) {
        const Input bit = Input{1} << i;
        for (Input s = 0; s < f.size(); ++s)
            if ((s & bit) && anf(s ^ bit)) anf.flip(s);
    }
    return anf;
}

int degree(const TruthTable& f) { return mobius_expansion(f).degree(); }

int degree_gf2(const TruthTable& f) {
    auto anf = gf2_expansion(f);
    int d = 0;
    for (Input s = 0; s < anf.size(); ++s)
        if (anf(s)) d = std::max(d, popcount(s));
    return d;
}

std::vector<Input> monomials_up_to(int arity, int d) {
    std::vector<Input> masks;
    const Input size = Input{1} << arity;
    for (int k = 0; k <= std::min(d, arity); ++k)
        for (Input s = 0; s < size; ++s)
            if (popcount(s) == k) masks.push_back(s);
    return masks;
}

LpProblem approximation_lp(const TruthTable& f, int d, double epsilon) {
    const auto masks = monomials_up_to(f.arity(), d);
    LpProblem lp(masks.size());
    std::fill(lp.lower.begin(), lp.lower.end(), -kInf);
    for (Input x = 0; x < f.size(); ++x) {
        std::vector<double> row(masks.size(), 0.0);
        // Characters (-1)^{|S & x|} span the same space as the monomials of
        // degree <= d and keep the columns orthogonal.
        for (std::size_t k = 0; k < masks.size(); ++k) row[k] = parity_of(masks[k] & x) ? -1.0 : 1.0;
        const double lo = f(x) ? 1.0 - epsilon : 0.0;
        const double hi = f(x) ? 1.0 : epsilon;
        lp.add(row, Relation::GreaterEqual, lo);
        lp.add(std::move(row), Relation::LessEqual, hi);
    }
    return lp;
}

ApproximationVerdict approximation_feasible(const TruthTable& f, int d, double epsilon) {
    if (f.arity() > kApproximateDegreeCap)
        throw CapExceeded("approximate degree supports arity <= " + std::to_string(kApproximateDegreeCap));
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw PreconditionError("epsilon must lie in (0, 1/2)");

    ApproximationVerdict v;
    v.degree = d;
    auto lp = approximation_lp(f, d, epsilon);
    const auto expansion = mobius_expansion(f);
    if (expansion.degree() <= d) {
        // The exact polynomial is a feasible point; re-check it like any other.
        // Its character coefficients are dyadic, so they are exact doubles.
        const auto masks = monomials_up_to(f.arity(), d);
        std::vector<double> point(masks.size(), 0.0);
        for (std::size_t k = 0; k < masks.size(); ++k) {
            for (Input x = 0; x < f.size(); ++x)
                if (f(x)) point[k] += parity_of(masks[k] & x) ? -1.0 : 1.0;
            point[k] /= static_cast<double>(f.size());
        }
        v.max_violation = max_violation(lp, point);
        v.feasible = v.max_violation <= kLpFeasibilityTolerance;
        v.status = LpStatus::Optimal;
        v.from_exact_polynomial = true;
        if (!v.feasible) throw NumericalFailure("exact polynomial failed the approximation check");
        return v;
    }

    auto result = solve_lp(lp);
    v.status = result.status;
    if (result.status == LpStatus::Optimal) {
        v.max_violation = max_violation(lp, result.point);
        if (v.max_violation > kLpFeasibilityTolerance)
            throw NumericalFailure("LP point violates constraints by " + std::to_string(v.max_violation) +
                                   " at degree " + std::to_string(d));
        v.feasible = true;
        return v;
    }
    if (result.status == LpStatus::Infeasible) {
        auto check = verify_farkas(lp, result.farkas, kLpFeasibilityTolerance);
        v.certificate_gap = check.gap;
        if (!check.valid)
            throw NumericalFailure("LP infeasibility certificate rejected at degree " + std::to_string(d) + ": " +
                                   check.reason);
        v.feasible = false;
        return v;
    }
    throw NumericalFailure("feasibility LP reported unbounded");
}

ApproximateDegreeResult approximate_degree_report(const TruthTable& f, double epsilon) {
    ApproximateDegreeResult r;
    for (int d = 0; d <= f.arity(); ++d) {
        auto v = approximation_feasible(f, d, epsilon);
        r.verdicts.push_back(v);
        if (v.feasible) {
            r.value = d;
            return r;
        }
    }
    throw NumericalFailure("no feasible degree found up to the arity");
}

int approximate_degree(const TruthTable& f, double epsilon) { return approximate_degree_report(f, epsilon).value; }

}  // namespace bfc

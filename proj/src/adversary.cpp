#include "bfc/adversary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "bfc/combinatorial.hpp"
#include "bfc/error.hpp"
#include "bfc/spectral.hpp"

namespace bfc {

namespace {

void check_cap(const PartialTruthTable& f, int cap, const char* what) {
    if (f.arity() > cap) throw CapExceeded(std::string(what) + " supports arity <= " + std::to_string(cap));
}

bool has_both_values(const PartialTruthTable& f) {
    bool zero = false, one = false;
    for (Input x = 0; x < f.size(); ++x) {
        if (!f.defined(x)) continue;
        (f(x) ? one : zero) = true;
        if (zero && one) return true;
    }
    return false;
}

void require_nonconstant(const PartialTruthTable& f, const char* what) {
    if (!has_both_values(f)) throw PreconditionError(std::string(what) + " requires a non-constant function");
}

std::string pair_text(Input x, int i) {
    std::ostringstream os;
    os << "pair (" << x << ", " << (x ^ (Input{1} << i)) << ") on variable " << (i + 1);
    return os.str();
}

void fail(Verdict& v, double amount, const std::string& what) {
    v.worst = std::max(v.worst, amount);
    if (v.ok) {
        v.ok = false;
        v.failure = what;
    }
}

// Balanced constants on the sensitive pairs of one component (or all of f
// when `member` accepts everything).
template <class Member>
void balanced_weights(const SensitivityGraph& g, Member member, VertexBitWeightScheme& w) {
    const int n = g.arity();
    int s0 = 0, s1 = 0;
    for (Input x = 0; x < g.size(); ++x) {
        if (!member(x)) continue;
        (g.function()(x) ? s1 : s0) = std::max(g.function()(x) ? s1 : s0, g.degree(x));
    }
    if (s0 == 0 || s1 == 0) return;
    const double on_one = std::sqrt(static_cast<double>(s0)) / std::sqrt(static_cast<double>(s1));
    const double on_zero = 1.0 / on_one;
    for (Input x = 0; x < g.size(); ++x) {
        if (!member(x)) continue;
        for (int i = 0; i < n; ++i)
            if (g.edge(x, i)) w.weights[x * static_cast<Input>(n) + static_cast<Input>(i)] = g.function()(x) ? on_one : on_zero;
    }
}

}  // namespace

KoutsoupiasMatrix koutsoupias_matrix(const PartialTruthTable& f) {
    check_cap(f, kAdversaryCap, "koutsoupias_matrix");
    KoutsoupiasMatrix k;
    for (Input x = 0; x < f.size(); ++x)
        if (f.defined(x)) (f(x) ? k.ones : k.zeros).push_back(x);
    std::vector<std::size_t> col(f.size(), 0);
    for (std::size_t c = 0; c < k.ones.size(); ++c) col[k.ones[c]] = c;
    k.q = Matrix(k.zeros.size(), k.ones.size());
    for (std::size_t r = 0; r < k.zeros.size(); ++r)
        for (int i = 0; i < f.arity(); ++i) {
            const Input y = k.zeros[r] ^ (Input{1} << i);
            if (f.defined(y) && f(y)) k.q(r, col[y]) = 1.0;
        }
    return k;
}

double koutsoupias_value(const PartialTruthTable& f) {
    auto k = koutsoupias_matrix(f);
    if (k.zeros.empty() || k.ones.empty()) return 0.0;
    // One-sided Jacobi works on columns; keep the short side there.
    const Matrix& q = k.q;
    auto sv = q.cols() <= q.rows() ? singular_values(q) : singular_values(q.transposed());
    return sv.empty() ? 0.0 : sv.front();
}

double koutsoupias_value(const TruthTable& f) { return koutsoupias_value(PartialTruthTable(f)); }

double EdgeWeightScheme::weighted_degree(Input x) const {
    double s = 0.0;
    for (int i = 0; i < arity; ++i) s += (*this)(x, i);
    return s;
}

double swa1_value(const EdgeWeightScheme& w) {
    const Input size = Input{1} << w.arity;
    double best = 0.0;
    bool any = false;
    for (Input x = 0; x < size; ++x)
        for (int i = 0; i < w.arity; ++i) {
            const double e = w(x, i);
            if (e <= 0.0) continue;
            const Input y = x ^ (Input{1} << i);
            const double r = std::sqrt(w.weighted_degree(x) * w.weighted_degree(y)) / e;
            best = any ? std::min(best, r) : r;
            any = true;
        }
    return best;
}

Swa1Result swa1_from_eigenvector(const PartialTruthTable& f) {
    check_cap(f, kAdversaryCap, "swa1_from_eigenvector");
    require_nonconstant(f, "swa1_from_eigenvector");
    auto lam = lambda(f);
    auto v = lam.vector;
    for (auto& e : v)
        if (e < kPerronFloor) e = 0.0;
    SensitivityGraph g(f);
    Swa1Result r;
    r.scheme.arity = f.arity();
    r.scheme.weights.assign(f.size() * static_cast<Input>(f.arity()), 0.0);
    for (Input x = 0; x < f.size(); ++x)
        for (int i = 0; i < f.arity(); ++i)
            if (g.edge(x, i))
                r.scheme.weights[x * static_cast<Input>(f.arity()) + static_cast<Input>(i)] = v[x] * v[x ^ (Input{1} << i)];
    r.value = swa1_value(r.scheme);
    return r;
}

Swa1Result swa1_from_eigenvector(const TruthTable& f) { return swa1_from_eigenvector(PartialTruthTable(f)); }

Verdict verify_edge_weights(const PartialTruthTable& f, const EdgeWeightScheme& w) {
    Verdict v;
    if (w.arity != f.arity() || w.weights.size() != f.size() * static_cast<Input>(f.arity())) {
        fail(v, 0.0, "weight array does not match the arity");
        return v;
    }
    SensitivityGraph g(f);
    for (Input x = 0; x < f.size(); ++x)
        for (int i = 0; i < f.arity(); ++i) {
            const double e = w(x, i);
            const Input y = x ^ (Input{1} << i);
            if (!std::isfinite(e) || e < 0.0) fail(v, std::abs(e), "negative or non-finite weight at " + pair_text(x, i));
            if (e > 0.0 && !g.edge(x, i)) fail(v, e, "weight on a non-sensitive " + pair_text(x, i));
            const double asym = std::abs(e - w(y, i));
            if (asym > kFeasibilityTolerance * (1.0 + e)) fail(v, asym, "asymmetric weight at " + pair_text(x, i));
        }
    return v;
}

double VertexBitWeightScheme::row_sum(Input x) const {
    double s = 0.0;
    for (int i = 0; i < arity; ++i) s += (*this)(x, i);
    return s;
}

double VertexBitWeightScheme::value() const {
    const Input size = Input{1} << arity;
    double best = 0.0;
    for (Input x = 0; x < size; ++x) best = std::max(best, row_sum(x));
    return best;
}

Mm1Result mm1_balanced_scheme(const PartialTruthTable& f) {
    check_cap(f, kAdversaryCap, "mm1_balanced_scheme");
    require_nonconstant(f, "mm1_balanced_scheme");
    SensitivityGraph g(f);
    Mm1Result r;
    r.scheme.arity = f.arity();
    r.scheme.weights.assign(f.size() * static_cast<Input>(f.arity()), 0.0);
    balanced_weights(g, [](Input) { return true; }, r.scheme);
    r.value = r.scheme.value();
    return r;
}

Mm1Result mm1_balanced_scheme(const TruthTable& f) { return mm1_balanced_scheme(PartialTruthTable(f)); }

Mm1Result mm1_optimal_certificate(const PartialTruthTable& f) {
    check_cap(f, kAdversaryCap, "mm1_optimal_certificate");
    require_nonconstant(f, "mm1_optimal_certificate");
    SensitivityGraph g(f);
    const int n = f.arity();
    Mm1Result r;
    r.scheme.arity = n;
    r.scheme.weights.assign(f.size() * static_cast<Input>(n), 0.0);

    auto comp = g.components();
    const int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<Input>> members(static_cast<std::size_t>(count));
    for (Input x = 0; x < f.size(); ++x)
        if (f.defined(x) && g.degree(x) > 0) members[static_cast<std::size_t>(comp[x])].push_back(x);

    for (int c = 0; c < count; ++c) {
        const auto& m = members[static_cast<std::size_t>(c)];
        if (m.empty()) continue;
        TruthTable domain(n);
        for (auto x : m) domain.set(x, true);
        auto v = lambda(PartialTruthTable(f.values(), domain)).vector;
        const bool degenerate = std::any_of(m.begin(), m.end(), [&](Input x) { return v[x] < kPerronFloor; });
        if (degenerate) {
            ++r.fallback_components;
            balanced_weights(g, [&](Input x) { return comp[x] == c && g.degree(x) > 0; }, r.scheme);
            continue;
        }
        for (auto x : m)
            for (int i = 0; i < n; ++i)
                if (g.edge(x, i))
                    r.scheme.weights[x * static_cast<Input>(n) + static_cast<Input>(i)] = v[x ^ (Input{1} << i)] / v[x];
    }
    r.value = r.scheme.value();
    return r;
}

Mm1Result mm1_optimal_certificate(const TruthTable& f) { return mm1_optimal_certificate(PartialTruthTable(f)); }

Verdict verify_mm1(const PartialTruthTable& f, const VertexBitWeightScheme& w, double tolerance) {
    Verdict v;
    if (w.arity != f.arity() || w.weights.size() != f.size() * static_cast<Input>(f.arity())) {
        fail(v, 0.0, "weight array does not match the arity");
        return v;
    }
    SensitivityGraph g(f);
    for (Input x = 0; x < f.size(); ++x)
        for (int i = 0; i < f.arity(); ++i) {
            const double e = w(x, i);
            if (!std::isfinite(e) || e < 0.0) fail(v, std::abs(e), "negative or non-finite weight at " + pair_text(x, i));
            const Input y = x ^ (Input{1} << i);
            if (x < y && g.edge(x, i)) {
                const double p = e * w(y, i);
                if (p < 1.0 - tolerance) fail(v, 1.0 - p, "product " + std::to_string(p) + " < 1 at " + pair_text(x, i));
            }
        }
    return v;
}

Gsa1Primal gsa1_primal_certificate(const PartialTruthTable& f) {
    check_cap(f, kGsaCap, "gsa1_primal_certificate");
    require_nonconstant(f, "gsa1_primal_certificate");
    auto lam = lambda(f);
    SensitivityGraph g(f);
    Gsa1Primal p;
    std::vector<std::size_t> pos(f.size(), 0);
    for (Input x = 0; x < f.size(); ++x)
        if (f.defined(x)) {
            pos[x] = p.index.size();
            p.index.push_back(x);
        }
    const std::size_t m = p.index.size();
    p.z = Matrix(m, m);
    p.delta.assign(m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        const Input x = p.index[a];
        p.delta[a] = lam.vector[x] * lam.vector[x];
        for (int i = 0; i < f.arity(); ++i)
            if (g.edge(x, i)) {
                const Input y = x ^ (Input{1} << i);
                p.z(a, pos[y]) = lam.vector[x] * lam.vector[y];
            }
    }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) p.objective += p.z(a, b);  // Z lives on A_f's support
    auto verdict = verify_gsa1_primal(f, p);
    if (!verdict.ok) throw NumericalFailure("GSA1 primal certificate failed verification: " + verdict.failure);
    return p;
}

Gsa1Primal gsa1_primal_certificate(const TruthTable& f) { return gsa1_primal_certificate(PartialTruthTable(f)); }

Verdict verify_gsa1_primal(const PartialTruthTable& f, const Gsa1Primal& p) {
    Verdict v;
    SensitivityGraph g(f);
    std::vector<Input> expected;
    for (Input x = 0; x < f.size(); ++x)
        if (f.defined(x)) expected.push_back(x);
    const std::size_t m = expected.size();
    if (p.index != expected || p.z.rows() != m || p.z.cols() != m || p.delta.size() != m) {
        fail(v, 0.0, "index set or matrix shape does not match the domain");
        return v;
    }
    double trace = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
        if (!(p.delta[a] >= 0.0)) fail(v, -p.delta[a], "negative diagonal entry of Delta at input " + std::to_string(p.index[a]));
        trace += p.delta[a];
        for (std::size_t b = 0; b < m; ++b) {
            if (!(p.z(a, b) >= 0.0)) fail(v, -p.z(a, b), "negative entry of Z");
            const double asym = std::abs(p.z(a, b) - p.z(b, a));
            if (asym > kFeasibilityTolerance) fail(v, asym, "Z is not symmetric");
        }
    }
    if (std::abs(trace - 1.0) > kFeasibilityTolerance) fail(v, std::abs(trace - 1.0), "trace(Delta) = " + std::to_string(trace));

    // <Z, A_f> recomputed from the graph.
    double objective = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            const Input d = p.index[a] ^ p.index[b];
            if (popcount(d) == 1 && g.edge(p.index[a], std::countr_zero(d))) objective += p.z(a, b);
        }
    if (std::abs(objective - p.objective) > kFeasibilityTolerance * (1.0 + objective))
        fail(v, std::abs(objective - p.objective), "claimed objective does not match <Z, A_f>");

    for (int i = 0; i < f.arity(); ++i) {
        Matrix s(m, m);
        for (std::size_t a = 0; a < m; ++a) {
            s(a, a) = p.delta[a];
            for (std::size_t b = 0; b < m; ++b)
                if (((p.index[a] ^ p.index[b]) >> i) & 1) s(a, b) -= p.z(a, b);
        }
        const double lo = min_eigenvalue(s);
        if (lo < -kPsdTolerance * (1.0 + s.max_abs()))
            fail(v, -lo, "Delta - Z o D_" + std::to_string(i + 1) + " has eigenvalue " + std::to_string(lo));
    }
    return v;
}

Matrix Gsa1Dual::r(int i) const {
    const auto& u = factors[static_cast<std::size_t>(i)];
    Matrix out(u.size(), u.size());
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = 0; b < u.size(); ++b) out(a, b) = u[a] * u[b];
    return out;
}

Gsa1Dual gsa1_dual_certificate(const PartialTruthTable& f, const VertexBitWeightScheme& w) {
    check_cap(f, kAdversaryCap, "gsa1_dual_certificate");
    auto feasible = verify_mm1(f, w);
    if (!feasible.ok) throw PreconditionError("weight scheme is not MM1-feasible: " + feasible.failure);
    Gsa1Dual d;
    d.arity = f.arity();
    d.factors.assign(static_cast<std::size_t>(f.arity()), std::vector<double>(f.size(), 0.0));
    for (Input x = 0; x < f.size(); ++x)
        for (int i = 0; i < f.arity(); ++i) d.factors[static_cast<std::size_t>(i)][x] = std::sqrt(w(x, i));
    d.alpha = w.value();
    auto verdict = verify_gsa1_dual(f, d);
    if (!verdict.ok) throw NumericalFailure("GSA1 dual certificate failed verification: " + verdict.failure);
    return d;
}

Gsa1Dual gsa1_dual_certificate(const TruthTable& f, const VertexBitWeightScheme& w) {
    return gsa1_dual_certificate(PartialTruthTable(f), w);
}

Verdict verify_gsa1_dual(const PartialTruthTable& f, const Gsa1Dual& d) {
    Verdict v;
    if (d.arity != f.arity() || d.factors.size() != static_cast<std::size_t>(f.arity())) {
        fail(v, 0.0, "factor count does not match the arity");
        return v;
    }
    for (const auto& u : d.factors)
        if (u.size() != f.size()) {
            fail(v, 0.0, "factor length does not match 2^n");
            return v;
        }
    SensitivityGraph g(f);
    for (Input x = 0; x < f.size(); ++x) {
        double diag = 0.0;
        for (int i = 0; i < f.arity(); ++i) {
            const double u = d.factors[static_cast<std::size_t>(i)][x];
            if (!std::isfinite(u) || u < 0.0) fail(v, std::abs(u), "negative or non-finite factor entry");
            diag += u * u;
            const Input y = x ^ (Input{1} << i);
            if (x < y && g.edge(x, i)) {
                const double off = u * d.factors[static_cast<std::size_t>(i)][y];
                if (off < 1.0 - kFeasibilityTolerance)
                    fail(v, 1.0 - off, "R_" + std::to_string(i + 1) + " entry " + std::to_string(off) + " < 1 at " + pair_text(x, i));
            }
        }
        if (diag > d.alpha + kFeasibilityTolerance * (1.0 + d.alpha))
            fail(v, diag - d.alpha, "diagonal sum " + std::to_string(diag) + " exceeds alpha at input " + std::to_string(x));
    }
    return v;
}

EquivalenceReport verify_equivalences(const PartialTruthTable& f, double tolerance) {
    check_cap(f, kGsaCap, "verify_equivalences");
    EquivalenceReport r;
    try {
        r.lambda = lambda(f).value;
        r.koutsoupias = koutsoupias_value(f);
        auto swa = swa1_from_eigenvector(f);
        r.swa1 = swa.value;
        auto mm = mm1_optimal_certificate(f);
        r.mm1 = mm.value;
        auto primal = gsa1_primal_certificate(f);
        r.gsa1_primal = primal.objective;
        auto dual = gsa1_dual_certificate(f, mm.scheme);
        r.gsa1_dual = dual.alpha;

        std::vector<std::pair<const char*, Verdict>> checks = {
            {"SWA1 weights", verify_edge_weights(f, swa.scheme)},
            {"MM1 weights", verify_mm1(f, mm.scheme)},
            {"GSA1 primal", verify_gsa1_primal(f, primal)},
            {"GSA1 dual", verify_gsa1_dual(f, dual)},
        };
        r.certificates_ok = true;
        for (auto& [name, verdict] : checks)
            if (!verdict.ok && r.certificates_ok) {
                r.certificates_ok = false;
                r.failure = std::string(name) + ": " + verdict.failure;
            }
    } catch (const Error& e) {
        r.certificates_ok = false;
        r.failure = e.what();
        return r;
    }
    const double values[] = {r.lambda, r.koutsoupias, r.swa1, r.mm1, r.gsa1_primal, r.gsa1_dual};
    const auto [lo, hi] = std::minmax_element(std::begin(values), std::end(values));
    r.max_discrepancy = *hi - *lo;
    r.agree = r.certificates_ok && r.max_discrepancy <= tolerance;
    if (r.certificates_ok && !r.agree) r.failure = "values disagree by " + std::to_string(r.max_discrepancy);
    return r;
}

EquivalenceReport verify_equivalences(const TruthTable& f, double tolerance) {
    return verify_equivalences(PartialTruthTable(f), tolerance);
}

SignPatternReport sign_pattern_check(const TruthTable& f, int patterns, std::uint64_t seed) {
    if (f.arity() > kGsaCap) throw CapExceeded("sign_pattern_check supports arity <= 8");
    SensitivityGraph g(f);
    Matrix a = g.adjacency();
    SignPatternReport r;
    r.patterns = patterns;
    r.norm_abs = symmetric_spectral_norm(a);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < patterns; ++t) {
        Matrix s = a;
        for (std::size_t x = 0; x < s.rows(); ++x)
            for (std::size_t y = x + 1; y < s.cols(); ++y)
                if (s(x, y) != 0.0 && (rng() & 1)) {
                    s(x, y) = -1.0;
                    s(y, x) = -1.0;
                }
        const double norm = symmetric_spectral_norm(s);
        r.max_signed = std::max(r.max_signed, norm);
        if (r.norm_abs < norm - 1e-9) r.ok = false;
    }
    return r;
}

}  // namespace bfc

#include "bfc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bfc/algebraic.hpp"
#include "bfc/error.hpp"

namespace bfc {

std::string to_string(SpectralMethod m) {
    switch (m) {
        case SpectralMethod::Auto: return "auto";
        case SpectralMethod::Dense: return "dense-jacobi";
        case SpectralMethod::Iterative: return "power-iteration";
    }
    return "unknown";
}

int SensitivityGraph::degree(Input x) const {
    int d = 0;
    for (int i = 0; i < arity(); ++i)
        if (edge(x, i)) ++d;
    return d;
}

void SensitivityGraph::multiply(const std::vector<double>& v, std::vector<double>& out) const {
    const Input n = size();
    out.assign(n, 0.0);
    for (Input x = 0; x < n; ++x) {
        if (!f_.defined(x)) continue;
        const bool fx = f_(x);
        double s = 0.0;
        for (int i = 0; i < arity(); ++i) {
            const Input y = x ^ (Input{1} << i);
            if (f_.defined(y) && f_(y) != fx) s += v[y];
        }
        out[x] = s;
    }
}

std::vector<double> SensitivityGraph::multiply(const std::vector<double>& v) const {
    std::vector<double> out;
    multiply(v, out);
    return out;
}

Matrix SensitivityGraph::adjacency() const {
    if (arity() > kMaterializeCap) throw CapExceeded("adjacency materialization supports arity <= 12");
    Matrix a(size(), size());
    for (Input x = 0; x < size(); ++x)
        for (int i = 0; i < arity(); ++i)
            if (edge(x, i)) a(x, x ^ (Input{1} << i)) = 1.0;
    return a;
}

std::vector<int> SensitivityGraph::components() const {
    std::vector<int> comp(size(), -1);
    int next = 0;
    std::vector<Input> stack;
    for (Input s = 0; s < size(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            Input x = stack.back();
            stack.pop_back();
            for (int i = 0; i < arity(); ++i) {
                if (!edge(x, i)) continue;
                Input y = x ^ (Input{1} << i);
                if (comp[y] < 0) {
                    comp[y] = next;
                    stack.push_back(y);
                }
            }
        }
        ++next;
    }
    return comp;
}

namespace {

struct Sides {
    std::vector<Input> zeros;  // non-isolated defined 0-inputs
    std::vector<Input> ones;
};

Sides sensitive_sides(const SensitivityGraph& g) {
    Sides s;
    for (Input x = 0; x < g.size(); ++x) {
        if (g.degree(x) == 0) continue;
        (g.function()(x) ? s.ones : s.zeros).push_back(x);
    }
    return s;
}

void finish_result(const SensitivityGraph& g, SpectralResult& r) {
    double norm = norm2(r.vector);
    for (auto& v : r.vector) v = std::abs(v) / norm;
    auto av = g.multiply(r.vector);
    r.value = dot(r.vector, av);
    double res = 0.0;
    for (std::size_t i = 0; i < av.size(); ++i) {
        double d = av[i] - r.value * r.vector[i];
        res += d * d;
    }
    r.residual = std::sqrt(res);
}

SpectralResult empty_graph(const PartialTruthTable& f, SpectralMethod method) {
    SpectralResult r;
    r.method = method;
    r.vector.assign(f.size(), 0.0);
    Input first = 0;
    while (first < f.size() && !f.defined(first)) ++first;
    r.vector[first < f.size() ? first : 0] = 1.0;
    return r;
}

SpectralResult dense_lambda(const SensitivityGraph& g) {
    auto sides = sensitive_sides(g);
    if (sides.zeros.empty()) return empty_graph(g.function(), SpectralMethod::Dense);
    // Gram matrix of the biadjacency block on the smaller side.
    const bool zero_side = sides.zeros.size() <= sides.ones.size();
    const auto& small = zero_side ? sides.zeros : sides.ones;
    const auto& large = zero_side ? sides.ones : sides.zeros;
    std::vector<std::size_t> pos_large(g.size(), SIZE_MAX);
    for (std::size_t k = 0; k < large.size(); ++k) pos_large[large[k]] = k;
    Matrix q(small.size(), large.size());
    for (std::size_t r = 0; r < small.size(); ++r)
        for (int i = 0; i < g.arity(); ++i)
            if (g.edge(small[r], i)) q(r, pos_large[small[r] ^ (Input{1} << i)]) = 1.0;
    Matrix gram(small.size(), small.size());
    for (std::size_t a = 0; a < small.size(); ++a)
        for (std::size_t b = a; b < small.size(); ++b) {
            double s = dot(q.row(a), q.row(b));
            gram(a, b) = gram(b, a) = s;
        }
    auto eig = jacobi_eigen(gram);
    const std::size_t top = small.size() - 1;
    const double mu = std::max(0.0, eig.values[top]);
    const double lam = std::sqrt(mu);

    SpectralResult r;
    r.method = SpectralMethod::Dense;
    r.iterations = eig.sweeps;
    r.vector.assign(g.size(), 0.0);
    std::vector<double> u(small.size());
    for (std::size_t k = 0; k < small.size(); ++k) u[k] = std::abs(eig.vectors(k, top));
    for (std::size_t k = 0; k < small.size(); ++k) r.vector[small[k]] = u[k];
    for (std::size_t c = 0; c < large.size(); ++c) {
        double s = 0.0;
        for (std::size_t k = 0; k < small.size(); ++k) s += q(k, c) * u[k];
        r.vector[large[c]] = s / lam;
    }
    finish_result(g, r);
    return r;
}

SpectralResult iterative_lambda(const SensitivityGraph& g, const SpectralOptions& options) {
    auto sides = sensitive_sides(g);
    if (sides.zeros.empty()) return empty_graph(g.function(), SpectralMethod::Iterative);
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.5, 1.5);
    std::vector<double> u(g.size(), 0.0);
    for (auto x : sides.zeros) u[x] = unit(rng);
    double norm = norm2(u);
    for (auto& v : u) v /= norm;

    std::vector<double> w, next;
    double ray = 0.0;
    int it = 0;
    bool converged = false;
    double err = 0.0;
    for (; it < options.max_iterations; ++it) {
        // A_f^2 keeps vectors supported on the 0-side.
        g.multiply(u, w);
        g.multiply(w, next);
        ray = dot(u, next);
        err = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            double d = next[k] - ray * u[k];
            err += d * d;
        }
        err = std::sqrt(err);
        const double nn = norm2(next);
        for (std::size_t k = 0; k < u.size(); ++k) u[k] = next[k] / nn;
        if (err <= options.tolerance * ray) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NumericalFailure("power iteration did not converge after " + std::to_string(it) +
                               " iterations; residual " + std::to_string(err));
    const double lam = std::sqrt(ray);
    g.multiply(u, w);
    SpectralResult r;
    r.method = SpectralMethod::Iterative;
    r.iterations = it + 1;
    r.vector.assign(g.size(), 0.0);
    for (Input x = 0; x < g.size(); ++x) r.vector[x] = u[x] + w[x] / lam;
    finish_result(g, r);
    return r;
}

}  // namespace

SpectralResult lambda(const PartialTruthTable& f, const SpectralOptions& options) {
    if (f.arity() > kSpectralMatrixFreeCap) throw CapExceeded("lambda supports arity <= 20");
    SensitivityGraph g(f);
    SpectralMethod method = options.method;
    if (method == SpectralMethod::Auto)
        method = f.arity() <= options.dense_max_arity ? SpectralMethod::Dense : SpectralMethod::Iterative;
    if (method == SpectralMethod::Dense) {
        if (f.arity() > kSpectralDenseCap) throw CapExceeded("dense lambda supports arity <= 12");
        return dense_lambda(g);
    }
    return iterative_lambda(g, options);
}

SpectralResult lambda(const TruthTable& f, const SpectralOptions& options) {
    return lambda(PartialTruthTable(f), options);
}

SignedHypercube::SignedHypercube(int n, std::vector<std::int8_t> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != size() * size()) throw PreconditionError("signed hypercube entry count mismatch");
}

SignedHypercube build_signed_hypercube(int n) {
    if (n < 1) throw PreconditionError("signed hypercube needs n >= 1");
    if (n > kSignedHypercubeCap) throw CapExceeded("signed hypercube supports n <= 12");
    std::vector<std::int8_t> cur{0, 1, 1, 0};
    std::size_t dim = 2;
    for (int level = 2; level <= n; ++level) {
        const std::size_t nd = dim * 2;
        std::vector<std::int8_t> next(nd * nd, 0);
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                const auto v = cur[r * dim + c];
                next[r * nd + c] = v;
                next[(r + dim) * nd + (c + dim)] = static_cast<std::int8_t>(-v);
            }
            next[r * nd + (r + dim)] = 1;
            next[(r + dim) * nd + r] = 1;
        }
        cur = std::move(next);
        dim = nd;
    }
    return SignedHypercube(n, std::move(cur));
}

SigningReport verify_signing(const SignedHypercube& b) {
    SigningReport rep;
    const std::size_t n = b.size();
    const auto nn = static_cast<long>(b.n());
    rep.method = "exact integer product over sparse rows; trace and support scanned entrywise";

    std::vector<std::vector<std::pair<std::size_t, int>>> rows(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (int v = b(r, c); v != 0) rows[r].push_back({c, v});

    rep.square_ok = true;
    std::vector<long> acc(n, 0);
    for (std::size_t x = 0; x < n && rep.square_ok; ++x) {
        std::vector<std::size_t> touched;
        for (auto [y, bxy] : rows[x])
            for (auto [z, byz] : rows[y]) {
                if (acc[z] == 0) touched.push_back(z);
                acc[z] += static_cast<long>(bxy) * byz;
            }
        const long diag = acc[x];
        if (diag != nn) {
            rep.square_ok = false;
            rep.failure = "B^2[" + std::to_string(x) + "][" + std::to_string(x) + "] = " + std::to_string(diag) +
                          ", expected " + std::to_string(nn);
        }
        for (auto z : touched) {
            if (rep.square_ok && z != x && acc[z] != 0) {
                rep.square_ok = false;
                rep.failure = "B^2[" + std::to_string(x) + "][" + std::to_string(z) + "] = " + std::to_string(acc[z]) +
                              ", expected 0";
            }
            acc[z] = 0;
        }
        acc[x] = 0;
    }

    long trace = 0;
    for (std::size_t x = 0; x < n; ++x) trace += b(x, x);
    rep.trace_ok = trace == 0;
    if (!rep.trace_ok && rep.failure.empty()) rep.failure = "trace = " + std::to_string(trace);

    rep.support_ok = true;
    for (std::size_t r = 0; r < n && rep.support_ok; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const int v = b(r, c);
            const bool adjacent = popcount(static_cast<Input>(r ^ c)) == 1;
            if (v < -1 || v > 1 || (v != 0) != adjacent || v != b(c, r)) {
                rep.support_ok = false;
                if (rep.failure.empty())
                    rep.failure = "entry [" + std::to_string(r) + "][" + std::to_string(c) + "] = " +
                                  std::to_string(v) + " breaks the cube support or symmetry";
                break;
            }
        }

    rep.ok = rep.square_ok && rep.trace_ok && rep.support_ok;
    // B^2 = nI forces every eigenvalue to +-sqrt(n); trace 0 makes the two
    // multiplicities equal.
    if (rep.square_ok && rep.trace_ok) rep.plus_eigenspace_dimension = n / 2;
    return rep;
}

HuangWitness huang_witness(const TruthTable& f) {
    const int n = f.arity();
    if (n < 1) throw PreconditionError("witness needs arity >= 1");
    if (n > kSignedHypercubeCap) throw CapExceeded("witness supports arity <= 12");
    if (degree(f) != n) throw PreconditionError("witness needs deg(f) == arity; restrict to a top monomial first");

    auto part = parity_partition(f);
    HuangWitness w;
    w.majority_agrees_with_parity = part.agree.size() >= part.disagree.size();
    const auto& minority = w.majority_agrees_with_parity ? part.disagree : part.agree;
    w.majority_size = w.majority_agrees_with_parity ? part.agree.size() : part.disagree.size();
    w.minority_size = minority.size();
    if (w.majority_size == w.minority_size)
        throw PreconditionError("parity partition is balanced, so deg(f) < n");

    const auto b = build_signed_hypercube(n);
    const std::size_t size = b.size();
    const std::size_t half = size / 2;
    const double root = std::sqrt(static_cast<double>(n));

    // Columns of B + sqrt(n) I from the lower half span the +sqrt(n)
    // eigenspace (their upper block is the identity); orthonormalize them.
    Matrix basis(size, half);
    for (std::size_t j = 0; j < half; ++j) {
        for (std::size_t r = 0; r < size; ++r) basis(r, j) = b(r, j);
        basis(j, j) += root;
    }
    for (std::size_t j = 0; j < half; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double d = 0.0;
            for (std::size_t r = 0; r < size; ++r) d += basis(r, k) * basis(r, j);
            for (std::size_t r = 0; r < size; ++r) basis(r, j) -= d * basis(r, k);
        }
        double nrm = 0.0;
        for (std::size_t r = 0; r < size; ++r) nrm += basis(r, j) * basis(r, j);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-10) throw NumericalFailure("eigenspace basis lost rank during orthonormalization");
        for (std::size_t r = 0; r < size; ++r) basis(r, j) /= nrm;
    }

    // Kernel of the basis restricted to minority coordinates.
    const std::size_t m = minority.size();
    Matrix sys(m, half);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < half; ++j) sys(i, j) = basis(minority[i], j);
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    std::vector<bool> is_pivot(half, false);
    for (std::size_t col = 0; col < half && row < m; ++col) {
        std::size_t best = row;
        for (std::size_t i = row + 1; i < m; ++i)
            if (std::abs(sys(i, col)) > std::abs(sys(best, col))) best = i;
        if (std::abs(sys(best, col)) <= 1e-10) continue;
        for (std::size_t j = 0; j < half; ++j) std::swap(sys(row, j), sys(best, j));
        const double p = sys(row, col);
        for (std::size_t j = 0; j < half; ++j) sys(row, j) /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            const double factor = sys(i, col);
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < half; ++j) sys(i, j) -= factor * sys(row, j);
        }
        pivot_col.push_back(col);
        is_pivot[col] = true;
        ++row;
    }
    std::size_t free_col = 0;
    while (free_col < half && is_pivot[free_col]) ++free_col;
    if (free_col == half) throw NumericalFailure("no kernel vector found for the minority constraints");
    std::vector<double> coeff(half, 0.0);
    coeff[free_col] = 1.0;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) coeff[pivot_col[r]] = -sys(r, free_col);

    std::vector<double> v(size, 0.0);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t j = 0; j < half; ++j) v[r] += basis(r, j) * coeff[j];
    const double vnorm = norm2(v);
    for (auto x : minority) {
        if (std::abs(v[x]) > 1e-9 * vnorm)
            throw NumericalFailure("kernel vector does not vanish on the minority side");
        v[x] = 0.0;
    }
    const double cleaned = norm2(v);
    w.vector.resize(size);
    for (std::size_t r = 0; r < size; ++r) w.vector[r] = std::abs(v[r]) / cleaned;

    SensitivityGraph g(f);
    auto av = g.multiply(w.vector);
    w.ratio = norm2(av);
    w.bound = root;
    if (w.ratio < root - kWitnessTolerance)
        throw NumericalFailure("witness ratio " + std::to_string(w.ratio) + " below sqrt(n)");
    return w;
}

TopMonomial top_monomial(const TruthTable& f) {
    if (f.is_constant()) throw PreconditionError("constant function has no top monomial");
    auto e = mobius_expansion(f);
    const int d = e.degree();
    TopMonomial t;
    for (Input s = 0; s < e.coefficients.size(); ++s)
        if (e.coefficients[s] != 0 && popcount(s) == d) {
            t.mask = s;
            break;
        }
    Restriction r;
    for (int i = 0; i < f.arity(); ++i)
        if (!((t.mask >> i) & 1)) r.fixed[i + 1] = false;
    t.restricted = restrict(f, r);
    return t;
}

TruthTable restrict_to_top_monomial(const TruthTable& f) { return top_monomial(f).restricted; }

}  // namespace bfc

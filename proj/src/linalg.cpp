#include "bfc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bfc/error.hpp"

namespace bfc {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw PreconditionError("matrix product: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> v) {
    if (a.cols() != v.size()) throw PreconditionError("matrix-vector product: dimensions differ");
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), v);
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

SymmetricEigen jacobi_eigen(const Matrix& input, double tolerance, int max_sweeps) {
    const std::size_t n = input.rows();
    if (input.cols() != n) throw PreconditionError("jacobi_eigen needs a square matrix");
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = input(i, j);
    Matrix v = Matrix::identity(n);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) total += a(i, j) * a(i, j);

    SymmetricEigen out;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off <= tolerance * tolerance * total || off == 0.0) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == max_sweeps) throw NumericalFailure("Jacobi eigensolver did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    out.sweeps = sweep;
    return out;
}

double min_eigenvalue(const Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<int> comp(n, -1);
    int count = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w) {
                if (comp[w] < 0 && (a(u, w) != 0.0 || a(w, u) != 0.0)) {
                    comp[w] = count;
                    stack.push_back(w);
                }
            }
        }
        ++count;
    }
    double lowest = std::numeric_limits<double>::infinity();
    for (int c = 0; c < count; ++c) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == c) idx.push_back(i);
        if (idx.size() == 1) {
            lowest = std::min(lowest, a(idx[0], idx[0]));
            continue;
        }
        Matrix block(idx.size(), idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) block(i, j) = a(idx[i], idx[j]);
        lowest = std::min(lowest, jacobi_eigen(block).values.front());
    }
    return n == 0 ? 0.0 : lowest;
}

double symmetric_spectral_norm(const Matrix& a) {
    if (a.rows() == 0) return 0.0;
    auto eig = jacobi_eigen(a);
    return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

std::vector<double> singular_values(const Matrix& input, double tolerance, int max_sweeps) {
    // Work on the orientation with fewer columns.
    Matrix a = input.cols() <= input.rows() ? input : input.transposed();
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    double frob = 0.0;
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < n; ++j) frob += a(k, j) * a(k, j);
    // Columns at roundoff level (rank deficiency) are left alone.
    const double negligible = frob * 1e-30;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    alpha += a(k, p) * a(k, p);
                    beta += a(k, q) * a(k, q);
                    gamma += a(k, p) * a(k, q);
                }
                if (alpha <= negligible || beta <= negligible) continue;
                if (gamma == 0.0 || std::abs(gamma) <= tolerance * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
            }
        }
        if (!rotated) break;
    }
    if (sweep == max_sweeps) throw NumericalFailure("one-sided Jacobi SVD did not converge");
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += a(k, j) * a(k, j);
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

LuFactor::LuFactor(Matrix a, double singular) : lu_(std::move(a)) {
    const std::size_t n = lu_.rows();
    if (lu_.cols() != n) throw PreconditionError("LU needs a square matrix");
    perm_.resize(n);
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    const double scale = std::max(1.0, lu_.max_abs());
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(lu_(r, k)) > std::abs(lu_(p, k))) p = r;
        if (std::abs(lu_(p, k)) <= singular * scale) throw NumericalFailure("singular linear system");
        if (p != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu_(k, c), lu_(p, c));
            std::swap(perm_[k], perm_[p]);
        }
        const double pivot = lu_(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double factor = lu_(r, k) / pivot;
            lu_(r, k) = factor;
            if (factor == 0.0) continue;
            for (std::size_t c = k + 1; c < n; ++c) lu_(r, c) -= factor * lu_(k, c);
        }
    }
}

std::vector<double> LuFactor::solve(std::vector<double> b) const {
    const std::size_t n = lu_.rows();
    if (b.size() != n) throw PreconditionError("right-hand side has the wrong length");
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) {
        double s = b[perm_[k]];
        for (std::size_t c = 0; c < k; ++c) s -= lu_(k, c) * x[c];
        x[k] = s;
    }
    for (std::size_t k = n; k-- > 0;) {
        double s = x[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= lu_(k, c) * x[c];
        x[k] = s / lu_(k, k);
    }
    return x;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b, double singular) {
    return LuFactor(std::move(a), singular).solve(std::move(b));
}

}  // namespace bfc

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bfc {

/// Row-major dense real matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    Matrix transposed() const;
    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<double> multiply(const Matrix& a, std::span<const double> v);

struct SymmetricEigen {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k pairs with values[k]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations on a symmetric matrix. Only the upper triangle
/// is read.
SymmetricEigen jacobi_eigen(const Matrix& a, double tolerance = 1e-14, int max_sweeps = 100);

/// Smallest eigenvalue, computed on each connected block of the nonzero
/// pattern separately.
double min_eigenvalue(const Matrix& a);

/// Largest |eigenvalue| of a symmetric matrix.
double symmetric_spectral_norm(const Matrix& a);

/// Singular values (descending) by one-sided Jacobi on the columns.
std::vector<double> singular_values(const Matrix& a, double tolerance = 1e-14, int max_sweeps = 100);

/// LU factorisation with partial pivoting, reusable across right-hand sides.
class LuFactor {
public:
    /// Throws NumericalFailure when a pivot falls below `singular` times the
    /// largest entry.
    explicit LuFactor(Matrix a, double singular = 1e-13);
    std::vector<double> solve(std::vector<double> b) const;

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
};

/// Solves a x = b by Gaussian elimination with partial pivoting. Throws
/// NumericalFailure when a pivot falls below `singular` times the largest
/// entry.
std::vector<double> solve_linear(Matrix a, std::vector<double> b, double singular = 1e-13);

double norm2(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace bfc

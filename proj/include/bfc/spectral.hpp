#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfc/linalg.hpp"
#include "bfc/truth_table.hpp"

namespace bfc {

/// Sensitivity graph: (x, x ^ e_i) is an edge iff both ends are in the
/// domain and f differs across it.
class SensitivityGraph {
public:
    explicit SensitivityGraph(PartialTruthTable f) : f_(std::move(f)) {}
    explicit SensitivityGraph(const TruthTable& f) : f_(f) {}

    int arity() const { return f_.arity(); }
    Input size() const { return f_.size(); }
    const PartialTruthTable& function() const { return f_; }

    bool edge(Input x, int bit) const {
        const Input y = x ^ (Input{1} << bit);
        return f_.defined(x) && f_.defined(y) && f_(x) != f_(y);
    }
    int degree(Input x) const;

    /// y = A_f v over all 2^n inputs.
    void multiply(const std::vector<double>& v, std::vector<double>& out) const;
    std::vector<double> multiply(const std::vector<double>& v) const;

    inline static constexpr int kMaterializeCap = 12;
    /// Dense adjacency (2^n x 2^n); arity <= kMaterializeCap.
    Matrix adjacency() const;

    /// Connected component id per input (isolated inputs get their own id).
    std::vector<int> components() const;

private:
    PartialTruthTable f_;
};

enum class SpectralMethod { Auto, Dense, Iterative };

struct SpectralOptions {
    SpectralMethod method = SpectralMethod::Auto;
    int dense_max_arity = 8;
    int max_iterations = 100000;
    double tolerance = 1e-10;
    std::uint64_t seed = 0x5eed5eedULL;
};

struct SpectralResult {
    double value = 0.0;
    std::vector<double> vector;  // unit, nonnegative, indexed by input
    double residual = 0.0;       // ||A v - value v||
    SpectralMethod method = SpectralMethod::Dense;
    int iterations = 0;
};

inline constexpr int kSpectralMatrixFreeCap = 20;
inline constexpr int kSpectralDenseCap = 12;

/// Spectral norm of the sensitivity graph adjacency, with a Perron vector.
SpectralResult lambda(const PartialTruthTable& f, const SpectralOptions& options = {});
SpectralResult lambda(const TruthTable& f, const SpectralOptions& options = {});

/// Huang's signing of the n-cube: B_1 = [[0,1],[1,0]],
/// B_i = [[B_{i-1}, I], [I, -B_{i-1}]]. Variable i is the top bit at level i.
class SignedHypercube {
public:
    SignedHypercube(int n, std::vector<std::int8_t> entries);

    int n() const { return n_; }
    std::size_t size() const { return std::size_t{1} << n_; }
    int operator()(std::size_t r, std::size_t c) const { return entries_[r * size() + c]; }
    void set(std::size_t r, std::size_t c, int v) { entries_[r * size() + c] = static_cast<std::int8_t>(v); }

private:
    int n_;
    std::vector<std::int8_t> entries_;
};

inline constexpr int kSignedHypercubeCap = 12;

SignedHypercube build_signed_hypercube(int n);

struct SigningReport {
    bool square_ok = false;   // B^2 == n I
    bool trace_ok = false;
    bool support_ok = false;  // symmetric, nonzero exactly on cube edges, entries in {-1,0,1}
    bool ok = false;
    std::string failure;      // first violated identity with the offending entry
    std::size_t plus_eigenspace_dimension = 0;
    std::string method;
};

SigningReport verify_signing(const SignedHypercube& b);

struct HuangWitness {
    std::vector<double> vector;  // v' = |v|, unit norm
    double ratio = 0.0;          // ||A_f v'|| / ||v'||
    double bound = 0.0;          // sqrt(n)
    bool majority_agrees_with_parity = true;
    std::size_t majority_size = 0;
    std::size_t minority_size = 0;
};

inline constexpr double kWitnessTolerance = 1e-9;

/// Witness vector for full-degree f on the majority side of its parity
/// partition. Requires deg(f) == arity.
HuangWitness huang_witness(const TruthTable& f);

struct TopMonomial {
    Input mask = 0;
    TruthTable restricted;
};

/// Restricts every variable outside the smallest maximum-degree monomial to 0.
TopMonomial top_monomial(const TruthTable& f);
TruthTable restrict_to_top_monomial(const TruthTable& f);

std::string to_string(SpectralMethod m);

}  // namespace bfc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bfc/linalg.hpp"
#include "bfc/truth_table.hpp"

namespace bfc {

inline constexpr int kAdversaryCap = 12;
inline constexpr int kGsaCap = 8;
inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kPsdTolerance = 1e-8;
inline constexpr double kPerronFloor = 1e-12;

struct Verdict {
    bool ok = true;
    std::string failure;  // first violated condition, empty when ok
    double worst = 0.0;   // largest violation seen
};

/// Koutsoupias matrix Q: rows are f^-1(0), columns f^-1(1), both ascending.
struct KoutsoupiasMatrix {
    std::vector<Input> zeros;
    std::vector<Input> ones;
    Matrix q;
};

KoutsoupiasMatrix koutsoupias_matrix(const PartialTruthTable& f);
/// ||Q|| by singular values; 0 for constant f.
double koutsoupias_value(const PartialTruthTable& f);
double koutsoupias_value(const TruthTable& f);

/// Edge weights w(x, x ^ e_i), stored at [x * arity + i].
struct EdgeWeightScheme {
    int arity = 0;
    std::vector<double> weights;

    double operator()(Input x, int i) const { return weights[x * static_cast<Input>(arity) + static_cast<Input>(i)]; }
    double weighted_degree(Input x) const;
};

struct Swa1Result {
    EdgeWeightScheme scheme;
    double value = 0.0;
};

Swa1Result swa1_from_eigenvector(const PartialTruthTable& f);
Swa1Result swa1_from_eigenvector(const TruthTable& f);
/// min over supported pairs of sqrt(wt(x) wt(y)) / w(x,y).
double swa1_value(const EdgeWeightScheme& w);
Verdict verify_edge_weights(const PartialTruthTable& f, const EdgeWeightScheme& w);

/// Vertex-bit weights w(x,i), stored at [x * arity + i].
struct VertexBitWeightScheme {
    int arity = 0;
    std::vector<double> weights;

    double operator()(Input x, int i) const { return weights[x * static_cast<Input>(arity) + static_cast<Input>(i)]; }
    double row_sum(Input x) const;
    /// max_x sum_i w(x,i)
    double value() const;
};

struct Mm1Result {
    VertexBitWeightScheme scheme;
    double value = 0.0;
    int fallback_components = 0;  // components that used the balanced constants
};

Mm1Result mm1_balanced_scheme(const PartialTruthTable& f);
Mm1Result mm1_balanced_scheme(const TruthTable& f);
Mm1Result mm1_optimal_certificate(const PartialTruthTable& f);
Mm1Result mm1_optimal_certificate(const TruthTable& f);
/// Nonnegativity and w(x,i) w(y,i) >= 1 - tolerance on every sensitive pair.
Verdict verify_mm1(const PartialTruthTable& f, const VertexBitWeightScheme& w,
                   double tolerance = kFeasibilityTolerance);

/// Matrices indexed by the domain of f in ascending order.
struct Gsa1Primal {
    std::vector<Input> index;
    Matrix z;
    std::vector<double> delta;  // diagonal of Delta
    double objective = 0.0;     // <Z, A_f>
};

Gsa1Primal gsa1_primal_certificate(const PartialTruthTable& f);
Gsa1Primal gsa1_primal_certificate(const TruthTable& f);
Verdict verify_gsa1_primal(const PartialTruthTable& f, const Gsa1Primal& p);

/// R_i = r_i r_i^T; the factors are stored, which makes each R_i PSD by
/// construction.
struct Gsa1Dual {
    int arity = 0;
    double alpha = 0.0;
    std::vector<std::vector<double>> factors;  // factors[i][x] = sqrt(w(x,i))

    Matrix r(int i) const;
};

Gsa1Dual gsa1_dual_certificate(const PartialTruthTable& f, const VertexBitWeightScheme& w);
Gsa1Dual gsa1_dual_certificate(const TruthTable& f, const VertexBitWeightScheme& w);
Verdict verify_gsa1_dual(const PartialTruthTable& f, const Gsa1Dual& d);

struct EquivalenceReport {
    double lambda = 0.0;
    double koutsoupias = 0.0;
    double swa1 = 0.0;
    double mm1 = 0.0;
    double gsa1_primal = 0.0;
    double gsa1_dual = 0.0;
    double max_discrepancy = 0.0;
    bool certificates_ok = false;
    bool agree = false;
    std::string failure;
};

inline constexpr double kEquivalenceTolerance = 1e-5;

EquivalenceReport verify_equivalences(const PartialTruthTable& f, double tolerance = kEquivalenceTolerance);
EquivalenceReport verify_equivalences(const TruthTable& f, double tolerance = kEquivalenceTolerance);

struct SignPatternReport {
    int patterns = 0;
    double norm_abs = 0.0;     // ||A_f||
    double max_signed = 0.0;   // largest ||Gamma|| over the patterns
    bool ok = true;            // ||A_f|| >= ||Gamma|| - 1e-9 on every pattern
};

/// Random symmetric +-1 signings Gamma of A_f; dense, arity <= 8.
SignPatternReport sign_pattern_check(const TruthTable& f, int patterns, std::uint64_t seed);

}  // namespace bfc

#pragma once

#include <cstdint>
#include <vector>

#include "bfc/truth_table.hpp"

namespace bfc {

/// Per-input measure (s_x, bs_x or C_x) together with its maximum.
struct LocalMeasure {
    std::vector<int> per_input;
    int global = 0;
    Input argmax_input = 0;  // smallest input attaining `global`
};

struct SensitivityResult {
    LocalMeasure measure;
    int s0 = 0;
    int s1 = 0;
    // s_b is reported as 0 when f^-1(b) is empty; these flags say whether
    // that happened.
    bool has_zero_inputs = false;
    bool has_one_inputs = false;
    std::uint64_t total = 0;   // sum of s_x over the domain
    std::uint64_t domain = 0;  // number of inputs averaged over

    double average() const { return domain == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(domain); }
};

inline constexpr int kBlockSensitivityCap = 12;
inline constexpr int kCertificateCap = 12;
inline constexpr int kDefaultQueryCap = 6;

SensitivityResult sensitivity(const TruthTable& f);
/// Partial version: only defined inputs and defined neighbours count.
SensitivityResult sensitivity(const PartialTruthTable& f);

LocalMeasure block_sensitivity(const TruthTable& f);
LocalMeasure certificate_complexity(const TruthTable& f);

/// bs_x at a single input, by packing minimal sensitive blocks.
int block_sensitivity_at(const TruthTable& f, Input x);
int certificate_complexity_at(const TruthTable& f, Input x);

/// Minimal sensitive blocks at x (no proper nonempty sub-block is sensitive).
std::vector<Input> minimal_sensitive_blocks(const TruthTable& f, Input x);

struct QueryOptions {
    int max_arity = kDefaultQueryCap;
};

struct DecisionTreeResult {
    int depth = 0;
    int root_variable = 0;  // 1-based; 0 for constant functions
};

DecisionTreeResult decision_tree(const TruthTable& f, const QueryOptions& options = {});
int deterministic_query_complexity(const TruthTable& f, const QueryOptions& options = {});

}  // namespace bfc

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bfc/report.hpp"
#include "bfc/truth_table.hpp"

namespace bfc {

inline constexpr int kExhaustiveSweepCap = 4;
inline constexpr int kSampledSweepCap = 8;
inline constexpr int kSweepAdegDefaultCap = 6;

struct SweepOptions {
    int min_arity = 4;
    int max_arity = 4;
    std::optional<std::uint64_t> sample;  // functions per arity; exhaustive when empty
    std::uint64_t seed = 7;
    double tolerance = kCliTolerance;
    int threads = 1;
    int adeg_cap = kSweepAdegDefaultCap;  // adeg is computed only up to this arity
    bool keep_rows = false;              // keep per-function values for CSV output
};

struct FunctionMeasures;
/// Replaces measure_for_sweep when set (used to plant violations in tests).
using MeasureHook = std::function<FunctionMeasures(const TruthTable&, int adeg_cap)>;

/// Everything the inequality suite needs about one function.
struct FunctionMeasures {
    TruthTable f;
    int s = 0, s0 = 0, s1 = 0, bs = 0, C = 0, deg = 0, deg2 = 0, D = 0;
    std::optional<int> adeg;
    double lambda = 0.0;
    double avg_sensitivity = 0.0;
};

/// D always uses a cap equal to the arity here (sweeps stay at arity <= 8).
FunctionMeasures measure_for_sweep(const TruthTable& f, int adeg_cap);

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool applicable = true;
    bool spectral = false;
};

/// Checks lhs <= rhs (+ tolerance for spectral ones).
struct Inequality {
    std::string name;
    InequalityCheck (*evaluate)(const FunctionMeasures&);
};

const std::vector<Inequality>& inequality_suite();

/// Max observed ratios; reported, never asserted.
struct Ratio {
    std::string name;
    std::optional<double> (*evaluate)(const FunctionMeasures&);
};

const std::vector<Ratio>& conjecture_ratios();

struct Witness {
    std::uint64_t index = 0;  // position in the universe
    std::string function;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct InequalityTally {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failed = 0;
    std::uint64_t skipped = 0;
    std::optional<Witness> worst;  // smallest rhs - lhs, earliest index on ties
    std::vector<Witness> violations;  // first few, by index
};

struct RatioTally {
    std::string name;
    std::uint64_t observed = 0;
    std::optional<double> max;
    std::optional<Witness> witness;
};

struct CsvRow {
    std::string function;
    std::string inequality;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string status;  // pass, fail, skip
};

struct SweepResult {
    std::string mode;  // exhaustive or sampled
    std::vector<int> arities;
    std::uint64_t functions = 0;
    std::optional<std::uint64_t> sample;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    int adeg_cap = 0;
    std::vector<InequalityTally> inequalities;
    std::vector<RatioTally> ratios;
    std::vector<CsvRow> rows;
    int threads = 1;
    double seconds = 0.0;

    std::uint64_t violations() const;
    bool ok() const { return violations() == 0; }
};

inline constexpr std::size_t kViolationsKept = 10;

/// Exhaustive universes enumerate all 2^(2^n) tables in index order; sampled
/// ones draw tables from mt19937_64(seed). Results do not depend on threads.
SweepResult run_sweep(const SweepOptions& options, const MeasureHook& hook = {});

/// The universe as a list of tables, in index order.
std::vector<TruthTable> sweep_universe(const SweepOptions& options);

Json to_json(const SweepResult& r, bool include_timing = true);
std::string to_text(const SweepResult& r);
std::string to_csv(const SweepResult& r);

}  // namespace bfc

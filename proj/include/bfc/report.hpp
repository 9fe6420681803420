#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bfc/combinatorial.hpp"
#include "bfc/truth_table.hpp"

namespace bfc {

using Json = nlohmann::ordered_json;

inline constexpr double kCliTolerance = 1e-6;

struct FunctionDescriptor {
    int arity = 0;
    std::string hex;
    std::optional<std::string> family;
};

/// One measure. `value` is empty when the measure was skipped (see `skipped`).
/// A tolerance of 0 means the value is exact.
struct MeasureEntry {
    std::string name;
    std::optional<double> value;
    double tolerance = 0.0;
    std::string skipped;
    double seconds = 0.0;
};

struct MeasureReport {
    FunctionDescriptor function;
    std::vector<MeasureEntry> measures;
    std::optional<Json> certificates;
    const MeasureEntry* find(const std::string& name) const;
};

struct MeasureOptions {
    int query_cap = kDefaultQueryCap;
    bool certificates = false;
};

/// Order: D, s, s0, s1, bs, C, deg, deg2, adeg, lambda, avg_sensitivity.
/// Measures beyond an engine cap are skipped with the reason recorded.
MeasureReport compute_measures(const TruthTable& f, const MeasureOptions& options = {},
                               std::optional<std::string> family = std::nullopt);

/// Koutsoupias, SWA1, MM1 and GSA1 objects with their verifier verdicts.
Json certificates_json(const TruthTable& f);

/// Timing lives in its own block so that everything else is reproducible.
Json to_json(const MeasureReport& r, bool include_timing = true);
std::string to_text(const MeasureReport& r);
std::string to_csv(const MeasureReport& r);

/// FNV-1a over the compact dump, used as a report fingerprint.
std::string fingerprint(const Json& j);

std::string format_double(double v);

}  // namespace bfc

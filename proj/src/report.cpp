#include "bfc/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "bfc/adversary.hpp"
#include "bfc/algebraic.hpp"
#include "bfc/error.hpp"
#include "bfc/spectral.hpp"

namespace bfc {

namespace {

using Clock = std::chrono::steady_clock;

// Runs `compute` and records either its value or the reason it was skipped.
MeasureEntry timed(std::string name, double tolerance, const std::function<double()>& compute) {
    MeasureEntry e;
    e.name = std::move(name);
    e.tolerance = tolerance;
    const auto start = Clock::now();
    try {
        e.value = compute();
    } catch (const CapExceeded& err) {
        e.skipped = err.what();
    } catch (const NumericalFailure& err) {
        e.skipped = std::string("numerical failure: ") + err.what();
    }
    e.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return e;
}

Json verdict_json(const Verdict& v) {
    Json j;
    j["ok"] = v.ok;
    j["worst"] = v.worst;
    if (!v.ok) j["failure"] = v.failure;
    return j;
}

// Nonzero entries as [x, i, w] triples.
Json sparse_weights(const std::vector<double>& w, int arity) {
    Json out = Json::array();
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] != 0.0) out.push_back(Json::array({k / static_cast<std::size_t>(arity), k % static_cast<std::size_t>(arity), w[k]}));
    return out;
}

}  // namespace

const MeasureEntry* MeasureReport::find(const std::string& name) const {
    for (const auto& m : measures)
        if (m.name == name) return &m;
    return nullptr;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

MeasureReport compute_measures(const TruthTable& f, const MeasureOptions& options, std::optional<std::string> family) {
    MeasureReport r;
    r.function = {f.arity(), f.format_hex(), std::move(family)};

    QueryOptions q;
    q.max_arity = options.query_cap;
    r.measures.push_back(timed("D", 0.0, [&] { return static_cast<double>(deterministic_query_complexity(f, q)); }));

    SensitivityResult sens;
    auto s = timed("s", 0.0, [&] {
        sens = sensitivity(f);
        return static_cast<double>(sens.measure.global);
    });
    r.measures.push_back(s);
    r.measures.push_back({"s0", static_cast<double>(sens.s0), 0.0, "", 0.0});
    r.measures.push_back({"s1", static_cast<double>(sens.s1), 0.0, "", 0.0});
    r.measures.push_back(timed("bs", 0.0, [&] { return static_cast<double>(block_sensitivity(f).global); }));
    r.measures.push_back(timed("C", 0.0, [&] { return static_cast<double>(certificate_complexity(f).global); }));
    r.measures.push_back(timed("deg", 0.0, [&] { return static_cast<double>(degree(f)); }));
    r.measures.push_back(timed("deg2", 0.0, [&] { return static_cast<double>(degree_gf2(f)); }));
    r.measures.push_back(timed("adeg", kLpFeasibilityTolerance, [&] { return static_cast<double>(approximate_degree(f)); }));

    double residual = 0.0;
    auto lam = timed("lambda", 0.0, [&] {
        auto res = lambda(f);
        residual = res.residual;
        return res.value;
    });
    lam.tolerance = std::max(1e-10, residual);
    r.measures.push_back(lam);
    r.measures.push_back({"avg_sensitivity", sens.average(), 0.0, "", 0.0});

    if (options.certificates) r.certificates = certificates_json(f);
    return r;
}

Json certificates_json(const TruthTable& f) {
    Json c;
    if (f.is_constant()) {
        c["skipped"] = "constant function";
        return c;
    }
    if (f.arity() > kGsaCap) {
        c["skipped"] = "arity " + std::to_string(f.arity()) + " exceeds certificate cap " + std::to_string(kGsaCap);
        return c;
    }
    const PartialTruthTable pf(f);
    const int n = f.arity();

    auto k = koutsoupias_matrix(pf);
    c["koutsoupias"] = {{"value", koutsoupias_value(pf)}, {"zeros", k.zeros}, {"ones", k.ones}};

    auto swa = swa1_from_eigenvector(pf);
    c["swa1"] = {{"value", swa.value},
                 {"weights", sparse_weights(swa.scheme.weights, n)},
                 {"verdict", verdict_json(verify_edge_weights(pf, swa.scheme))}};

    auto mm = mm1_optimal_certificate(pf);
    c["mm1"] = {{"value", mm.value},
                {"fallback_components", mm.fallback_components},
                {"weights", sparse_weights(mm.scheme.weights, n)},
                {"verdict", verdict_json(verify_mm1(pf, mm.scheme))}};

    auto primal = gsa1_primal_certificate(pf);
    Json z = Json::array();
    for (std::size_t a = 0; a < primal.z.rows(); ++a)
        for (std::size_t b = 0; b < primal.z.cols(); ++b)
            if (primal.z(a, b) != 0.0) z.push_back(Json::array({a, b, primal.z(a, b)}));
    c["gsa1_primal"] = {{"objective", primal.objective},
                        {"index", primal.index},
                        {"delta", primal.delta},
                        {"z", z},
                        {"verdict", verdict_json(verify_gsa1_primal(pf, primal))}};

    auto dual = gsa1_dual_certificate(pf, mm.scheme);
    c["gsa1_dual"] = {{"alpha", dual.alpha},
                      {"factors", dual.factors},
                      {"verdict", verdict_json(verify_gsa1_dual(pf, dual))}};
    return c;
}

Json to_json(const MeasureReport& r, bool include_timing) {
    Json j;
    j["schema"] = "bfc.measures/1";
    Json fn;
    fn["arity"] = r.function.arity;
    fn["hex"] = r.function.hex;
    fn["family"] = r.function.family ? Json(*r.function.family) : Json(nullptr);
    j["function"] = fn;
    Json ms = Json::object();
    for (const auto& m : r.measures) {
        Json e;
        if (m.value) {
            const double v = *m.value;
            if (m.tolerance == 0.0 && v == std::floor(v) && std::abs(v) < 1e15)
                e["value"] = static_cast<std::int64_t>(v);
            else
                e["value"] = v;
            if (m.tolerance == 0.0)
                e["exact"] = true;
            else
                e["tolerance"] = m.tolerance;
        } else {
            e["skipped"] = m.skipped;
        }
        ms[m.name] = e;
    }
    j["measures"] = ms;
    if (r.certificates) j["certificates"] = *r.certificates;
    if (include_timing) {
        Json t = Json::object();
        for (const auto& m : r.measures) t[m.name] = m.seconds;
        j["timing"] = t;
    }
    return j;
}

std::string to_text(const MeasureReport& r) {
    std::ostringstream out;
    out << "function " << r.function.hex;
    if (r.function.family) out << " (" << *r.function.family << ")";
    out << "\n";
    for (const auto& m : r.measures) {
        char line[160];
        if (m.value) {
            const std::string tag = m.tolerance == 0.0 ? "exact" : "tol " + format_double(m.tolerance);
            std::snprintf(line, sizeof line, "  %-16s %-18s %s\n", m.name.c_str(), format_double(*m.value).c_str(), tag.c_str());
        } else {
            std::snprintf(line, sizeof line, "  %-16s %-18s %s\n", m.name.c_str(), "-", m.skipped.c_str());
        }
        out << line;
    }
    if (r.certificates) out << "certificates: " << r.certificates->dump() << "\n";
    return out.str();
}

std::string to_csv(const MeasureReport& r) {
    std::ostringstream out;
    out << "function,measure,value,exact,tolerance,skipped\n";
    for (const auto& m : r.measures) {
        out << r.function.hex << ',' << m.name << ',';
        if (m.value) out << format_double(*m.value);
        out << ',' << (m.value && m.tolerance == 0.0 ? "true" : "false") << ',' << format_double(m.tolerance) << ',';
        // Skip reasons never contain commas except in free text; quote them.
        if (!m.skipped.empty()) out << '"' << m.skipped << '"';
        out << '\n';
    }
    return out.str();
}

std::string fingerprint(const Json& j) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : j.dump()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace bfc

#include "bfc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "bfc/algebraic.hpp"
#include "bfc/combinatorial.hpp"
#include "bfc/error.hpp"
#include "bfc/spectral.hpp"

namespace bfc {

namespace {

InequalityCheck exact(double lhs, double rhs) { return {lhs, rhs, true, false}; }
InequalityCheck spectral(double lhs, double rhs) { return {lhs, rhs, true, true}; }

bool passes(const InequalityCheck& c, double tolerance) {
    return c.lhs <= c.rhs + (c.spectral ? tolerance : 0.0);
}

TruthTable random_table(int n, std::mt19937_64& rng) {
    const Input size = Input{1} << n;
    std::vector<std::uint64_t> words((size + 63) / 64);
    for (auto& w : words) w = rng();
    return TruthTable::from_function(n, [&](Input x) { return (words[x >> 6] >> (x & 63)) & 1; });
}

}  // namespace

FunctionMeasures measure_for_sweep(const TruthTable& f, int adeg_cap) {
    FunctionMeasures m;
    m.f = f;
    const auto sens = sensitivity(f);
    m.s = sens.measure.global;
    m.s0 = sens.s0;
    m.s1 = sens.s1;
    m.avg_sensitivity = sens.average();
    m.bs = block_sensitivity(f).global;
    m.C = certificate_complexity(f).global;
    m.deg = degree(f);
    m.deg2 = degree_gf2(f);
    QueryOptions q;
    q.max_arity = std::max(kDefaultQueryCap, f.arity());
    m.D = deterministic_query_complexity(f, q);
    if (f.arity() <= adeg_cap) m.adeg = approximate_degree(f);
    m.lambda = lambda(f).value;
    return m;
}

const std::vector<Inequality>& inequality_suite() {
    static const std::vector<Inequality> suite = {
        {"deg <= lambda^2", [](const FunctionMeasures& m) { return spectral(m.deg, m.lambda * m.lambda); }},
        {"s <= lambda^2", [](const FunctionMeasures& m) { return spectral(m.s, m.lambda * m.lambda); }},
        {"lambda <= s", [](const FunctionMeasures& m) { return spectral(m.lambda, m.s); }},
        {"lambda <= sqrt(s0*s1)",
         [](const FunctionMeasures& m) { return spectral(m.lambda, std::sqrt(static_cast<double>(m.s0) * m.s1)); }},
        {"avg_sensitivity <= lambda", [](const FunctionMeasures& m) { return spectral(m.avg_sensitivity, m.lambda); }},
        {"deg <= s0*s1", [](const FunctionMeasures& m) { return exact(m.deg, m.s0 * m.s1); }},
        {"deg2 <= deg", [](const FunctionMeasures& m) { return exact(m.deg2, m.deg); }},
        {"s <= bs", [](const FunctionMeasures& m) { return exact(m.s, m.bs); }},
        {"bs <= C", [](const FunctionMeasures& m) { return exact(m.bs, m.C); }},
        {"C <= bs*s",
         [](const FunctionMeasures& m) {
             auto c = exact(m.C, m.bs * m.s);
             c.applicable = m.s > 0;
             return c;
         }},
        {"D <= bs*C", [](const FunctionMeasures& m) { return exact(m.D, m.bs * m.C); }},
        {"D <= bs*deg", [](const FunctionMeasures& m) { return exact(m.D, m.bs * m.deg); }},
        {"deg <= D", [](const FunctionMeasures& m) { return exact(m.deg, m.D); }},
        {"adeg <= deg",
         [](const FunctionMeasures& m) {
             auto c = exact(m.adeg.value_or(0), m.deg);
             c.applicable = m.adeg.has_value();
             return c;
         }},
    };
    return suite;
}

const std::vector<Ratio>& conjecture_ratios() {
    static const std::vector<Ratio> ratios = {
        {"lambda/deg",
         [](const FunctionMeasures& m) -> std::optional<double> {
             if (m.deg == 0) return std::nullopt;
             return m.lambda / m.deg;
         }},
        {"lambda/adeg",
         [](const FunctionMeasures& m) -> std::optional<double> {
             if (!m.adeg || *m.adeg == 0) return std::nullopt;
             return m.lambda / *m.adeg;
         }},
        {"D/bs^2",
         [](const FunctionMeasures& m) -> std::optional<double> {
             if (m.bs == 0) return std::nullopt;
             return static_cast<double>(m.D) / (m.bs * m.bs);
         }},
        {"D/lambda^2",
         [](const FunctionMeasures& m) -> std::optional<double> {
             if (m.lambda < 0.5) return std::nullopt;  // lambda is 0 or >= 1
             return m.D / (m.lambda * m.lambda);
         }},
        {"D/adeg^2",
         [](const FunctionMeasures& m) -> std::optional<double> {
             if (!m.adeg || *m.adeg == 0) return std::nullopt;
             return static_cast<double>(m.D) / (*m.adeg * *m.adeg);
         }},
    };
    return ratios;
}

std::uint64_t SweepResult::violations() const {
    std::uint64_t v = 0;
    for (const auto& t : inequalities) v += t.failed;
    return v;
}

std::vector<TruthTable> sweep_universe(const SweepOptions& o) {
    if (o.min_arity < 0 || o.min_arity > o.max_arity) throw PreconditionError("need 0 <= min-n <= max-n");
    std::vector<TruthTable> out;
    if (!o.sample) {
        if (o.max_arity > kExhaustiveSweepCap)
            throw CapExceeded("exhaustive sweeps support n <= " + std::to_string(kExhaustiveSweepCap) + "; use --sample");
        for (int n = o.min_arity; n <= o.max_arity; ++n) {
            const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << n);
            for (std::uint64_t code = 0; code < count; ++code)
                out.push_back(TruthTable::from_function(n, [code](Input x) { return (code >> x) & 1; }));
        }
        return out;
    }
    if (o.max_arity > kSampledSweepCap)
        throw CapExceeded("sampled sweeps support n <= " + std::to_string(kSampledSweepCap));
    std::mt19937_64 rng(o.seed);
    for (int n = o.min_arity; n <= o.max_arity; ++n)
        for (std::uint64_t k = 0; k < *o.sample; ++k) out.push_back(random_table(n, rng));
    return out;
}

SweepResult run_sweep(const SweepOptions& o, const MeasureHook& hook) {
    const auto start = std::chrono::steady_clock::now();
    const auto universe = sweep_universe(o);

    // Workers fill slots by index; aggregation below is sequential, so the
    // result is the same for any thread count.
    std::vector<FunctionMeasures> measured(universe.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        while (!failed) {
            const std::size_t i = next.fetch_add(1);
            if (i >= universe.size()) return;
            try {
                measured[i] = hook ? hook(universe[i], o.adeg_cap) : measure_for_sweep(universe[i], o.adeg_cap);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, o.threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    SweepResult r;
    r.mode = o.sample ? "sampled" : "exhaustive";
    for (int n = o.min_arity; n <= o.max_arity; ++n) r.arities.push_back(n);
    r.functions = universe.size();
    r.sample = o.sample;
    r.seed = o.seed;
    r.tolerance = o.tolerance;
    r.adeg_cap = o.adeg_cap;
    r.threads = threads;

    const auto& suite = inequality_suite();
    const auto& ratios = conjecture_ratios();
    for (const auto& q : suite) r.inequalities.push_back({q.name, 0, 0, 0, std::nullopt, {}});
    for (const auto& q : ratios) r.ratios.push_back({q.name, 0, std::nullopt, std::nullopt});

    for (std::size_t i = 0; i < measured.size(); ++i) {
        const auto& m = measured[i];
        const std::string hex = m.f.format_hex();
        for (std::size_t k = 0; k < suite.size(); ++k) {
            auto& tally = r.inequalities[k];
            const auto c = suite[k].evaluate(m);
            if (!c.applicable) {
                ++tally.skipped;
                if (o.keep_rows) r.rows.push_back({hex, tally.name, c.lhs, c.rhs, "skip"});
                continue;
            }
            ++tally.checked;
            const bool ok = passes(c, o.tolerance);
            Witness w{i, hex, c.lhs, c.rhs};
            if (!ok) {
                ++tally.failed;
                if (tally.violations.size() < kViolationsKept) tally.violations.push_back(w);
            }
            if (!tally.worst || c.rhs - c.lhs < tally.worst->rhs - tally.worst->lhs) tally.worst = w;
            if (o.keep_rows) r.rows.push_back({hex, tally.name, c.lhs, c.rhs, ok ? "pass" : "fail"});
        }
        for (std::size_t k = 0; k < ratios.size(); ++k) {
            const auto v = ratios[k].evaluate(m);
            if (!v) continue;
            auto& tally = r.ratios[k];
            ++tally.observed;
            if (!tally.max || *v > *tally.max) {
                tally.max = *v;
                tally.witness = Witness{i, hex, *v, 0.0};
            }
        }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

Json witness_json(const Witness& w) {
    return Json{{"index", w.index}, {"function", w.function}, {"lhs", w.lhs}, {"rhs", w.rhs}};
}

}  // namespace

Json to_json(const SweepResult& r, bool include_timing) {
    Json j;
    j["schema"] = "bfc.sweep/1";
    Json u;
    u["mode"] = r.mode;
    u["arities"] = r.arities;
    u["functions"] = r.functions;
    if (r.sample) {
        u["sample"] = *r.sample;
        u["seed"] = r.seed;
    }
    j["universe"] = u;
    j["tolerance"] = r.tolerance;
    j["adeg_max_arity"] = r.adeg_cap;
    Json ineq = Json::array();
    for (const auto& t : r.inequalities) {
        Json e;
        e["name"] = t.name;
        e["checked"] = t.checked;
        e["passed"] = t.checked - t.failed;
        e["failed"] = t.failed;
        e["skipped"] = t.skipped;
        e["worst"] = t.worst ? witness_json(*t.worst) : Json(nullptr);
        Json v = Json::array();
        for (const auto& w : t.violations) v.push_back(witness_json(w));
        e["violations"] = v;
        ineq.push_back(e);
    }
    j["inequalities"] = ineq;
    Json rat = Json::array();
    for (const auto& t : r.ratios) {
        Json e;
        e["name"] = t.name;
        e["observed"] = t.observed;
        e["max"] = t.max ? Json(*t.max) : Json(nullptr);
        e["witness"] = t.witness ? Json(t.witness->function) : Json(nullptr);
        e["witness_index"] = t.witness ? Json(t.witness->index) : Json(nullptr);
        rat.push_back(e);
    }
    j["conjecture_ratios"] = rat;
    j["violations"] = r.violations();
    j["ok"] = r.ok();
    j["report_hash"] = fingerprint(j);
    if (include_timing) j["timing"] = {{"seconds", r.seconds}, {"threads", r.threads}};
    return j;
}

std::string to_text(const SweepResult& r) {
    std::ostringstream out;
    out << r.mode << " sweep over n =";
    for (int n : r.arities) out << ' ' << n;
    out << ", " << r.functions << " functions";
    if (r.sample) out << " (seed " << r.seed << ")";
    out << "\n";
    char line[200];
    for (const auto& t : r.inequalities) {
        std::snprintf(line, sizeof line, "  %-28s checked %-8llu failed %-6llu skipped %llu\n", t.name.c_str(),
                      static_cast<unsigned long long>(t.checked), static_cast<unsigned long long>(t.failed),
                      static_cast<unsigned long long>(t.skipped));
        out << line;
        for (const auto& w : t.violations)
            out << "    violation " << w.function << " lhs " << format_double(w.lhs) << " rhs " << format_double(w.rhs) << "\n";
    }
    out << "ratios (reported only)\n";
    for (const auto& t : r.ratios) {
        std::snprintf(line, sizeof line, "  %-14s max %-16s witness %s\n", t.name.c_str(),
                      t.max ? format_double(*t.max).c_str() : "-", t.witness ? t.witness->function.c_str() : "-");
        out << line;
    }
    out << (r.ok() ? "OK" : "VIOLATIONS") << " " << r.violations() << " violations\n";
    return out.str();
}

std::string to_csv(const SweepResult& r) {
    std::ostringstream out;
    out << "function,inequality,lhs,rhs,status\n";
    for (const auto& row : r.rows)
        out << row.function << ',' << row.inequality << ',' << format_double(row.lhs) << ',' << format_double(row.rhs) << ','
            << row.status << '\n';
    return out.str();
}

}  // namespace bfc

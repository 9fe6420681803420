#include <doctest.h>

#include <cmath>
#include <random>

#include "bfc/error.hpp"
#include "bfc/report.hpp"
#include "bfc/sweep.hpp"
#include "oracles.hpp"

using namespace bfc;

namespace {

double value(const MeasureReport& r, const std::string& name) {
    const auto* m = r.find(name);
    REQUIRE(m != nullptr);
    REQUIRE(m->value.has_value());
    return *m->value;
}

int sensitivity_oracle(const TruthTable& f) {
    int best = 0;
    for (Input x = 0; x < f.size(); ++x) {
        int s = 0;
        for (int i = 0; i < f.arity(); ++i) s += f(x) != f(x ^ (Input{1} << i));
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

TEST_CASE("measure reports for named families") {
    auto or4 = compute_measures(named_family("OR", 4), {}, "OR");
    CHECK(value(or4, "D") == 4);
    CHECK(value(or4, "s") == 4);
    CHECK(value(or4, "bs") == 4);
    CHECK(value(or4, "C") == 4);
    CHECK(value(or4, "deg") == 4);
    CHECK(value(or4, "deg2") == 4);  // OR's GF(2) expansion has the full monomial
    CHECK(value(or4, "lambda") == doctest::Approx(2.0).epsilon(1e-9));

    auto or2 = compute_measures(TruthTable::parse("2:E"));
    CHECK(value(or2, "lambda") == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    auto par3 = compute_measures(named_family("PARITY", 3));
    CHECK(value(par3, "D") == 3);
    CHECK(value(par3, "deg") == 3);
    CHECK(value(par3, "deg2") == 1);
    CHECK(value(par3, "lambda") == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(value(par3, "avg_sensitivity") == 3.0);

    // Exactness tags: combinatorial and degree measures exact, lambda and adeg toleranced.
    for (const char* exact : {"D", "s", "s0", "s1", "bs", "C", "deg", "deg2", "avg_sensitivity"})
        CHECK(par3.find(exact)->tolerance == 0.0);
    CHECK(par3.find("lambda")->tolerance > 0.0);
    CHECK(par3.find("adeg")->tolerance > 0.0);
}

TEST_CASE("measures beyond an engine cap are skipped, not fatal") {
    auto r = compute_measures(named_family("OR", 9));
    CHECK(!r.find("D")->value);
    CHECK(!r.find("D")->skipped.empty());
    CHECK(!r.find("adeg")->value);
    CHECK(value(r, "s") == 9);
    CHECK(value(r, "lambda") == doctest::Approx(3.0).epsilon(1e-9));
    auto j = to_json(r, false);
    CHECK(j["measures"]["D"].contains("skipped"));

    MeasureOptions o;
    o.query_cap = 9;
    CHECK(value(compute_measures(named_family("OR", 9), o), "D") == 9);
}

TEST_CASE("JSON is identical across runs apart from timing") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        auto f = oracle::random_function(4, rng);
        MeasureOptions o;
        o.certificates = true;
        auto a = to_json(compute_measures(f, o), true);
        auto b = to_json(compute_measures(f, o), true);
        CHECK(a.contains("timing"));
        a.erase("timing");
        b.erase("timing");
        CHECK(a.dump() == b.dump());
        CHECK(to_json(compute_measures(f, o), false).dump() == a.dump());
    }
}

TEST_CASE("certificates in reports pass their verifiers") {
    auto j = certificates_json(named_family("MAJORITY", 3));
    for (const char* k : {"swa1", "mm1", "gsa1_primal", "gsa1_dual"}) CHECK(j[k]["verdict"]["ok"].get<bool>());
    const double lam = oracle::lambda(named_family("MAJORITY", 3));
    CHECK(j["koutsoupias"]["value"].get<double>() == doctest::Approx(lam).epsilon(1e-7));
    CHECK(j["gsa1_primal"]["objective"].get<double>() <= j["gsa1_dual"]["alpha"].get<double>() + 1e-5);
    CHECK(certificates_json(named_family("CONST1", 3)).contains("skipped"));
}

TEST_CASE("sweep measures agree with oracles") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 60; ++t) {
        auto f = oracle::random_function(1 + static_cast<int>(t % 4), rng);
        auto m = measure_for_sweep(f, 6);
        CHECK(m.s == sensitivity_oracle(f));
        CHECK(m.bs == oracle::max_over_inputs(f, oracle::block_sensitivity_at));
        CHECK(m.C == oracle::max_over_inputs(f, oracle::certificate_at));
        CHECK(m.D == oracle::query_complexity(f));
        CHECK(m.deg == oracle::fourier_degree(f));
        CHECK(m.deg2 == oracle::gf2_degree(f));
        CHECK(m.lambda == doctest::Approx(oracle::lambda(f)).epsilon(1e-9));
        REQUIRE(m.adeg);
        CHECK(*m.adeg <= m.deg);
    }
}

TEST_CASE("exhaustive sweep at n = 3") {
    SweepOptions o;
    o.min_arity = o.max_arity = 3;
    o.threads = 2;
    auto r = run_sweep(o);
    CHECK(r.functions == 256);
    CHECK(r.ok());
    CHECK(r.inequalities.size() == inequality_suite().size());
    for (const auto& t : r.inequalities) {
        CHECK(t.checked + t.skipped == 256);
        CHECK(t.worst.has_value());
    }
    // C <= bs*s is skipped exactly for the two constants.
    for (const auto& t : r.inequalities)
        if (t.name == "C <= bs*s") CHECK(t.skipped == 2);
    for (const auto& q : r.ratios) {
        CHECK(q.max.has_value());
        CHECK(q.witness.has_value());
    }
    // Among n = 3 functions lambda never exceeds deg; parity attains it.
    for (const auto& q : r.ratios)
        if (q.name == "lambda/deg") CHECK(*q.max == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sweeps are reproducible across thread counts") {
    SweepOptions o;
    o.min_arity = o.max_arity = 5;
    o.sample = 40;
    o.seed = 7;
    o.threads = 1;
    auto a = to_json(run_sweep(o), false);
    o.threads = 3;
    auto b = to_json(run_sweep(o), false);
    CHECK(a.dump() == b.dump());
    o.seed = 8;
    CHECK(to_json(run_sweep(o), false)["report_hash"] != a["report_hash"]);
}

TEST_CASE("a planted violation is counted with its witness") {
    // Pretend deg = 9 for tables with f(0) = 1 and f(1) = 0.
    SweepOptions o;
    o.min_arity = o.max_arity = 2;
    auto r = run_sweep(o, [](const TruthTable& f, int cap) {
        auto m = measure_for_sweep(f, cap);
        if (f(0) && !f(1)) m.deg = 9;
        return m;
    });
    CHECK(!r.ok());
    for (const auto& t : r.inequalities) {
        if (t.name != "deg <= D") continue;
        CHECK(t.failed == 4);
        REQUIRE(t.violations.size() == 4);
        CHECK(t.violations[0].index == 1);  // code 0b0001 is the first such table
        CHECK(t.violations[0].function == "2:1");
        // Smallest margin: not x_1 (2:5) has D = 1.
        CHECK(t.worst->function == "2:5");
        CHECK(t.worst->rhs == 1);
    }
    CHECK(to_json(r, false)["ok"] == false);
}

TEST_CASE("sweep universe bounds") {
    SweepOptions o;
    o.min_arity = o.max_arity = 5;
    CHECK_THROWS_AS(sweep_universe(o), CapExceeded);
    o.sample = 3;
    CHECK(sweep_universe(o).size() == 3);
    o.min_arity = o.max_arity = 9;
    CHECK_THROWS_AS(sweep_universe(o), CapExceeded);
    o.min_arity = 2;
    o.max_arity = 1;
    CHECK_THROWS_AS(sweep_universe(o), PreconditionError);
    SweepOptions w;
    w.min_arity = 1;
    w.max_arity = 2;
    CHECK(sweep_universe(w).size() == 4 + 16);
}

// Acceptance suite: one PASS/FAIL line per criterion, with the pinned
// tolerances. Exit status is nonzero when a criterion fails for any reason
// other than the documented XOR-OR value conflict (see README).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bfc/adversary.hpp"
#include "bfc/algebraic.hpp"
#include "bfc/combinatorial.hpp"
#include "bfc/error.hpp"
#include "bfc/graph_properties.hpp"
#include "bfc/lp.hpp"
#include "bfc/spectral.hpp"
#include "bfc/sweep.hpp"

using namespace bfc;

namespace {

struct Outcome {
    bool pass = true;
    bool known_conflict = false;  // fails only on the documented family value
    std::string detail;
    std::vector<std::string> notes;
};

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

TruthTable random_table(int n, std::mt19937_64& rng) {
    const Input size = Input{1} << n;
    std::vector<std::uint64_t> words((size + 63) / 64);
    for (auto& w : words) w = rng();
    return TruthTable::from_function(n, [&](Input x) { return (words[x >> 6] >> (x & 63)) & 1; });
}

// ||A_f v|| / ||v|| straight from the hypercube edges.
double edge_ratio(const TruthTable& f, const std::vector<double>& v) {
    double num = 0.0, den = 0.0;
    for (Input x = 0; x < f.size(); ++x) {
        double y = 0.0;
        for (int i = 0; i < f.arity(); ++i) {
            const Input z = x ^ (Input{1} << i);
            if (f(x) != f(z)) y += v[z];
        }
        num += y * y;
        den += v[x] * v[x];
    }
    return std::sqrt(num / den);
}

SweepResult n4_sweep;

Outcome criterion1() {
    Outcome o;
    SweepOptions s;
    s.min_arity = s.max_arity = 4;
    s.tolerance = 1e-6;
    s.threads = threads();
    const auto start = std::chrono::steady_clock::now();
    n4_sweep = run_sweep(s);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const char* required[] = {"deg <= lambda^2", "s <= lambda^2", "lambda <= s", "lambda <= sqrt(s0*s1)",
                              "avg_sensitivity <= lambda", "deg <= s0*s1", "deg2 <= deg", "s <= bs", "bs <= C",
                              "C <= bs*s", "D <= bs*C", "D <= bs*deg", "deg <= D"};
    for (const char* name : required) {
        auto it = std::find_if(n4_sweep.inequalities.begin(), n4_sweep.inequalities.end(),
                               [&](const InequalityTally& t) { return t.name == name; });
        if (it == n4_sweep.inequalities.end()) {
            o.pass = false;
            o.notes.push_back(std::string("missing inequality ") + name);
            continue;
        }
        // Only C <= bs*s may skip, and only on the two constants.
        const std::uint64_t expected_skips = std::string(name) == "C <= bs*s" ? 2 : 0;
        if (it->failed != 0 || it->skipped != expected_skips || it->checked + it->skipped != 65536) {
            o.pass = false;
            o.notes.push_back(std::string(name) + ": failed " + std::to_string(it->failed));
        }
    }
    if (n4_sweep.functions != 65536) o.pass = false;
    if (secs > 600) o.pass = false;
    std::ostringstream d;
    d << n4_sweep.functions << " functions, " << n4_sweep.violations() << " violations, " << secs << " s";
    o.detail = d.str();
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    for (int n = 1; n <= 10; ++n) {
        const auto b = build_signed_hypercube(n);
        const auto rep = verify_signing(b);
        // Independent integer check of B^2 = nI and trace 0.
        const std::size_t m = b.size();
        long long trace = 0;
        bool square = true;
        for (std::size_t r = 0; r < m && square; ++r) {
            trace += b(r, r);
            for (std::size_t c = 0; c < m; ++c) {
                long long acc = 0;
                // Only the n cube neighbours of r can be nonzero in row r.
                for (int i = 0; i < n; ++i) {
                    const std::size_t k = r ^ (std::size_t{1} << i);
                    acc += static_cast<long long>(b(r, k)) * b(k, c);
                }
                if (acc != (r == c ? n : 0)) {
                    square = false;
                    break;
                }
            }
        }
        // Rows must be supported on cube neighbours for the shortcut above.
        bool support = true;
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) {
                const bool neighbour = __builtin_popcountll(r ^ c) == 1;
                if ((b(r, c) != 0) != neighbour) support = false;
            }
        if (!(rep.square_ok && rep.trace_ok && square && trace == 0 && support)) {
            o.pass = false;
            o.notes.push_back("n = " + std::to_string(n) + ": " + rep.failure);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 30) o.pass = false;
    std::ostringstream d;
    d << "B_1..B_10 square, trace and support checked, " << secs << " s";
    o.detail = d.str();
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::mt19937_64 rng(2019);
    double worst_margin = 1e9;
    int total = 0;
    for (int n = 3; n <= 5; ++n) {
        int done = 0;
        while (done < 500) {
            auto f = random_table(n, rng);
            if (degree(f) != n) continue;
            ++done;
            ++total;
            try {
                const auto w = huang_witness(f);
                const double ratio = edge_ratio(f, w.vector);
                // v' must vanish on the minority side of the parity partition.
                const auto part = parity_partition(f);
                const auto& minority = part.agree.size() < part.disagree.size() ? part.agree : part.disagree;
                bool supported = true;
                for (Input x : minority) supported = supported && std::abs(w.vector[x]) <= 1e-9;
                const double margin = ratio - (std::sqrt(static_cast<double>(n)) - 1e-9);
                worst_margin = std::min(worst_margin, margin);
                if (margin < 0 || !supported) {
                    o.pass = false;
                    if (o.notes.size() < 5) o.notes.push_back(f.format_hex() + " ratio " + std::to_string(ratio));
                }
            } catch (const Error& e) {
                o.pass = false;
                if (o.notes.size() < 5) o.notes.push_back(f.format_hex() + ": " + e.what());
            }
        }
    }
    std::ostringstream d;
    d << total << " full-degree functions (500 each at n = 3, 4, 5), min ratio - (sqrt(n) - 1e-9) = " << worst_margin;
    o.detail = d.str();
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::vector<TruthTable> fs;
    for (std::uint64_t code = 1; code < 255; ++code)
        fs.push_back(TruthTable::from_function(3, [code](Input x) { return (code >> x) & 1; }));
    std::mt19937_64 rng(4);
    for (int n = 4; n <= 5; ++n) {
        int k = 0;
        while (k < 1000) {
            auto f = random_table(n, rng);
            if (f.is_constant()) continue;
            fs.push_back(f);
            ++k;
        }
    }
    double worst_k = 0, worst_mm = 0, worst_gap = -1e9;
    for (const auto& f : fs) {
        const auto r = verify_equivalences(f);
        const double dk = std::abs(r.koutsoupias - r.lambda);
        const double dm = std::abs(r.mm1 - r.lambda);
        const double gap = r.gsa1_primal - r.gsa1_dual;
        worst_k = std::max(worst_k, dk);
        worst_mm = std::max(worst_mm, dm);
        worst_gap = std::max(worst_gap, gap);
        if (dk > 1e-7 || dm > 1e-5 || gap > 1e-5 || !r.certificates_ok) {
            o.pass = false;
            if (o.notes.size() < 5) o.notes.push_back(f.format_hex() + ": " + r.failure);
        }
    }
    std::ostringstream d;
    d << fs.size() << " functions; max |K - lambda| " << worst_k << ", max |MM1 - lambda| " << worst_mm
      << ", max primal - dual " << worst_gap;
    o.detail = d.str();
    return o;
}

Outcome criterion5() {
    Outcome o;
    double worst_or = 0, worst_par = 0;
    for (int n = 1; n <= 16; ++n) {
        worst_or = std::max(worst_or, std::abs(lambda(named_family("OR", n)).value - std::sqrt(static_cast<double>(n))));
        worst_par = std::max(worst_par, std::abs(lambda(named_family("PARITY", n)).value - n));
    }
    const bool or_ok = worst_or <= 1e-9;
    const bool par_ok = worst_par <= 1e-9;

    // x_1 xor OR(x_2..x_n): the stated value sqrt(n) against what the graph gives.
    bool xor_sens_ok = true, xor_value_ok = true, xor_matches_product = true;
    double worst_xor = 0;
    for (int n = 2; n <= 12; ++n) {
        const auto f = named_family("XOR-OR", n);
        const auto s = sensitivity(f);
        xor_sens_ok = xor_sens_ok && s.s0 == n && s.s1 == n;
        const double lam = lambda(f).value;
        worst_xor = std::max(worst_xor, std::abs(lam - std::sqrt(static_cast<double>(n))));
        if (std::abs(lam - std::sqrt(static_cast<double>(n))) > 1e-6) xor_value_ok = false;
        // The sensitive graph is K_2 x K_{1,n-1} plus a matching.
        if (std::abs(lam - (1.0 + std::sqrt(n - 1.0))) > 1e-9) xor_matches_product = false;
    }

    bool mm_ok = true;
    int checked = 0;
    for (const auto& name : family_names())
        for (int n = 1; n <= 10; ++n) {
            TruthTable f;
            try {
                f = named_family(name, n);
            } catch (const Error&) {
                continue;  // e.g. AND-OR needs a square arity
            }
            if (f.is_constant()) continue;  // no sensitive pairs to weight
            const auto s = sensitivity(f);
            const double v = mm1_balanced_scheme(f).value;
            ++checked;
            if (v > std::sqrt(static_cast<double>(s.s0) * s.s1) + 1e-9) {
                mm_ok = false;
                o.notes.push_back("mm1_balanced above sqrt(s0 s1) on " + name + " n = " + std::to_string(n));
            }
        }

    o.pass = or_ok && par_ok && xor_sens_ok && xor_value_ok && mm_ok;
    o.known_conflict = !o.pass && or_ok && par_ok && xor_sens_ok && mm_ok && !xor_value_ok && xor_matches_product;
    std::ostringstream d;
    d << "OR n<=16 max err " << worst_or << (or_ok ? " ok" : " BAD") << "; PARITY max err " << worst_par
      << (par_ok ? " ok" : " BAD") << "; XOR-OR s0=s1=n " << (xor_sens_ok ? "ok" : "BAD") << ", lambda = sqrt(n) "
      << (xor_value_ok ? "ok" : "FAILS") << " (max err " << worst_xor << "); mm1_balanced <= sqrt(s0 s1) on "
      << checked << " family tables " << (mm_ok ? "ok" : "BAD");
    o.detail = d.str();
    if (!xor_value_ok)
        o.notes.push_back(std::string("XOR-OR: computed lambda equals 1 + sqrt(n-1) for n = 2..12: ") +
                          (xor_matches_product ? "yes" : "no") +
                          ". The sensitivity graph is K_2 x K_{1,n-1} plus a perfect matching on the remaining "
                          "vertices, whose spectral norm is 1 + sqrt(n-1), not sqrt(n); the two agree only "
                          "up to constants.");
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::ostringstream d;
    for (int n = 3; n <= 4; ++n) {
        const auto start = std::chrono::steady_clock::now();
        const auto props = enumerate_monotone_properties(n);
        const int m = edge_variables(n);
        int good = 0;
        for (const auto& p : props) {
            const auto r = akr_chain_report(p);
            const bool chain = r.lambda >= std::sqrt(static_cast<double>(r.deg)) - 1e-6 &&
                               std::sqrt(static_cast<double>(r.deg)) - 1e-6 >= std::sqrt(static_cast<double>(r.deg2)) - 1e-6;
            const bool evasive = r.query && *r.query == m;
            if (chain && evasive)
                ++good;
            else
                o.notes.push_back(p.id + " at n = " + std::to_string(n) + " fails");
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (good != static_cast<int>(props.size())) o.pass = false;
        if (n == 4 && secs > 300) o.pass = false;
        d << "n = " << n << ": " << good << "/" << props.size() << " properties chain ok and evasive (" << secs << " s); ";
    }
    o.detail = d.str();
    return o;
}

// Independent Farkas check: with y signed so that y_i (a_i x - b_i) <= 0 on
// every feasible x, free variables force y^T A = 0, and y^T b < 0 is a
// contradiction.
bool farkas_ok(const LpProblem& lp, std::vector<double> y) {
    double scale = 0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    if (scale == 0) return false;
    for (double& v : y) v /= scale;
    for (double sign : {1.0, -1.0}) {
        bool signs = true;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double v = sign * y[i];
            const auto rel = lp.constraints[i].relation;
            if (rel == Relation::LessEqual && v < -1e-7) signs = false;
            if (rel == Relation::GreaterEqual && v > 1e-7) signs = false;
        }
        if (!signs) continue;
        double yb = 0;
        std::vector<double> g(lp.variables(), 0.0);
        for (std::size_t i = 0; i < y.size(); ++i) {
            yb += sign * y[i] * lp.constraints[i].bound;
            for (std::size_t j = 0; j < g.size(); ++j) g[j] += sign * y[i] * lp.constraints[i].coefficients[j];
        }
        double gmax = 0;
        for (double v : g) gmax = std::max(gmax, std::abs(v));
        if (gmax <= 1e-7 && yb < -1e-7) return true;
    }
    return false;
}

Outcome criterion7() {
    Outcome o;
    int verdicts = 0, lps = 0;
    const double eps = 1.0 / 3.0;
    for (std::uint64_t code = 0; code < 256; ++code) {
        const auto f = TruthTable::from_function(3, [code](Input x) { return (code >> x) & 1; });
        const auto report = approximate_degree_report(f);
        const int deg = degree(f);
        if (report.value > deg) {
            o.pass = false;
            o.notes.push_back(f.format_hex() + ": adeg > deg");
        }
        for (const auto& v : report.verdicts) {
            ++verdicts;
            const bool ok = v.feasible ? v.max_violation <= 1e-7 : v.certificate_gap > 0;
            if (!ok) {
                o.pass = false;
                o.notes.push_back(f.format_hex() + ": verdict at degree " + std::to_string(v.degree) + " not verified");
            }
        }
        // Re-solve every degree and check the answer without the library's verifiers.
        int first_feasible = -1;
        for (int d = 0; d <= 3; ++d) {
            const auto lp = approximation_lp(f, d, eps);
            const auto res = solve_lp(lp);
            ++lps;
            bool ok = false;
            if (res.status == LpStatus::Optimal) {
                const auto masks = monomials_up_to(3, d);
                ok = true;
                for (Input x = 0; x < 8; ++x) {
                    double q = 0;
                    for (std::size_t k = 0; k < masks.size(); ++k)
                        q += res.point[k] * (__builtin_parityll(masks[k] & x) ? -1.0 : 1.0);
                    const double lo = f(x) ? 1 - eps : 0.0, hi = f(x) ? 1.0 : eps;
                    if (q < lo - 1e-7 || q > hi + 1e-7) ok = false;
                }
                if (ok && first_feasible < 0) first_feasible = d;
            } else if (res.status == LpStatus::Infeasible) {
                ok = farkas_ok(lp, res.farkas);
            }
            if (!ok) {
                o.pass = false;
                o.notes.push_back(f.format_hex() + ": degree " + std::to_string(d) + " " + to_string(res.status) +
                                  " failed the independent re-check");
            }
        }
        if (first_feasible != report.value) {
            o.pass = false;
            o.notes.push_back(f.format_hex() + ": adeg disagrees with the independent solve");
        }
    }
    std::ostringstream d;
    d << "256 functions, adeg <= deg; " << verdicts << " engine verdicts and " << lps
      << " independently re-solved LPs verified within 1e-7";
    o.detail = d.str();
    return o;
}

Outcome criterion8() {
    Outcome o;
    SweepOptions s;
    s.min_arity = 1;
    s.max_arity = 3;
    s.threads = threads();
    const auto small = run_sweep(s);
    std::ostringstream d;
    auto report = [&](const SweepResult& r, const std::string& label) {
        for (const auto& q : r.ratios) {
            if (q.name != "lambda/deg" && q.name != "lambda/adeg") continue;
            if (!q.max || !q.witness) {
                o.pass = false;
                continue;
            }
            d << label << " " << q.name << " max " << *q.max << " at " << q.witness->function << "; ";
        }
    };
    report(small, "n<=3");
    report(n4_sweep, "n=4");
    o.detail = d.str() + "(reported, not asserted)";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
        {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
    };
    int unexpected = 0, passed = 0;
    for (const auto& [id, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        if (o.pass)
            ++passed;
        else if (!o.known_conflict)
            ++unexpected;
        else
            std::printf("    known conflict: the stated value is asymptotic; all other clauses hold\n");
        std::fflush(stdout);
    }
    std::printf("%d/8 criteria pass, %d unexpected failure(s)\n", passed, unexpected);
    return unexpected == 0 ? 0 : 1;
}

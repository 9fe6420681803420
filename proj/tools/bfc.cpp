// bfc: command-line front end. Exit codes: 0 all checks passed, 2 a check
// failed (witness printed), 1 usage or engine error.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "bfc/error.hpp"
#include "bfc/graph_properties.hpp"
#include "bfc/report.hpp"
#include "bfc/spectral.hpp"
#include "bfc/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct Common {
    std::string format;  // empty: the command's default
    double tolerance = bfc::kCliTolerance;
    int threads = 0;
    std::uint64_t seed = 7;
    bool no_timing = false;
};

struct FunctionArg {
    std::string table;
    std::string family;
    int n = -1;
    std::optional<int> inner;
};

void add_function_options(CLI::App* cmd, FunctionArg& arg) {
    cmd->add_option("table", arg.table, "truth table as n:HEX (x_1 is the least significant index bit)");
    cmd->add_option("--family", arg.family, "named family, see `bfc families`");
    cmd->add_option("--n", arg.n, "arity for --family");
    cmd->add_option("--inner", arg.inner, "inner arity for AND-OR");
}

// Returns the table and, for families, the family name.
std::pair<bfc::TruthTable, std::optional<std::string>> resolve(const FunctionArg& arg) {
    if (!arg.table.empty() && !arg.family.empty()) throw bfc::PreconditionError("give a table or --family, not both");
    if (!arg.table.empty()) return {bfc::TruthTable::parse(arg.table), std::nullopt};
    if (arg.family.empty()) throw bfc::PreconditionError("missing function: give n:HEX or --family NAME --n K");
    if (arg.n < 0) throw bfc::PreconditionError("--family needs --n");
    return {bfc::named_family(arg.family, arg.n, arg.inner), arg.family};
}

std::string format_or(const Common& c, const std::string& fallback) {
    const std::string f = c.format.empty() ? fallback : c.format;
    if (f != "json" && f != "csv" && f != "text") throw bfc::PreconditionError("unknown format " + f);
    return f;
}

int thread_count(const Common& c) {
    if (const char* env = std::getenv("BFC_THREADS")) {
        try {
            const int t = std::stoi(env);
            if (t > 0) return t;
        } catch (const std::exception&) {
        }
        throw bfc::PreconditionError(std::string("BFC_THREADS must be a positive integer, got ") + env);
    }
    if (c.threads > 0) return c.threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_measures(const Common& c, const FunctionArg& arg, int query_cap, bool certificates) {
    auto [f, family] = resolve(arg);
    bfc::MeasureOptions o;
    o.query_cap = query_cap;
    o.certificates = certificates;
    const auto report = bfc::compute_measures(f, o, family);
    const auto fmt = format_or(c, "json");
    if (fmt == "json")
        std::cout << bfc::to_json(report, !c.no_timing).dump(2) << "\n";
    else if (fmt == "csv")
        std::cout << bfc::to_csv(report);
    else
        std::cout << bfc::to_text(report);
    return kExitOk;
}

int cmd_verify(const Common& c, bfc::SweepOptions o) {
    o.seed = c.seed;
    o.tolerance = c.tolerance;
    o.threads = thread_count(c);
    const auto fmt = format_or(c, "json");
    o.keep_rows = fmt == "csv";
    const auto r = bfc::run_sweep(o);
    if (fmt == "json")
        std::cout << bfc::to_json(r, !c.no_timing).dump(2) << "\n";
    else if (fmt == "csv")
        std::cout << bfc::to_csv(r);
    else
        std::cout << bfc::to_text(r);
    if (!r.ok()) {
        for (const auto& t : r.inequalities)
            for (const auto& w : t.violations)
                std::cerr << "violation: " << t.name << " at " << w.function << " (" << w.lhs << " > " << w.rhs << ")\n";
        return kExitViolation;
    }
    return kExitOk;
}

int cmd_witness(const Common& c, const FunctionArg& arg) {
    auto [f, family] = resolve(arg);
    if (f.is_constant()) throw bfc::PreconditionError("constant function has no witness");
    const auto top = bfc::top_monomial(f);
    const auto w = bfc::huang_witness(top.restricted);
    const bool certified = w.ratio >= w.bound - bfc::kWitnessTolerance;
    const auto fmt = format_or(c, "csv");
    if (fmt == "json") {
        bfc::Json j;
        j["schema"] = "bfc.witness/1";
        j["function"] = f.format_hex();
        j["top_monomial"] = top.mask;
        j["restricted"] = top.restricted.format_hex();
        j["ratio"] = w.ratio;
        j["bound"] = w.bound;
        j["certified"] = certified;
        j["majority_agrees_with_parity"] = w.majority_agrees_with_parity;
        j["vector"] = w.vector;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "function,top_monomial,restricted,ratio,bound,certified\n"
                  << f.format_hex() << ',' << top.mask << ',' << top.restricted.format_hex() << ','
                  << bfc::format_double(w.ratio) << ',' << bfc::format_double(w.bound) << ','
                  << (certified ? "true" : "false") << "\n\ninput,value\n";
        for (std::size_t x = 0; x < w.vector.size(); ++x) std::cout << x << ',' << bfc::format_double(w.vector[x]) << '\n';
    }
    return certified ? kExitOk : kExitViolation;
}

int cmd_graphprops(const Common& c, int n_vertices, bool enumerate, const std::string& name, bool assert_evasive) {
    if (n_vertices > bfc::kEnumerationVertexCap)
        throw bfc::CapExceeded("graphprops supports --n-vertices <= " + std::to_string(bfc::kEnumerationVertexCap));
    if (enumerate == !name.empty()) throw bfc::PreconditionError("give exactly one of --enumerate and --name");
    std::vector<bfc::GraphProperty> props;
    if (enumerate)
        props = bfc::enumerate_monotone_properties(n_vertices);
    else
        props.push_back(bfc::named_property(name, n_vertices));

    std::vector<bfc::AkrReport> rows;
    bool ok = true;
    for (const auto& p : props) {
        rows.push_back(bfc::akr_chain_report(p));
        const auto& r = rows.back();
        if (!r.chain_ok) {
            ok = false;
            std::cerr << "chain violated: " << r.id << " " << p.table.format_hex() << "\n";
        }
        if (assert_evasive && !r.evasive) {
            ok = false;
            std::cerr << "not evasive: " << r.id << " " << p.table.format_hex() << "\n";
        }
    }
    const auto fmt = format_or(c, "csv");
    if (fmt == "json") {
        bfc::Json j;
        j["schema"] = "bfc.graphprops/1";
        j["n_vertices"] = n_vertices;
        bfc::Json arr = bfc::Json::array();
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const auto& r = rows[k];
            bfc::Json e;
            e["id"] = r.id;
            e["table"] = props[k].table.format_hex();
            e["deg2"] = r.deg2;
            e["deg"] = r.deg;
            e["lambda"] = r.lambda;
            e["D"] = r.query ? bfc::Json(*r.query) : bfc::Json(nullptr);
            e["chain_ok"] = r.chain_ok;
            e["evasive"] = r.evasive;
            if (!r.warning.empty()) e["warning"] = r.warning;
            arr.push_back(e);
        }
        j["properties"] = arr;
        j["ok"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << bfc::akr_csv_header() << "\n";
        for (const auto& r : rows) std::cout << bfc::akr_csv_row(r) << "\n";
    }
    for (const auto& r : rows)
        if (!r.warning.empty()) std::cerr << "warning: " << r.id << ": " << r.warning << "\n";
    return ok ? kExitOk : kExitViolation;
}

int cmd_families(const Common& c, const FunctionArg& arg) {
    const auto fmt = format_or(c, "text");
    if (!arg.family.empty()) {
        auto [f, family] = resolve(arg);
        if (fmt == "json")
            std::cout << bfc::Json{{"family", *family}, {"n", f.arity()}, {"hex", f.format_hex()}}.dump(2) << "\n";
        else
            std::cout << f.format_hex() << "\n";
        return kExitOk;
    }
    if (fmt == "json") {
        std::cout << bfc::Json{{"families", bfc::family_names()}, {"graph_properties", bfc::property_names()}}.dump(2) << "\n";
    } else {
        for (const auto& n : bfc::family_names()) std::cout << n << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boolean function complexity measures"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--format", common.format, "json, csv or text (default depends on the command)");
    app.add_option("--tolerance", common.tolerance, "tolerance for floating comparisons")->capture_default_str();
    app.add_option("--threads", common.threads, "worker threads (BFC_THREADS overrides)");
    app.add_option("--seed", common.seed, "PRNG seed for sampled sweeps")->capture_default_str();
    app.add_flag("--no-timing", common.no_timing, "leave the timing block out of JSON reports");

    FunctionArg measures_arg;
    int query_cap = bfc::kDefaultQueryCap;
    bool certificates = false;
    auto* measures = app.add_subcommand("measures", "all measures of one function");
    add_function_options(measures, measures_arg);
    measures->add_option("--query-cap", query_cap, "largest arity for D")->capture_default_str();
    measures->add_flag("--certificates", certificates, "include adversary certificates");

    bfc::SweepOptions sweep;
    int min_n = -1;
    std::uint64_t sample = 0;
    auto* verify = app.add_subcommand("verify", "inequality sweep over an exhaustive or sampled universe");
    verify->add_option("--max-n", sweep.max_arity, "arity of the universe")->capture_default_str();
    verify->add_option("--min-n", min_n, "smallest arity (defaults to --max-n)");
    verify->add_option("--sample", sample, "functions per arity drawn at random; exhaustive when absent");
    verify->add_option("--adeg-max-n", sweep.adeg_cap, "largest arity at which adeg is computed")->capture_default_str();

    FunctionArg witness_arg;
    auto* witness = app.add_subcommand("witness", "Huang witness on the top-monomial subcube");
    add_function_options(witness, witness_arg);

    int n_vertices = 0;
    bool enumerate = false;
    bool assert_evasive = false;
    std::string prop_name;
    auto* graphprops = app.add_subcommand("graphprops", "monotone graph property chain reports");
    graphprops->add_option("--n-vertices", n_vertices, "number of vertices")->required();
    graphprops->add_flag("--enumerate", enumerate, "every nontrivial monotone property");
    graphprops->add_option("--name", prop_name, "one named property");
    graphprops->add_flag("--assert-evasive", assert_evasive, "also require D = C(n,2)");

    FunctionArg families_arg;
    auto* families = app.add_subcommand("families", "list named families, or print one table");
    families->add_option("--family", families_arg.family, "family name");
    families->add_option("--n", families_arg.n, "arity");
    families->add_option("--inner", families_arg.inner, "inner arity for AND-OR");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*measures) return cmd_measures(common, measures_arg, query_cap, certificates);
        if (*verify) {
            sweep.min_arity = min_n < 0 ? sweep.max_arity : min_n;
            if (sample > 0) sweep.sample = sample;
            return cmd_verify(common, sweep);
        }
        if (*witness) return cmd_witness(common, witness_arg);
        if (*graphprops) return cmd_graphprops(common, n_vertices, enumerate, prop_name, assert_evasive);
        if (*families) return cmd_families(common, families_arg);
    } catch (const bfc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

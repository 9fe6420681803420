#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

using Json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr discarded.
Run bfc(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + BFC_CLI_PATH + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Json json_of(const Run& r) {
    REQUIRE(r.code == 0);
    return Json::parse(r.out);
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("measures command") {
    auto j = json_of(bfc("measures --family OR --n 4"));
    CHECK(j["schema"] == "bfc.measures/1");
    CHECK(j["function"]["hex"] == "4:FFFE");
    CHECK(j["function"]["family"] == "OR");
    CHECK(j["measures"]["D"]["value"] == 4);
    CHECK(j["measures"]["s"]["value"] == 4);
    CHECK(j["measures"]["bs"]["value"] == 4);
    CHECK(j["measures"]["C"]["value"] == 4);
    CHECK(j["measures"]["deg"]["value"] == 4);
    CHECK(j["measures"]["deg2"]["value"] == 4);
    CHECK(j["measures"]["D"]["exact"] == true);
    CHECK(j["measures"]["lambda"]["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(j["measures"]["lambda"].contains("tolerance"));
    CHECK(j.contains("timing"));

    auto or2 = json_of(bfc("measures 2:E"));
    CHECK(or2["measures"]["lambda"]["value"].get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    auto par = json_of(bfc("measures --family PARITY --n 3"));
    CHECK(par["measures"]["D"]["value"] == 3);
    CHECK(par["measures"]["deg"]["value"] == 3);
    CHECK(par["measures"]["deg2"]["value"] == 1);
    CHECK(par["measures"]["lambda"]["value"].get<double>() == doctest::Approx(3.0).epsilon(1e-9));

    auto big = json_of(bfc("measures --family OR --n 10"));
    CHECK(big["measures"]["D"].contains("skipped"));
    CHECK(big["measures"]["adeg"].contains("skipped"));

    auto text = bfc("measures 3:E8 --format text");
    CHECK(text.code == 0);
    CHECK(text.out.find("lambda") != std::string::npos);
    auto csv = lines(bfc("measures 3:E8 --format csv").out);
    CHECK(csv.size() == 12);
    CHECK(csv[0] == "function,measure,value,exact,tolerance,skipped");
}

TEST_CASE("measures JSON is byte-identical modulo timing") {
    const auto a = bfc("measures 4:6A3C --certificates --no-timing");
    const auto b = bfc("measures 4:6A3C --certificates --no-timing");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto ja = json_of(bfc("measures 4:6A3C --certificates"));
    auto jb = json_of(bfc("measures 4:6A3C --certificates"));
    ja.erase("timing");
    jb.erase("timing");
    CHECK(ja == jb);
    CHECK(ja["certificates"]["gsa1_dual"]["verdict"]["ok"] == true);
}

TEST_CASE("verify command") {
    auto j = json_of(bfc("verify --max-n 3 --no-timing"));
    CHECK(j["universe"]["mode"] == "exhaustive");
    CHECK(j["universe"]["functions"] == 256);
    CHECK(j["violations"] == 0);
    CHECK(j["ok"] == true);
    for (const auto& r : j["conjecture_ratios"]) {
        CHECK(!r["max"].is_null());
        CHECK(!r["witness"].is_null());
    }

    // Sampled runs echo the seed and agree across thread counts.
    const auto one = bfc("verify --max-n 6 --sample 1000 --seed 7 --adeg-max-n 0 --threads 1 --no-timing");
    const auto many = bfc("verify --max-n 6 --sample 1000 --seed 7 --adeg-max-n 0 --no-timing", "BFC_THREADS=3");
    CHECK(one.code == 0);
    CHECK(one.out == many.out);
    auto js = Json::parse(one.out);
    CHECK(js["universe"]["seed"] == 7);
    CHECK(js["universe"]["sample"] == 1000);
    CHECK(js["violations"] == 0);

    auto timed = json_of(bfc("verify --max-n 2", "BFC_THREADS=2"));
    CHECK(timed["timing"]["threads"] == 2);

    auto csv = lines(bfc("verify --max-n 2 --format csv").out);
    CHECK(csv.size() == 1 + 16 * 14);
    CHECK(csv[0] == "function,inequality,lhs,rhs,status");
}

TEST_CASE("witness command") {
    auto and3 = json_of(bfc("witness --family AND --n 3 --format json"));
    CHECK(and3["ratio"].get<double>() >= std::sqrt(3.0) - 1e-9);
    CHECK(and3["certified"] == true);
    auto par4 = json_of(bfc("witness --family PARITY --n 4 --format json"));
    CHECK(par4["ratio"].get<double>() >= 2.0 - 1e-9);
    auto or4 = json_of(bfc("witness --family OR --n 4 --format json"));
    CHECK(or4["ratio"].get<double>() >= 2.0 - 1e-9);
    CHECK(or4["vector"].size() == 16);

    // x_1 as a 3-variable table restricts to a 1-variable cube.
    auto x1 = json_of(bfc("witness 3:AA --format json"));
    CHECK(x1["restricted"] == "1:2");

    auto csv = lines(bfc("witness --family AND --n 3").out);
    REQUIRE(csv.size() == 2 + 1 + 1 + 8);
    CHECK(csv[0] == "function,top_monomial,restricted,ratio,bound,certified");
    CHECK(csv[3] == "input,value");
}

TEST_CASE("graphprops command") {
    auto rows = lines(bfc("graphprops --n-vertices 4 --name has-edge").out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "n_vertices,id,deg2,deg,lambda,D,chain_ok");
    CHECK(rows[1] == "4,has-edge,6,6,2.449489743,6,true");

    auto three = lines(bfc("graphprops --n-vertices 3 --enumerate").out);
    CHECK(three.size() == 1 + 3);
    for (std::size_t k = 1; k < three.size(); ++k) CHECK(three[k].substr(three[k].size() - 4) == "true");

    auto j = json_of(bfc("graphprops --n-vertices 4 --enumerate --assert-evasive --format json"));
    CHECK(j["properties"].size() == 22);
    for (const auto& p : j["properties"]) {
        CHECK(p["D"] == 6);
        CHECK(p["chain_ok"] == true);
    }
}

TEST_CASE("families command") {
    CHECK(bfc("families --family OR --n 2").out == "2:E\n");
    CHECK(bfc("families --family PARITY --n 3").out == "3:96\n");
    CHECK(lines(bfc("families").out).size() == 9);
}

TEST_CASE("exit codes") {
    CHECK(bfc("measures 2:Z").code == 1);
    CHECK(bfc("measures").code == 1);
    CHECK(bfc("nonsense").code == 1);
    CHECK(bfc("verify --max-n 5").code == 1);
    CHECK(bfc("verify --max-n 9 --sample 3").code == 1);
    CHECK(bfc("witness --family CONST1 --n 3").code == 1);
    CHECK(bfc("graphprops --n-vertices 6 --enumerate").code == 1);
    CHECK(bfc("graphprops --n-vertices 4").code == 1);
    CHECK(bfc("measures 2:E --format yaml").code == 1);
    CHECK(bfc("verify --max-n 2", "BFC_THREADS=zero").code == 1);
    CHECK(bfc("--help").code == 0);
}

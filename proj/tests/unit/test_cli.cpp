#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dirnet/cli/commands.hpp"
#include "dirnet/cli/csv.hpp"
#include "dirnet/cli/params.hpp"
#include "dirnet/cli/range.hpp"
#include "dirnet/cli/sweep.hpp"
#include "dirnet/errors.hpp"
#include "support/oracles.hpp"

using namespace dirnet;
using namespace dirnet::cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Table table_of(const std::string& csv) {
    std::istringstream in(csv);
    return read_csv(in);
}

std::size_t column(const Table& t, const std::string& name) {
    for (std::size_t c = 0; c < t.header.size(); ++c)
        if (t.header[c] == name) return c;
    FAIL("missing column " << name);
    return 0;
}

std::string report_value(const std::string& report, const std::string& key) {
    std::istringstream in(report);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
    return {};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("dirnet_test_" + name);
}

}  // namespace

TEST_CASE("range grammar") {
    auto r = parse_range("-3:3:601");
    CHECK(r.start == -3.0);
    CHECK(r.stop == 3.0);
    CHECK(r.steps == 601);
    const auto v = r.values();
    CHECK(v.size() == 601);
    CHECK(v.back() == 3.0);
    r = parse_range("0:0:1");
    CHECK(r.values() == std::vector<double>{0.0});
    r = parse_range("0.25");
    CHECK(r.steps == 1);
    CHECK_THROWS_AS(parse_range("1:2:1"), UsageError);
    CHECK_THROWS_AS(parse_range("1:2"), UsageError);
    CHECK_THROWS_AS(parse_range("1:2:0"), UsageError);
    CHECK_THROWS_AS(parse_range("1:x:3"), UsageError);
}

TEST_CASE("complex and initial-state grammar") {
    CHECK(parse_complex_token("1.5") == cplx(1.5, 0.0));
    CHECK(parse_complex_token("-0.2i") == cplx(0.0, -0.2));
    CHECK(parse_complex_token("0.3+0.4i") == cplx(0.3, 0.4));
    CHECK(parse_complex_token("0.3-4e-2i") == cplx(0.3, -0.04));
    CHECK(parse_complex_token("1e-3+i") == cplx(1e-3, 1.0));
    CHECK(parse_alpha("0.5,0.25") == cplx(0.5, 0.25));
    CHECK(parse_alpha("0.7") == cplx(0.7, 0.0));
    CHECK_THROWS_AS(parse_alpha("a"), UsageError);

    const auto init = parse_init("1,1,1,0");
    CHECK(std::abs(init.c_g1 - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(init.c_g2 == cplx(1.0));
    CHECK(init.c_m2 == cplx(0.0));
    CHECK_THROWS_AS(parse_init("1,1,1"), UsageError);
    CHECK_THROWS_AS(parse_init("0,0,1,0"), Error);
}

TEST_CASE("config file, then flags") {
    std::istringstream cfg("# strong tip coupling\n n = 3\ng-inout = 1.5  # tip\n\nalpha = 0.2,0.1\ninit = 1,0,1,1\n");
    Params p;
    load_config(cfg, p);
    CHECK(p.n == 3);
    CHECK(p.g_inout == 1.5);
    CHECK(p.alpha == cplx(0.2, 0.1));
    CHECK(std::abs(p.init.c_m2 - 1.0 / std::sqrt(2.0)) < 1e-15);

    std::istringstream bad("n = 3\nfrobnicate = 2\n");
    CHECK_THROWS_AS(load_config(bad, p), UsageError);
    std::istringstream no_eq("n 3\n");
    CHECK_THROWS_AS(load_config(no_eq, p), UsageError);

    const auto path = temp_path("config.txt");
    {
        std::ofstream f(path);
        f << "alpha = 0.01\nn = 3\n";
    }
    const auto from_file = run({"entangle", "--config", path.string()});
    const auto overridden = run({"entangle", "--config", path.string(), "--alpha", "0.5", "--n", "2"});
    const auto plain = run({"entangle"});
    REQUIRE(from_file.code == 0);
    CHECK(std::stod(report_value(from_file.out, "fidelity")) > 0.99);
    CHECK(overridden.out == plain.out);
    std::filesystem::remove(path);
}

TEST_CASE("network parameters from flags") {
    Params p;
    apply_setting(p, "--delta0", "0.1");
    apply_setting(p, "ddelta", "0.05");
    apply_setting(p, "gamma-qd", "0.002");
    const auto c = p.network();
    CHECK(c.qd1.delta == doctest::Approx(0.15));
    CHECK(c.qd2.delta == doctest::Approx(0.05));
    CHECK(c.qd2.gamma == 0.002);
    CHECK_THROWS_AS(apply_setting(p, "n", "2.5"), UsageError);
    CHECK_THROWS_AS(apply_setting(p, "qd1", "x"), UsageError);
}

TEST_CASE("CSV round trip is exact") {
    oracle::Rng rng(4);
    Table t;
    t.header = {"a", "b", "c"};
    for (int k = 0; k < 200; ++k)
        t.rows.push_back({rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.integer(-300, 300)), rng.uniform(0.0, 1.0) / 3.0,
                          k == 0 ? std::nan("") : static_cast<double>(k)});
    std::ostringstream out;
    write_csv(out, t);
    const auto back = table_of(out.str());
    REQUIRE(back.header == t.header);
    REQUIRE(back.rows.size() == t.rows.size());
    CHECK(std::isnan(back.rows[0][2]));
    for (std::size_t r = 1; r < t.rows.size(); ++r) CHECK(back.rows[r] == t.rows[r]);
    CHECK(format_number(0.1).size() >= 3);
    CHECK(format_number(1.0 / 3.0).size() >= 14);
}

TEST_CASE("spectrum command") {
    const auto mm = run({"spectrum", "--n", "3", "--g-inout", "0.5", "--gamma0", "0.1", "--j", "0.3", "--gamma-qd",
                         "0.001", "--qd1", "m", "--qd2", "m", "--dw", "-3:3:601"});
    REQUIRE(mm.code == 0);
    const auto t = table_of(mm.out);
    CHECK(t.rows.size() == 601);
    CHECK(t.header.size() == 5);
    CHECK(t.rows[300][0] == doctest::Approx(0.0));
    CHECK(t.rows[300][column(t, "T_s1s1_mm")] < 0.06);

    const auto gm = table_of(run({"spectrum", "--n", "3", "--qd1", "g", "--qd2", "m", "--dw", "-3:3:601"}).out);
    CHECK(gm.rows[300][column(gm, "T_s1s1_gm")] > 0.99);

    const auto one = run({"spectrum", "--dw", "0:0:1"});
    CHECK(table_of(one.out).rows.size() == 1);

    const auto all = table_of(run({"spectrum", "--branches", "all", "--source2", "--dw", "0"}).out);
    CHECK(all.header.size() == 1 + 2 * 4 * 4);
    CHECK(all.rows[0][column(all, "T_s2s1_mg")] < 1e-20);
}

TEST_CASE("dir command") {
    const auto r = run({"dir", "--n", "1", "--dw", "-1:1:201"});
    REQUIRE(r.code == 0);
    const auto t = table_of(r.out);
    CHECK(t.header == std::vector<std::string>{"dw", "T", "R", "A", "dipole_loss"});
    CHECK(t.rows.size() == 201);
    CHECK(t.rows[100][2] > 0.99);
    const auto bare = table_of(run({"dir", "--n", "2", "--qd1", "m", "--dw", "0", "--g-inout", "2"}).out);
    CHECK(bare.rows[0][1] > 0.9);
}

TEST_CASE("entangle command") {
    const auto r = run({"entangle"});
    REQUIRE(r.code == 0);
    CHECK(std::stod(report_value(r.out, "fidelity")) == doctest::Approx(0.97478).epsilon(1e-4));
    CHECK(report_value(r.out, "rho23").size() > 0);
    CHECK(report_value(r.out, "beta").size() > 0);

    const auto sweep = run({"entangle", "--sweep", "alpha=0.01:10:40"});
    REQUIRE(sweep.code == 0);
    const auto t = table_of(sweep.out);
    CHECK(t.header == std::vector<std::string>{"alpha", "fidelity", "efficiency", "concurrence_lb"});
    for (std::size_t k = 1; k < t.rows.size(); ++k) {
        CHECK(t.rows[k][1] <= t.rows[k - 1][1] + 1e-12);
        CHECK(t.rows[k][2] >= t.rows[k - 1][2] - 1e-12);
    }
    CHECK(t.rows.back()[1] == doctest::Approx(0.5).epsilon(0.02));
    CHECK(t.rows.back()[2] == doctest::Approx(0.5).epsilon(0.02));

    auto eta = [](const char* kappa) {
        return std::stod(report_value(run({"entangle", "--kappa", kappa}).out, "efficiency"));
    };
    CHECK(eta("0.5") > eta("0.000001"));
    CHECK(eta("0.5") < eta("1"));

    const auto none = run({"entangle", "--init", "1,0,1,0"});
    CHECK(none.code == kExitError);
    CHECK(none.err.find("drain 1") != std::string::npos);
}

TEST_CASE("sweep grid order and metrics") {
    const auto r = run({"sweep", "--axis", "g_inout=0.5:1.5:3", "--axis", "gamma0=0.01:1:4", "--metrics",
                        "fidelity,rho23,T_s1d1_gm,beta,mu1_gm,arm_R_g"});
    REQUIRE(r.code == 0);
    const auto t = table_of(r.out);
    CHECK(t.header == std::vector<std::string>{"g_inout", "gamma0", "fidelity", "rho23_re", "rho23_im", "T_s1d1_gm",
                                               "beta_re", "beta_im", "mu1_gm_re", "mu1_gm_im", "arm_R_g"});
    REQUIRE(t.rows.size() == 12);
    CHECK(t.rows[0][0] == 0.5);
    CHECK(t.rows[0][1] == 0.01);
    CHECK(t.rows[1][0] == 0.5);
    CHECK(t.rows[1][1] == 0.34);
    CHECK(t.rows[4][0] == 1.0);
    for (const auto& row : t.rows) {
        CHECK(std::abs(row[6]) < 1e-12);
        CHECK(row[7] == doctest::Approx(0.5));
    }
    CHECK(run({"sweep", "--axis", "bogus=0:1:3"}).code == kExitError);
    CHECK(run({"sweep", "--axis", "alpha=0:1:3", "--metrics", "nonsense"}).code == kExitError);
    CHECK(run({"sweep", "--axis", "n=2:3:3"}).code == kExitError);
    CHECK(run({"sweep", "--axis", "alpha=0.1:1:2", "--axis", "alpha=0.1:1:2"}).code == kExitError);
    CHECK(run({"sweep"}).code == kExitError);
    const auto n_axis = table_of(run({"sweep", "--axis", "n=2:5:4"}).out);
    CHECK(n_axis.rows.size() == 4);
}

TEST_CASE("no-detection grid points become nan with a warning") {
    const auto r = run({"sweep", "--axis", "alpha=0:1:3"});
    REQUIRE(r.code == 0);
    const auto t = table_of(r.out);
    CHECK(std::isnan(t.rows[0][1]));
    CHECK_FALSE(std::isnan(t.rows[1][1]));
    CHECK(r.err.find("nan") != std::string::npos);
}

TEST_CASE("one-point sweep reproduces entangle digit for digit") {
    const auto single = run({"entangle", "--alpha", "0.37", "--n", "3", "--delta0", "0.05"});
    const auto grid = run({"sweep", "--n", "3", "--delta0", "0.05", "--axis", "alpha=0.37:0.37:1", "--metrics",
                           "fidelity,efficiency,concurrence_lb"});
    REQUIRE(single.code == 0);
    REQUIRE(grid.code == 0);
    std::istringstream in(grid.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(row == "0.37," + report_value(single.out, "fidelity") + "," + report_value(single.out, "efficiency") + "," +
                     report_value(single.out, "concurrence_lb"));
}

TEST_CASE("identical flags give byte-identical CSV regardless of threads") {
    SweepSpec spec;
    spec.axes = {parse_axis("g_inout=0.05:3:13"), parse_axis("gamma0=0.001:1.2:7")};
    spec.metrics = {"fidelity", "efficiency", "rho23"};
    const Params p;
    std::ostringstream a, b, c;
    write_csv(a, run_sweep(p, spec, 1).table);
    write_csv(b, run_sweep(p, spec, 4).table);
    write_csv(c, run_sweep(p, spec, 4).table);
    CHECK(a.str() == b.str());
    CHECK(b.str() == c.str());
}

TEST_CASE("--out writes the file") {
    const auto path = temp_path("out.csv");
    const auto r = run({"dir", "--n", "1", "--dw", "-1:1:5", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    CHECK(read_csv(f).rows.size() == 5);
    std::filesystem::remove(path);
}

TEST_CASE("validate command") {
    auto r = run({"validate", "--omega0", "10"});
    CHECK(r.code == kExitWarning);
    CHECK(r.out.find("weak_coupling = pass") != std::string::npos);
    CHECK(r.out.find("unchecked") != std::string::npos);

    r = run({"validate", "--omega0", "10", "--n-bar", "0.25", "--dtau", "100"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("ratio=72 ") != std::string::npos);

    r = run({"validate", "--n-bar", "0.25", "--dtau", "100"});
    CHECK(r.code == kExitWarning);
    CHECK(r.out.find("weak_coupling = unchecked") != std::string::npos);

    r = run({"validate", "--omega0", "10", "--g-inout", "3", "--n-bar", "0.25", "--dtau", "100"});
    CHECK(r.code == kExitWarning);
    CHECK(r.out.find("fail") != std::string::npos);
}

TEST_CASE("compute commands flag weak-coupling violations") {
    const auto r = run({"entangle", "--omega0", "5"});
    CHECK(r.code == kExitWarning);
    CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitError);
    CHECK(run({"entangle", "--no-such-flag"}).code == kExitError);
    CHECK(run({"entangle", "--n", "1"}).code == kExitError);
    CHECK(run({"entangle", "--kappa", "2"}).code == kExitError);
    CHECK(run({"entangle", "--config", "/nonexistent/file"}).code == kExitError);
    CHECK(run({"spectrum", "--dw", "1:2:1"}).code == kExitError);
    CHECK(run({"entangle", "--dw", "-1:1:3"}).code == kExitError);
    CHECK(run({"--help"}).code == kExitOk);
}

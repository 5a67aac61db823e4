#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cli_support.hpp"
#include "oracles.hpp"
#include "urel/cli.hpp"
#include "urel/wavecurves.hpp"

using namespace urel;
using namespace urel::cli;
using namespace cli_support;

namespace {

const char* kEos = R"("eos": {"family": "polytropic", "gamma": 1.3333333333333333})";

int run(Command cmd, const fs::path& dir, const std::string& config, std::string* log = nullptr,
        std::optional<std::uint64_t> seed = std::nullopt) {
    const fs::path cfg = write_file(dir / "config.json", config);
    std::ostringstream os;
    const int rc = run_command(cmd, cfg, dir / "out", seed, os);
    if (log) *log = os.str();
    return rc;
}

std::string riemann_config(const std::string& left, const std::string& right, int cells = 50) {
    return std::string("{") + kEos + R"(, "problem": {"type": "riemann", "left": )" + left + R"(, "right": )" +
           right + R"(}, "grid": {"cells": )" + std::to_string(cells) + R"(, "domain": [-1, 1], "t_end": 0.4}})";
}

}  // namespace

TEST_CASE("number formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(format_number(x)) == x);
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("riemann command") {
    const fs::path dir = scratch_dir("riemann");
    SUBCASE("shock tube") {
        CHECK(run(Command::riemann, dir, riemann_config(R"({"rho": 1, "v": 0, "S": 1})", R"({"rho": 0.1, "v": 0, "S": 1})")) == kOk);
        const Table t = read_csv(dir / "out" / "profile.csv");
        CHECK(t.header == std::vector<std::string>{"x", "rho", "v", "S", "r", "s", "Sigma"});
        CHECK(t.rows.size() == 50);
        const auto fan = nlohmann::json::parse(read_file(dir / "out" / "fan.json"));
        CHECK(fan["region"] == "IV");
        CHECK(fan["states"]["mid_left"]["rho"].get<double>() == fan["states"]["mid_right"]["rho"].get<double>());
    }
    SUBCASE("identical states give constant data") {
        CHECK(run(Command::riemann, dir, riemann_config(R"({"rho": 2, "v": 0.3, "S": 1.5})", R"({"rho": 2, "v": 0.3, "S": 1.5})", 37)) == kOk);
        const Table t = read_csv(dir / "out" / "profile.csv");
        CHECK(t.rows.size() == 37);
        for (const auto& row : t.rows) {
            CHECK(row[1] == 2.0);
            CHECK(row[2] == 0.3);
            CHECK(row[3] == 1.5);
        }
    }
}

TEST_CASE("config errors are reported with their location") {
    const fs::path dir = scratch_dir("errors");
    std::string log;
    CHECK(run(Command::riemann, dir, R"({"eos": {"gamma": 1.3}, "problem": {)", &log) == kConfigError);
    CHECK(log.find("line") != std::string::npos);

    std::string bad = riemann_config(R"({"rho": 1, "v": 0, "S": 1})", R"({"rho": 0.1, "v": 0, "S": 1})");
    bad.insert(1, R"("colour": "red", )");
    CHECK(run(Command::riemann, dir, bad, &log) == kConfigError);
    CHECK(log.find("colour") != std::string::npos);

    CHECK(run(Command::riemann, dir, riemann_config(R"({"rho": 1, "v": 1.2, "S": 1})", R"({"rho": 0.1, "v": 0, "S": 1})"), &log) ==
          kConfigError);
    CHECK(log.find("/problem/left") != std::string::npos);

    CHECK(run(Command::riemann, dir, riemann_config(R"({"rho": 1, "v": 0, "S": 1})", R"({"rho": 0.1, "v": 0, "S": 1})", 0), &log) ==
          kConfigError);
    CHECK(log.find("/grid/cells") != std::string::npos);
    // nothing was written
    CHECK_FALSE(fs::exists(dir / "out" / "fan.json"));

    const std::string glimm = std::string("{") + kEos +
                              R"(, "problem": {"type": "riemann", "left": {"rho": 1, "v": 0, "S": 1}, "right": {"rho": 0.1, "v": 0, "S": 1}},
           "grid": {"cells": 20, "domain": [-1, 1], "t_end": 2.0}})";
    CHECK(run(Command::glimm, dir, glimm, &log) == kConfigError);
    CHECK(log.find("/grid") != std::string::npos);
    CHECK(run(Command::glimm, dir, glimm, &log, 5) == kConfigError);

    const std::string eos_bad = R"({"eos": {"family": "polytropic", "gamma": 2.5}, "curves": {}})";
    CHECK(run(Command::curves, dir, eos_bad, &log) == kConfigError);
    CHECK(log.find("/eos") != std::string::npos);
}

TEST_CASE("glimm command") {
    const fs::path dir = scratch_dir("glimm");
    SUBCASE("constant data") {
        const std::string cfg = std::string("{") + kEos +
                                R"(, "problem": {"type": "riemann", "left": {"rho": 1, "v": 0.2, "S": 1}, "right": {"rho": 1, "v": 0.2, "S": 1}},
               "grid": {"cells": 30, "domain": [-1, 1], "t_end": 0.3}, "sampling": {"kind": "pseudorandom", "seed": 4},
               "output": {"stride": 5}})";
        CHECK(run(Command::glimm, dir, cfg) == kOk);
        const Table t = read_csv(dir / "out" / "diagnostics.csv");
        CHECK(t.header == std::vector<std::string>{"level", "t", "F", "L", "var_rs", "var_lnrho", "var_rapidity", "var_sigma"});
        for (const auto& row : t.rows)
            for (std::size_t c = 2; c < row.size(); ++c) CHECK(row[c] == 0.0);
        CHECK(fs::exists(dir / "out" / "profile_000005.csv"));
        CHECK(fs::exists(dir / "out" / "summary.json"));
    }
    SUBCASE("shock tube F column non-increasing and seed reruns identical") {
        const std::string cfg = std::string("{") + kEos +
                                R"(, "problem": {"type": "piecewise", "breakpoints": [0], "states": [{"rho": 1, "v": 0, "S": 1}, {"rho": 0.1, "v": 0, "S": 1}]},
               "grid": {"cells": 60, "domain": [-1, 1], "t_end": 0.4}, "sampling": {"kind": "pseudorandom", "seed": 1}})";
        CHECK(run(Command::glimm, dir, cfg, nullptr, 17) == kOk);
        const Table t = read_csv(dir / "out" / "diagnostics.csv");
        const std::size_t F = t.column("F");
        for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i][F] <= t.rows[i - 1][F] * (1 + 1e-12));
        const auto first = snapshot(dir / "out");
        fs::remove_all(dir / "out");
        CHECK(run(Command::glimm, dir, cfg, nullptr, 17) == kOk);
        CHECK(snapshot(dir / "out") == first);
        const auto summary = nlohmann::json::parse(read_file(dir / "out" / "summary.json"));
        CHECK(summary["sampling"]["seed"] == 17);
    }
}

TEST_CASE("curves command") {
    const fs::path dir = scratch_dir("curves");
    const std::string cfg = std::string("{") + kEos + R"(, "curves": {"sigma_max": 2, "points": 21}})";
    CHECK(run(Command::curves, dir, cfg) == kOk);
    const Table s1 = read_csv(dir / "out" / "shock_1.csv"), s3 = read_csv(dir / "out" / "shock_3.csv");
    const Table r1 = read_csv(dir / "out" / "rarefaction_1.csv");
    CHECK(s1.header == std::vector<std::string>{"sigma", "r", "s", "Sigma", "speed", "dr", "ds", "dSigma"});
    CHECK(s1.rows.size() == 21);
    CHECK(s1.rows[0][0] == 0.0);
    CHECK(s1.rows[0][s1.column("dr")] == 0.0);
    CHECK(s1.rows[0][s1.column("dSigma")] == 0.0);
    CHECK(r1.rows[0][r1.column("dr")] == 0.0);
    // mirror symmetry: the 1-table is the 3-table with r and s swapped
    for (std::size_t i = 0; i < s1.rows.size(); ++i) {
        CHECK(oracle::close(s1.rows[i][s1.column("dr")], s3.rows[i][s3.column("ds")], 1e-12, 1e-14));
        CHECK(oracle::close(s1.rows[i][s1.column("ds")], s3.rows[i][s3.column("dr")], 1e-12, 1e-14));
    }
    const Table j = read_csv(dir / "out" / "sigma_jump.csv");
    CHECK(j.header == std::vector<std::string>{"sigma", "delta", "ddelta_dsigma", "omega", "ddelta_domega"});
    const double g = 4.0 / 3.0, a2 = g - 1.0;
    for (const auto& row : j.rows) {
        const double sg = row[0];
        const double direct = 0.5 * g * std::log((1 + a2 * std::exp(sg)) / (1 + a2 * std::exp(-sg))) - a2 * sg;
        CHECK(oracle::close(row[1], direct, 1e-12, 1e-15));
    }
}

TEST_CASE("interactions command") {
    const fs::path dir = scratch_dir("interactions");
    const std::string cfg = std::string("{") + kEos + R"(, "sweep": {"count": 1, "samples_csv": true, "curated": false}})";
    CHECK(run(Command::interactions, dir, cfg) == kOk);
    const Table t = [&] {
        // topology column is text; read the row count only
        std::ifstream in(dir / "out" / "samples.csv");
        Table out;
        std::string line;
        std::size_t n = 0;
        while (std::getline(in, line)) ++n;
        out.rows.resize(n - 1);
        return out;
    }();
    CHECK(t.rows.size() == 1);
    const auto j = nlohmann::json::parse(read_file(dir / "out" / "sweep.json"));
    CHECK(j["count"] == 1);
    CHECK(j["interaction_violations"] == 0);
    CHECK(j["constants"].contains("M_bar"));
}

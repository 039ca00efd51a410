#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "cli_config.hpp"
#include "cli_run.hpp"

using casimir_cli::ConfigError;
using casimir_cli::GridSpec;
using casimir_cli::Route;
using casimir_cli::RunConfig;
using casimir_cli::SweepVariable;

namespace {

// Minimal CSV reader for the tool's output: drops '#' comment lines, takes
// the first remaining line as the header, and honors quoted fields.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }
};

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

Table parse_csv(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (table.header.empty())
            table.header = split_csv_line(line);
        else
            table.rows.push_back(split_csv_line(line));
    }
    return table;
}

double cell(const Table& t, std::size_t row, const std::string& name) {
    const int col = t.column(name);
    REQUIRE(col >= 0);
    REQUIRE(row < t.rows.size());
    return std::strtod(t.rows[row][col].c_str(), nullptr);
}

const std::string& cell_text(const Table& t, std::size_t row, const std::string& name) {
    const int col = t.column(name);
    REQUIRE(col >= 0);
    REQUIRE(row < t.rows.size());
    return t.rows[row][col];
}

std::string offending_key(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.key;
    }
    return "";
}

}  // namespace

TEST_CASE("echoed configuration reproduces itself through the parser") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.force.medium.env.gamma0 = 0.125;
    cfg.force.thermal.temperature = 0.75;
    cfg.route = Route::Matsubara;
    cfg.sweep_variable = SweepVariable::OmegaP;
    cfg.sweep.log_spacing = true;
    cfg.force.quad.rel_tol = 3e-8;

    std::ostringstream echoed;
    casimir_cli::echo_config(echoed, cfg, "");

    RunConfig round = casimir_cli::default_run_config();
    casimir_cli::apply_config_text(round, echoed.str());
    std::ostringstream again;
    casimir_cli::echo_config(again, round, "");
    CHECK(again.str() == echoed.str());
}

TEST_CASE("log spacing doubles from one to sixteen") {
    const std::vector<double> pts =
        casimir_cli::grid_points(GridSpec{1.0, 16.0, 5, true});
    REQUIRE(pts.size() == 5);
    const double expect[] = {1.0, 2.0, 4.0, 8.0, 16.0};
    for (int i = 0; i < 5; ++i)
        CHECK(std::abs(pts[i] - expect[i]) <= 1e-12 * expect[i]);
}

TEST_CASE("linear spacing hits both endpoints exactly") {
    const std::vector<double> pts =
        casimir_cli::grid_points(GridSpec{0.3, 0.7, 5, false});
    REQUIRE(pts.size() == 5);
    CHECK(pts.front() == 0.3);
    CHECK(pts.back() == 0.7);
    CHECK(pts[2] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("config errors name the offending key") {
    RunConfig cfg = casimir_cli::default_run_config();
    CHECK(offending_key([&] {
              casimir_cli::apply_assignment(cfg, "medium.omega_q", "1");
          }) == "medium.omega_q");
    CHECK(offending_key([&] {
              casimir_cli::apply_assignment(cfg, "medium.omega0", "fast");
          }) == "medium.omega0");
    CHECK(offending_key([&] {
              casimir_cli::apply_assignment(cfg, "medium.cutoff", "boxcar");
          }) == "medium.cutoff");
    CHECK(offending_key([&] {
              casimir_cli::apply_config_text(cfg, "medium.omega0 1\n");
          }) == "line 1");

    SUBCASE("matsubara route at zero temperature") {
        cfg.route = Route::Matsubara;
        CHECK(offending_key([&] {
                  casimir_cli::validate_run_config(cfg, "force");
              }) == "run.route");
    }
    SUBCASE("lifshitz route at finite temperature") {
        cfg.route = Route::LifshitzT0;
        cfg.force.thermal.temperature = 0.5;
        CHECK(offending_key([&] {
                  casimir_cli::validate_run_config(cfg, "force");
              }) == "run.route");
    }
    SUBCASE("sweep grid must hold at least two points") {
        cfg.route = Route::Closed;
        cfg.sweep.count = 1;
        CHECK(offending_key([&] {
                  casimir_cli::validate_run_config(cfg, "sweep");
              }) == "sweep.count");
    }
    SUBCASE("sweep grid must ascend") {
        cfg.route = Route::Closed;
        cfg.sweep.start = 2.0;
        cfg.sweep.stop = 0.5;
        CHECK(offending_key([&] {
                  casimir_cli::validate_run_config(cfg, "sweep");
              }) == "sweep.start");
    }
    SUBCASE("sweep needs a single route") {
        CHECK(offending_key([&] {
                  casimir_cli::validate_run_config(cfg, "sweep");
              }) == "run.route");
    }
    SUBCASE("chi needs damping") {
        cfg.force.medium.env.gamma0 = 0.0;
        CHECK(offending_key([&] {
                  casimir_cli::validate_run_config(cfg, "chi");
              }) == "medium.gamma0");
    }
}

TEST_CASE("config text accepts comments, blank lines, and loose spacing") {
    RunConfig cfg = casimir_cli::default_run_config();
    casimir_cli::apply_config_text(cfg,
                                   "# damping block\n"
                                   "medium.gamma0 = 0.125   # quarter of the default\n"
                                   "\n"
                                   "geometry.gap=2.5\n"
                                   "run.route = closed\n");
    CHECK(cfg.force.medium.env.gamma0 == 0.125);
    CHECK(cfg.force.geometry.gap == 2.5);
    CHECK(cfg.route == Route::Closed);
}

TEST_CASE("force with route=all emits one row per route and a tight consistency") {
    const RunConfig cfg = casimir_cli::default_run_config();
    std::ostringstream out;
    CHECK(casimir_cli::run_force(cfg, out) == 0);
    const Table t = parse_csv(out.str());
    REQUIRE(t.rows.size() == 3);
    CHECK(cell_text(t, 0, "route") == "decomposed");
    CHECK(cell_text(t, 1, "route") == "closed");
    CHECK(cell_text(t, 2, "route") == "lifshitz_t0");
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(cell_text(t, i, "error").empty());
        const double consistency = cell(t, i, "consistency");
        CHECK(consistency < 1e-6);
        CHECK(consistency > 0.0);
    }
    // Only the decomposed route carries the vacuum/Langevin split.
    CHECK(!cell_text(t, 0, "F_vacuum").empty());
    CHECK(cell_text(t, 1, "F_vacuum").empty());
    CHECK(cell(t, 0, "F_total") == doctest::Approx(cell(t, 1, "F_total")).epsilon(1e-6));
}

TEST_CASE("transparent medium reports a force at the noise floor") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.force.medium.omega_p = 0.0;
    cfg.route = Route::Closed;
    std::ostringstream out;
    CHECK(casimir_cli::run_force(cfg, out) == 0);
    const Table t = parse_csv(out.str());
    REQUIRE(t.rows.size() == 1);
    CHECK(std::abs(cell(t, 0, "F_total")) <= cfg.force.quad.abs_tol);
}

TEST_CASE("numerical failures flag the row and exit nonzero") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.force.medium.env.gamma0 = 0.0;  // undamped dielectric: no real axis
    std::ostringstream out;
    CHECK(casimir_cli::run_force(cfg, out) == 3);
    const Table t = parse_csv(out.str());
    REQUIRE(t.rows.size() == 3);
    CHECK(!cell_text(t, 0, "error").empty());
    CHECK(!cell_text(t, 1, "error").empty());
    CHECK(cell_text(t, 2, "error").empty());  // imaginary axis still works
    CHECK(cell(t, 2, "F_total") < 0.0);
}

TEST_CASE("gap sweep magnitudes decrease strictly down the column") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.route = Route::Closed;
    cfg.sweep_variable = SweepVariable::Gap;
    cfg.sweep = {0.5, 2.0, 6, false};
    std::ostringstream out;
    CHECK(casimir_cli::run_sweep(cfg, out, 1) == 0);
    const Table t = parse_csv(out.str());
    REQUIRE(t.rows.size() == 6);
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        CHECK(std::abs(cell(t, i, "F_total")) < std::abs(cell(t, i - 1, "F_total")));
}

TEST_CASE("temperature sweep rows reproduce single-point runs bit-exactly") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.route = Route::Matsubara;
    cfg.sweep_variable = SweepVariable::Temperature;
    cfg.sweep = {0.2, 1.0, 5, false};
    std::ostringstream sweep_out;
    CHECK(casimir_cli::run_sweep(cfg, sweep_out, 1) == 0);
    const Table sweep = parse_csv(sweep_out.str());
    REQUIRE(sweep.rows.size() == 5);

    for (const std::size_t row : {std::size_t{0}, std::size_t{3}}) {
        RunConfig single = cfg;
        single.force.thermal.temperature = cell(sweep, row, "swept_value");
        std::ostringstream force_out;
        CHECK(casimir_cli::run_force(single, force_out) == 0);
        const Table point = parse_csv(force_out.str());
        REQUIRE(point.rows.size() == 1);
        CHECK(cell_text(point, 0, "F_total") == cell_text(sweep, row, "F_total"));
    }
}

TEST_CASE("concurrent sweep output is byte-identical to the serial one") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.route = Route::Closed;
    cfg.sweep_variable = SweepVariable::Gamma0;
    cfg.sweep = {0.1, 0.9, 7, false};
    std::ostringstream serial, parallel;
    CHECK(casimir_cli::run_sweep(cfg, serial, 1) == 0);
    CHECK(casimir_cli::run_sweep(cfg, parallel, 8) == 0);
    CHECK(serial.str() == parallel.str());
}

TEST_CASE("per-point sweep failures leave an error cell and the run continues") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.route = Route::Matsubara;
    cfg.sweep_variable = SweepVariable::Temperature;
    cfg.sweep = {0.0, 1.0, 3, false};  // first point sits at T = 0
    std::ostringstream out;
    CHECK(casimir_cli::run_sweep(cfg, out, 2) == 3);
    const Table t = parse_csv(out.str());
    REQUIRE(t.rows.size() == 3);
    CHECK(!cell_text(t, 0, "error").empty());
    CHECK(cell_text(t, 0, "F_total").empty());
    CHECK(cell_text(t, 1, "error").empty());
    CHECK(cell_text(t, 2, "error").empty());
    CHECK(cell(t, 2, "F_total") < 0.0);
}

TEST_CASE("epsilon table of a transparent medium is exactly vacuum") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.force.medium.omega_p = 0.0;
    cfg.epsilon = {0.1, 5.0, 9, false};
    std::ostringstream out;
    CHECK(casimir_cli::run_epsilon(cfg, out) == 0);
    const Table t = parse_csv(out.str());
    REQUIRE(t.rows.size() == 9);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(cell(t, i, "re_eps") == 1.0);
        CHECK(cell(t, i, "im_eps") == 0.0);
        CHECK(cell(t, i, "re_n") == 1.0);
        CHECK(cell(t, i, "im_n") == 0.0);
    }
}

TEST_CASE("epsilon table carries absorption for a damped medium") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.epsilon = {0.2, 3.0, 15, false};
    std::ostringstream out;
    CHECK(casimir_cli::run_epsilon(cfg, out) == 0);
    const Table t = parse_csv(out.str());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(cell(t, i, "im_eps") > 0.0);
        CHECK(cell(t, i, "im_n") > 0.0);
    }
}

TEST_CASE("chi table: analytic column is causal and matches the numeric one") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.force.medium.env.alpha = 3.0;
    cfg.chi = {-2.0, 10.0, 61, false};
    std::ostringstream out;
    CHECK(casimir_cli::run_chi(cfg, out) == 0);
    const Table t = parse_csv(out.str());
    REQUIRE(t.rows.size() == 61);
    double peak = 0.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        peak = std::max(peak, std::abs(cell(t, i, "chi_analytic")));
    REQUIRE(peak > 0.0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double tau = cell(t, i, "tau");
        const double analytic = cell(t, i, "chi_analytic");
        const double numeric = cell(t, i, "chi_numeric");
        if (tau <= 0.0) CHECK(analytic == 0.0);
        CHECK(std::abs(analytic - numeric) <= 1e-4 * peak);
    }
}

TEST_CASE("chi table without the analytic family leaves that column empty") {
    RunConfig cfg = casimir_cli::default_run_config();  // alpha = 1 Lorentzian
    cfg.chi = {0.5, 2.0, 4, false};
    std::ostringstream out;
    CHECK(casimir_cli::run_chi(cfg, out) == 0);
    const Table t = parse_csv(out.str());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(cell_text(t, i, "chi_analytic").empty());
        CHECK(!cell_text(t, i, "chi_numeric").empty());
    }
}

TEST_CASE("verify passes the default configuration") {
    const RunConfig cfg = casimir_cli::default_run_config();
    std::ostringstream out;
    CHECK(casimir_cli::run_verify(cfg, out) == 0);
    CHECK(out.str().find("[FAIL]") == std::string::npos);
    CHECK(out.str().find(" 0 failed") != std::string::npos);
}

TEST_CASE("verify skips real-axis checks for an undamped dielectric") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.force.medium.env.gamma0 = 0.0;
    std::ostringstream out;
    CHECK(casimir_cli::run_verify(cfg, out) == 0);
    CHECK(out.str().find("requires Matsubara route") != std::string::npos);
    CHECK(out.str().find("[FAIL]") == std::string::npos);
}

TEST_CASE("corrupted tolerances turn into named verify failures") {
    RunConfig cfg = casimir_cli::default_run_config();
    cfg.force.quad.rel_tol = 1e-30;
    cfg.force.quad.abs_tol = 1e-30;
    std::ostringstream out;
    CHECK(casimir_cli::run_verify(cfg, out) == 4);
    CHECK(out.str().find("[FAIL] decomposed force equals the closed form") !=
          std::string::npos);
}

TEST_CASE("every run starts by echoing the resolved configuration") {
    const RunConfig cfg = casimir_cli::default_run_config();
    std::ostringstream out;
    casimir_cli::run_force(cfg, out);
    CHECK(out.str().rfind("# medium.omega0 = 1\n", 0) == 0);
    CHECK(out.str().find("# quad.rel_tol = ") != std::string::npos);
}

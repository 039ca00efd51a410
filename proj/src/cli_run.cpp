#include "cli_run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "casimir/optics.hpp"
#include "casimir/verify.hpp"

namespace casimir_cli {

namespace {

std::string num17(double v) {
    if (std::isnan(v)) return "";  // undefined cells stay empty
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) {
        out += ch;
        if (ch == '"') out += '"';
    }
    out += '"';
    return out;
}

// The imaginary-axis routes are requested explicitly by name, so hold them
// to their name instead of silently dispatching on the temperature.
casimir::ForceResult evaluate_route(const casimir::ForceConfig& fc, Route route) {
    switch (route) {
        case Route::Decomposed: return casimir::force_decomposed(fc);
        case Route::Closed: return casimir::force_closed(fc);
        case Route::Matsubara:
            if (!(fc.thermal.temperature > 0.0))
                throw std::invalid_argument(
                    "matsubara route requires temperature > 0; use lifshitz_t0");
            return casimir::twoslab_force_imag_axis(fc);
        case Route::LifshitzT0:
            if (fc.thermal.temperature != 0.0)
                throw std::invalid_argument(
                    "lifshitz_t0 route requires temperature = 0; use matsubara");
            return casimir::twoslab_force_imag_axis(fc);
        case Route::All: break;
    }
    throw std::logic_error("evaluate_route: route must be a single route");
}

struct ForceRow {
    Route route = Route::Closed;
    casimir::ForceResult result;
    std::string error;  // empty on success
};

ForceRow compute_row(const casimir::ForceConfig& fc, Route route) {
    ForceRow row;
    row.route = route;
    try {
        row.result = evaluate_route(fc, route);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

void write_force_cells(std::ostream& out, const ForceRow& row) {
    if (row.error.empty()) {
        out << num17(row.result.total) << ',' << num17(row.result.vacuum_part) << ','
            << num17(row.result.langevin_part) << ','
            << num17(row.result.abs_error_estimate) << ',' << row.result.evaluations;
    } else {
        out << ",,,,";
    }
}

void apply_sweep_value(casimir::ForceConfig& fc, SweepVariable variable, double value) {
    switch (variable) {
        case SweepVariable::Gap: fc.geometry.gap = value; return;
        case SweepVariable::Temperature: fc.thermal.temperature = value; return;
        case SweepVariable::Gamma0: fc.medium.env.gamma0 = value; return;
        case SweepVariable::OmegaP: fc.medium.omega_p = value; return;
        case SweepVariable::Thickness: fc.geometry.thickness = value; return;
    }
}

}  // namespace

int run_force(const RunConfig& cfg, std::ostream& out) {
    echo_config(out, cfg, "# ");
    out << "route,F_total,F_vacuum,F_langevin,abs_error,evaluations,consistency,error\n";

    std::vector<Route> routes;
    if (cfg.route == Route::All) {
        routes = {Route::Decomposed, Route::Closed,
                  cfg.force.thermal.temperature > 0.0 ? Route::Matsubara
                                                      : Route::LifshitzT0};
    } else {
        routes = {cfg.route};
    }

    std::vector<ForceRow> rows;
    rows.reserve(routes.size());
    for (const Route r : routes) rows.push_back(compute_row(cfg.force, r));

    // With every route requested, report how well the two real-axis routes
    // reproduce each other -- the library's central identity.
    double consistency = std::numeric_limits<double>::quiet_NaN();
    if (cfg.route == Route::All && rows[0].error.empty() && rows[1].error.empty())
        consistency = std::abs(rows[0].result.total - rows[1].result.total) /
                      std::abs(rows[1].result.total);

    bool failed = false;
    for (const ForceRow& row : rows) {
        out << route_name(row.route) << ',';
        write_force_cells(out, row);
        out << ',' << num17(consistency) << ',' << csv_field(row.error) << '\n';
        if (!row.error.empty()) failed = true;
    }
    return failed ? 3 : 0;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, int jobs) {
    echo_config(out, cfg, "# ");
    out << "swept_value,F_total,F_vacuum,F_langevin,abs_error,evaluations,route,error\n";

    const std::vector<double> pts = grid_points(cfg.sweep);
    std::vector<ForceRow> rows(pts.size());

    // Points run concurrently but land in a preallocated slot each, so the
    // emitted table is in grid order and identical for any job count.
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i; (i = next.fetch_add(1)) < pts.size();) {
            casimir::ForceConfig fc = cfg.force;
            apply_sweep_value(fc, cfg.sweep_variable, pts[i]);
            rows[i] = compute_row(fc, cfg.route);
        }
    };
    const int workers = std::clamp<int>(jobs, 1, 64);
    if (workers == 1 || pts.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    bool failed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out << num17(pts[i]) << ',';
        write_force_cells(out, rows[i]);
        out << ',' << route_name(cfg.route) << ',' << csv_field(rows[i].error) << '\n';
        if (!rows[i].error.empty()) failed = true;
    }
    return failed ? 3 : 0;
}

int run_epsilon(const RunConfig& cfg, std::ostream& out) {
    echo_config(out, cfg, "# ");
    out << "omega,re_eps,im_eps,re_n,im_n,error\n";
    bool failed = false;
    for (const double omega : grid_points(cfg.epsilon)) {
        out << num17(omega) << ',';
        try {
            const std::complex<double> eps = casimir::permittivity(cfg.force.medium, omega);
            const std::complex<double> n = casimir::refractive_index_of(eps);
            out << num17(eps.real()) << ',' << num17(eps.imag()) << ',' << num17(n.real())
                << ',' << num17(n.imag()) << ",\n";
        } catch (const std::exception& e) {
            out << ",,,," << csv_field(e.what()) << '\n';
            failed = true;
        }
    }
    return failed ? 3 : 0;
}

int run_chi(const RunConfig& cfg, std::ostream& out) {
    echo_config(out, cfg, "# ");
    out << "tau,chi_analytic,chi_numeric,error\n";
    const bool analytic = cfg.force.medium.env.cutoff == casimir::Cutoff::Lorentzian &&
                          cfg.force.medium.env.alpha == 3.0;
    bool failed = false;
    for (const double tau : grid_points(cfg.chi)) {
        out << num17(tau) << ',';
        try {
            const std::string a =
                analytic ? num17(casimir::susceptibility(cfg.force.medium, tau,
                                                         casimir::ChiRoute::Analytic))
                         : std::string();
            const double n =
                casimir::susceptibility(cfg.force.medium, tau, casimir::ChiRoute::Numeric);
            out << a << ',' << num17(n) << ",\n";
        } catch (const std::exception& e) {
            out << ",," << csv_field(e.what()) << '\n';
            failed = true;
        }
    }
    return failed ? 3 : 0;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
    echo_config(out, cfg, "# ");
    const std::vector<casimir::CheckResult> checks = casimir::run_config_checks(cfg.force);
    int passed = 0, failed = 0, skipped = 0;
    for (const casimir::CheckResult& c : checks) {
        if (c.skipped) {
            ++skipped;
            out << "[SKIP] " << c.name << " -- " << c.message << '\n';
        } else if (c.passed) {
            ++passed;
            out << "[PASS] " << c.name << " -- measured " << sci(c.measured)
                << " within " << sci(c.tolerance) << '\n';
        } else {
            ++failed;
            out << "[FAIL] " << c.name << " -- measured " << sci(c.measured)
                << " exceeds " << sci(c.tolerance);
            if (!c.message.empty()) out << " (" << c.message << ')';
            out << '\n';
        }
    }
    out << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    return failed == 0 ? 0 : 4;
}

}  // namespace casimir_cli

#include "cli_config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace casimir_cli {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t lo = 0, hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
    return s.substr(lo, hi - lo);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got \"" + value + "\"");
    }
    if (trimmed(value.substr(pos)).empty() == false)
        throw ConfigError(key, "expected a number, got \"" + value + "\"");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError(key, "expected an integer, got \"" + value + "\"");
    return static_cast<int>(v);
}

casimir::Cutoff parse_cutoff(const std::string& key, const std::string& value) {
    if (value == "none") return casimir::Cutoff::None;
    if (value == "gaussian") return casimir::Cutoff::Gaussian;
    if (value == "lorentzian") return casimir::Cutoff::Lorentzian;
    throw ConfigError(key, "expected one of none, gaussian, lorentzian; got \"" + value + "\"");
}

Route parse_route(const std::string& key, const std::string& value) {
    if (value == "decomposed") return Route::Decomposed;
    if (value == "closed") return Route::Closed;
    if (value == "matsubara") return Route::Matsubara;
    if (value == "lifshitz_t0") return Route::LifshitzT0;
    if (value == "all") return Route::All;
    throw ConfigError(key, "expected one of decomposed, closed, matsubara, lifshitz_t0, "
                           "all; got \"" + value + "\"");
}

SweepVariable parse_variable(const std::string& key, const std::string& value) {
    if (value == "gap") return SweepVariable::Gap;
    if (value == "temperature") return SweepVariable::Temperature;
    if (value == "gamma0") return SweepVariable::Gamma0;
    if (value == "omega_p") return SweepVariable::OmegaP;
    if (value == "thickness") return SweepVariable::Thickness;
    throw ConfigError(key, "expected one of gap, temperature, gamma0, omega_p, thickness; "
                           "got \"" + value + "\"");
}

bool parse_spacing(const std::string& key, const std::string& value) {
    if (value == "linear") return false;
    if (value == "log") return true;
    throw ConfigError(key, "expected linear or log; got \"" + value + "\"");
}

std::string cutoff_name(casimir::Cutoff c) {
    switch (c) {
        case casimir::Cutoff::None: return "none";
        case casimir::Cutoff::Gaussian: return "gaussian";
        case casimir::Cutoff::Lorentzian: return "lorentzian";
    }
    return "?";
}

std::string spacing_name(bool log_spacing) { return log_spacing ? "log" : "linear"; }

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require(bool ok, const std::string& key, const std::string& detail) {
    if (!ok) throw ConfigError(key, detail);
}

void validate_grid(const GridSpec& grid, const std::string& section) {
    require(grid.count >= 2, section + ".count", "needs at least 2 grid points");
    require(grid.start < grid.stop, section + ".start",
            "must be below " + section + ".stop");
    if (grid.log_spacing)
        require(grid.start > 0.0, section + ".start", "log spacing needs start > 0");
}

}  // namespace

RunConfig default_run_config() {
    RunConfig cfg;
    cfg.force.medium.omega0 = 1.0;
    cfg.force.medium.omega_p = 1.0;
    cfg.force.medium.env.gamma0 = 0.3;
    cfg.force.medium.env.alpha = 1.0;
    cfg.force.medium.env.cutoff = casimir::Cutoff::Lorentzian;
    cfg.force.medium.env.lambda_cut = 5.0;
    cfg.force.medium.env.mass = 1.0;
    cfg.force.geometry.thickness = 1.0;
    cfg.force.geometry.gap = 1.0;
    cfg.force.thermal.temperature = 0.0;
    cfg.force.quad.rel_tol = 1e-9;
    cfg.force.quad.abs_tol = 1e-12;
    cfg.route = Route::All;
    cfg.sweep_variable = SweepVariable::Gap;
    cfg.sweep = {0.5, 2.0, 8, false};
    cfg.epsilon = {0.05, 10.0, 200, false};
    cfg.chi = {-2.0, 18.0, 201, false};
    return cfg;
}

void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value) {
    casimir::MediumSpec& med = cfg.force.medium;
    if (key == "medium.omega0") med.omega0 = parse_double(key, value);
    else if (key == "medium.omega_p") med.omega_p = parse_double(key, value);
    else if (key == "medium.gamma0") med.env.gamma0 = parse_double(key, value);
    else if (key == "medium.alpha") med.env.alpha = parse_double(key, value);
    else if (key == "medium.cutoff") med.env.cutoff = parse_cutoff(key, value);
    else if (key == "medium.lambda_cut") med.env.lambda_cut = parse_double(key, value);
    else if (key == "medium.mass") med.env.mass = parse_double(key, value);
    else if (key == "geometry.thickness") cfg.force.geometry.thickness = parse_double(key, value);
    else if (key == "geometry.gap") cfg.force.geometry.gap = parse_double(key, value);
    else if (key == "thermal.temperature") cfg.force.thermal.temperature = parse_double(key, value);
    else if (key == "quad.rel_tol") cfg.force.quad.rel_tol = parse_double(key, value);
    else if (key == "quad.abs_tol") cfg.force.quad.abs_tol = parse_double(key, value);
    else if (key == "quad.max_panels") cfg.force.quad.max_panels = parse_int(key, value);
    else if (key == "run.route") cfg.route = parse_route(key, value);
    else if (key == "sweep.variable") cfg.sweep_variable = parse_variable(key, value);
    else if (key == "sweep.start") cfg.sweep.start = parse_double(key, value);
    else if (key == "sweep.stop") cfg.sweep.stop = parse_double(key, value);
    else if (key == "sweep.count") cfg.sweep.count = parse_int(key, value);
    else if (key == "sweep.spacing") cfg.sweep.log_spacing = parse_spacing(key, value);
    else if (key == "epsilon.start") cfg.epsilon.start = parse_double(key, value);
    else if (key == "epsilon.stop") cfg.epsilon.stop = parse_double(key, value);
    else if (key == "epsilon.count") cfg.epsilon.count = parse_int(key, value);
    else if (key == "epsilon.spacing") cfg.epsilon.log_spacing = parse_spacing(key, value);
    else if (key == "chi.start") cfg.chi.start = parse_double(key, value);
    else if (key == "chi.stop") cfg.chi.stop = parse_double(key, value);
    else if (key == "chi.count") cfg.chi.count = parse_int(key, value);
    else if (key == "chi.spacing") cfg.chi.log_spacing = parse_spacing(key, value);
    else throw ConfigError(key, "unknown configuration key");
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trimmed(line).empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno),
                              "expected `section.key = value`, got \"" + trimmed(line) + "\"");
        apply_assignment(cfg, trimmed(line.substr(0, eq)), trimmed(line.substr(eq + 1)));
    }
}

void validate_run_config(const RunConfig& cfg, const std::string& subcommand) {
    const casimir::MediumSpec& med = cfg.force.medium;
    require(med.omega0 >= 0.0, "medium.omega0", "must be >= 0");
    require(med.omega_p >= 0.0, "medium.omega_p", "must be >= 0");
    require(med.env.gamma0 >= 0.0, "medium.gamma0", "must be >= 0");
    require(med.env.mass > 0.0, "medium.mass", "must be > 0");
    require(med.env.alpha > 0.0 && med.env.alpha < 4.0, "medium.alpha",
            "must lie in (0, 4)");
    if (med.env.cutoff == casimir::Cutoff::None)
        require(med.env.alpha == 1.0, "medium.cutoff",
                "the uncut bath is defined for alpha = 1 only");
    if (med.env.cutoff == casimir::Cutoff::Lorentzian)
        require(med.env.alpha == 1.0 || med.env.alpha == 3.0, "medium.cutoff",
                "the lorentzian bath is defined for alpha = 1 or 3");
    if (med.env.cutoff != casimir::Cutoff::None)
        require(med.env.lambda_cut > 0.0, "medium.lambda_cut", "must be > 0");
    require(cfg.force.geometry.thickness > 0.0, "geometry.thickness", "must be > 0");
    require(cfg.force.geometry.gap > 0.0, "geometry.gap", "must be > 0");
    require(cfg.force.thermal.temperature >= 0.0, "thermal.temperature", "must be >= 0");
    require(cfg.force.quad.rel_tol > 0.0, "quad.rel_tol", "must be > 0");
    require(cfg.force.quad.abs_tol > 0.0, "quad.abs_tol", "must be > 0");
    require(cfg.force.quad.max_panels >= 10, "quad.max_panels", "must be at least 10");

    const bool sweeps_temperature =
        subcommand == "sweep" && cfg.sweep_variable == SweepVariable::Temperature;
    if (!sweeps_temperature) {
        if (cfg.route == Route::Matsubara)
            require(cfg.force.thermal.temperature > 0.0, "run.route",
                    "matsubara requires thermal.temperature > 0; use lifshitz_t0 at "
                    "temperature 0");
        if (cfg.route == Route::LifshitzT0)
            require(cfg.force.thermal.temperature == 0.0, "run.route",
                    "lifshitz_t0 requires thermal.temperature = 0; use matsubara at "
                    "temperature > 0");
    }

    if (subcommand == "sweep") {
        validate_grid(cfg.sweep, "sweep");
        require(cfg.route != Route::All, "run.route",
                "sweep emits one row per grid point; choose a single route");
        switch (cfg.sweep_variable) {
            case SweepVariable::Gap:
            case SweepVariable::Thickness:
                require(cfg.sweep.start > 0.0, "sweep.start", "must be > 0");
                break;
            case SweepVariable::Temperature:
            case SweepVariable::Gamma0:
            case SweepVariable::OmegaP:
                require(cfg.sweep.start >= 0.0, "sweep.start", "must be >= 0");
                break;
        }
    } else if (subcommand == "epsilon") {
        validate_grid(cfg.epsilon, "epsilon");
        require(cfg.epsilon.start > 0.0, "epsilon.start",
                "the frequency grid must start above 0");
    } else if (subcommand == "chi") {
        validate_grid(cfg.chi, "chi");
        require(med.env.gamma0 > 0.0, "medium.gamma0",
                "chi requires a damped medium (gamma0 > 0)");
    }
}

void echo_config(std::ostream& os, const RunConfig& cfg, const std::string& prefix) {
    const casimir::MediumSpec& med = cfg.force.medium;
    auto line = [&](const std::string& key, const std::string& value) {
        os << prefix << key << " = " << value << "\n";
    };
    line("medium.omega0", num(med.omega0));
    line("medium.omega_p", num(med.omega_p));
    line("medium.gamma0", num(med.env.gamma0));
    line("medium.alpha", num(med.env.alpha));
    line("medium.cutoff", cutoff_name(med.env.cutoff));
    line("medium.lambda_cut", num(med.env.lambda_cut));
    line("medium.mass", num(med.env.mass));
    line("geometry.thickness", num(cfg.force.geometry.thickness));
    line("geometry.gap", num(cfg.force.geometry.gap));
    line("thermal.temperature", num(cfg.force.thermal.temperature));
    line("quad.rel_tol", num(cfg.force.quad.rel_tol));
    line("quad.abs_tol", num(cfg.force.quad.abs_tol));
    line("quad.max_panels", std::to_string(cfg.force.quad.max_panels));
    line("run.route", route_name(cfg.route));
    line("sweep.variable", sweep_variable_name(cfg.sweep_variable));
    line("sweep.start", num(cfg.sweep.start));
    line("sweep.stop", num(cfg.sweep.stop));
    line("sweep.count", std::to_string(cfg.sweep.count));
    line("sweep.spacing", spacing_name(cfg.sweep.log_spacing));
    line("epsilon.start", num(cfg.epsilon.start));
    line("epsilon.stop", num(cfg.epsilon.stop));
    line("epsilon.count", std::to_string(cfg.epsilon.count));
    line("epsilon.spacing", spacing_name(cfg.epsilon.log_spacing));
    line("chi.start", num(cfg.chi.start));
    line("chi.stop", num(cfg.chi.stop));
    line("chi.count", std::to_string(cfg.chi.count));
    line("chi.spacing", spacing_name(cfg.chi.log_spacing));
}

std::vector<double> grid_points(const GridSpec& grid) {
    std::vector<double> pts(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        const double frac = static_cast<double>(i) / (grid.count - 1);
        pts[i] = grid.log_spacing
                     ? grid.start * std::pow(grid.stop / grid.start, frac)
                     : grid.start + (grid.stop - grid.start) * frac;
    }
    pts.front() = grid.start;
    pts.back() = grid.stop;
    return pts;
}

std::string route_name(Route route) {
    switch (route) {
        case Route::Decomposed: return "decomposed";
        case Route::Closed: return "closed";
        case Route::Matsubara: return "matsubara";
        case Route::LifshitzT0: return "lifshitz_t0";
        case Route::All: return "all";
    }
    return "?";
}

std::string sweep_variable_name(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::Gap: return "gap";
        case SweepVariable::Temperature: return "temperature";
        case SweepVariable::Gamma0: return "gamma0";
        case SweepVariable::OmegaP: return "omega_p";
        case SweepVariable::Thickness: return "thickness";
    }
    return "?";
}

}  // namespace casimir_cli

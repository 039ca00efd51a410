#pragma once

// Configuration surface of the casimir-oqs tool: a flat `section.key = value`
// text format (the same keys work in --set overrides), defaults for every
// key, validation whose errors name the offending key, and an echo of the
// fully resolved configuration so every output file records exactly how it
// was produced.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/force.hpp"

namespace casimir_cli {

struct ConfigError : std::runtime_error {
    std::string key;  // offending key, or the config line when unparsable
    ConfigError(std::string key_, const std::string& detail)
        : std::runtime_error(key_ + ": " + detail), key(std::move(key_)) {}
};

enum class Route { Decomposed, Closed, Matsubara, LifshitzT0, All };

enum class SweepVariable { Gap, Temperature, Gamma0, OmegaP, Thickness };

struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
    bool log_spacing = false;
};

struct RunConfig {
    casimir::ForceConfig force;
    Route route = Route::All;
    SweepVariable sweep_variable = SweepVariable::Gap;
    GridSpec sweep;    // grid of the swept variable
    GridSpec epsilon;  // frequency grid of the epsilon table
    GridSpec chi;      // time grid of the chi table
};

RunConfig default_run_config();

// Applies one `section.key = value` assignment; unknown keys and
// unparsable values throw ConfigError.
void apply_assignment(RunConfig& cfg, const std::string& key, const std::string& value);

// Parses a whole config file: one assignment per line, '#' comments and
// blank lines allowed.
void apply_config_text(RunConfig& cfg, const std::string& text);

// Range and compatibility validation for the given subcommand; throws
// ConfigError naming the key that is out of range or incompatible.
void validate_run_config(const RunConfig& cfg, const std::string& subcommand);

// Writes every key of the resolved configuration, one per line, each line
// starting with the prefix (e.g. "# ") so CSV consumers read it as a
// comment.  Feeding the lines back through apply_assignment reproduces the
// configuration exactly.
void echo_config(std::ostream& os, const RunConfig& cfg, const std::string& prefix);

// The grid a GridSpec describes: count points from start to stop inclusive,
// spaced linearly or geometrically.
std::vector<double> grid_points(const GridSpec& grid);

std::string route_name(Route route);
std::string sweep_variable_name(SweepVariable variable);

}  // namespace casimir_cli

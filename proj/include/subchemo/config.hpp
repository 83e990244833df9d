#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subchemo/waiting_time.hpp"

namespace subchemo {

enum class RunMode { Solve, Mc, Compare };

/// Validated run configuration shared by the CLI subcommands. Defaults match
/// the reference experiments: gamma=0.5, tau=0.1, dx=1, dt=0.01, 101 sites,
/// Pareto density, outputs at t in {0.4, 2, 4, 20}.
struct SimulationConfig {
    RunMode mode = RunMode::Solve;
    int model = 0;  ///< 1..4; required in solve mode
    double gamma = 0.5;
    double tau = 0.1;
    double beta = 0.0;
    double reaction_k = 0.0;
    double dx = 1.0;
    double dt = 0.01;
    double t_max = 20.0;
    std::size_t grid_points = 101;
    std::vector<double> output_times{0.4, 2.0, 4.0, 20.0};
    DensityKind density = DensityKind::Pareto;
    std::size_t particles = 10000;
    std::size_t runs = 200;
    std::uint64_t master_seed = 1;
    unsigned threads = 0;
    std::string out_path;
    std::string a_path;
    std::string b_path;
    std::string report_path;
};

/// Throws ValidationError naming the offending key when any value is out of
/// range, a required field is missing, or an output time is off the dt grid.
void validate_config(const SimulationConfig& config);

/// Reads a flat key=value file ('#' starts a comment, blank lines ignored).
/// Keys use the long option names, e.g. "grid-points=101".
std::map<std::string, std::string> read_key_value_file(const std::string& path);

/// Applies one key=value pair; throws ValidationError for unknown keys or
/// unparsable values. "mode" and paths are CLI-only and not file keys.
void apply_key_value(SimulationConfig& config, const std::string& key,
                     const std::string& value);

/// Parses "0.4,2,4,20" into a sorted, deduplicated time list.
std::vector<double> parse_time_list(const std::string& text);

/// Canonical key=value echo of every effective parameter, one per line.
std::string echo_config(const SimulationConfig& config);

/// The same echo as a JSON object string (embedded in reports).
std::string echo_config_json(const SimulationConfig& config);

}  // namespace subchemo

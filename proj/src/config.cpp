#include "subchemo/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "subchemo/errors.hpp"

namespace subchemo {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "': cannot parse number '" + value
                              + "'");
    }
    if (used != value.size() || !std::isfinite(v)) {
        throw ValidationError("config key '" + key + "': cannot parse number '" + value
                              + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value)
{
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
        throw ValidationError("config key '" + key + "': expected a nonnegative integer, "
                              "got '" + value + "'");
    }
    try {
        return std::stoull(value);
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "': integer out of range: '" + value
                              + "'");
    }
}

}  // namespace

std::vector<double> parse_time_list(const std::string& text)
{
    std::vector<double> times;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        times.push_back(parse_number("times", item));
    }
    if (times.empty()) {
        throw ValidationError("config key 'times': empty time list");
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

void apply_key_value(SimulationConfig& config, const std::string& key,
                     const std::string& value)
{
    if (key == "gamma") {
        config.gamma = parse_number(key, value);
    } else if (key == "tau") {
        config.tau = parse_number(key, value);
    } else if (key == "beta") {
        config.beta = parse_number(key, value);
    } else if (key == "k") {
        config.reaction_k = parse_number(key, value);
    } else if (key == "dx") {
        config.dx = parse_number(key, value);
    } else if (key == "dt") {
        config.dt = parse_number(key, value);
    } else if (key == "tmax") {
        config.t_max = parse_number(key, value);
    } else if (key == "grid-points") {
        config.grid_points = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "times") {
        config.output_times = parse_time_list(value);
    } else if (key == "density") {
        if (value == "pareto") {
            config.density = DensityKind::Pareto;
        } else if (value == "ml") {
            config.density = DensityKind::MittagLefflerExp;
        } else {
            throw ValidationError("config key 'density': expected pareto or ml, got '"
                                  + value + "'");
        }
    } else if (key == "model") {
        const auto m = parse_unsigned(key, value);
        if (m < 1 || m > 4) {
            throw ValidationError("config key 'model': expected 1..4, got '" + value + "'");
        }
        config.model = static_cast<int>(m);
    } else if (key == "particles") {
        config.particles = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "runs") {
        config.runs = static_cast<std::size_t>(parse_unsigned(key, value));
    } else if (key == "seed") {
        config.master_seed = parse_unsigned(key, value);
    } else if (key == "threads") {
        config.threads = static_cast<unsigned>(parse_unsigned(key, value));
    } else {
        throw ValidationError("unknown config key '" + key + "'");
    }
}

std::map<std::string, std::string> read_key_value_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::map<std::string, std::string> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(path + ":" + std::to_string(line_no)
                                  + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ValidationError(path + ":" + std::to_string(line_no) + ": empty key");
        }
        pairs[key] = value;
    }
    return pairs;
}

void validate_config(const SimulationConfig& config)
{
    const auto fail = [](const std::string& key, const std::string& why) {
        throw ValidationError("config key '" + key + "': " + why);
    };
    if (!(config.gamma > 0.0) || !(config.gamma <= 1.0)) {
        fail("gamma", "must lie in (0, 1]");
    }
    if (!(config.tau > 0.0) || !std::isfinite(config.tau)) fail("tau", "must be > 0");
    if (!(config.beta >= 0.0) || !std::isfinite(config.beta)) {
        fail("beta", "must be finite and >= 0");
    }
    if (!std::isfinite(config.reaction_k)) fail("k", "must be finite");
    if (!(config.dx > 0.0) || !std::isfinite(config.dx)) fail("dx", "must be > 0");
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) fail("dt", "must be > 0");
    if (!(config.t_max > 0.0) || !std::isfinite(config.t_max)) fail("tmax", "must be > 0");
    if (config.grid_points < 3 || config.grid_points % 2 == 0) {
        fail("grid-points", "must be odd and >= 3");
    }
    if (config.output_times.empty()) fail("times", "must not be empty");
    for (double t : config.output_times) {
        if (!(t >= 0.0) || !std::isfinite(t)) fail("times", "entries must be >= 0");
        if (t > config.t_max * (1.0 + 1e-12)) {
            fail("times", "entry " + std::to_string(t) + " exceeds tmax");
        }
        const double steps = t / config.dt;
        if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
            fail("times", "entry " + std::to_string(t) + " is off the dt grid");
        }
    }
    if (config.mode == RunMode::Solve && (config.model < 1 || config.model > 4)) {
        fail("model", "required in solve mode (1..4)");
    }
    if (config.mode == RunMode::Solve && config.model == 1 && config.reaction_k != 0.0) {
        fail("k", "Model 1 has no reaction extension");
    }
    if (config.mode == RunMode::Mc) {
        if (config.particles == 0) fail("particles", "must be >= 1");
        if (config.runs == 0) fail("runs", "must be >= 1");
        if (config.reaction_k != 0.0) fail("k", "reactions are not part of the mc mode");
    }
    if (config.density == DensityKind::MittagLefflerExp && config.gamma < 1.0) {
        fail("density", "ml density requires gamma = 1");
    }
}

std::string echo_config(const SimulationConfig& config)
{
    std::ostringstream out;
    const char* mode = config.mode == RunMode::Solve  ? "solve"
                       : config.mode == RunMode::Mc   ? "mc"
                                                      : "compare";
    out << "mode=" << mode << '\n';
    if (config.mode == RunMode::Solve) out << "model=" << config.model << '\n';
    out << "gamma=" << config.gamma << '\n'
        << "tau=" << config.tau << '\n'
        << "beta=" << config.beta << '\n'
        << "k=" << config.reaction_k << '\n'
        << "dx=" << config.dx << '\n'
        << "dt=" << config.dt << '\n'
        << "tmax=" << config.t_max << '\n'
        << "grid-points=" << config.grid_points << '\n';
    out << "times=";
    for (std::size_t i = 0; i < config.output_times.size(); ++i) {
        if (i > 0) out << ',';
        out << config.output_times[i];
    }
    out << '\n';
    out << "density="
        << (config.density == DensityKind::Pareto ? "pareto" : "ml") << '\n';
    if (config.mode == RunMode::Mc) {
        out << "particles=" << config.particles << '\n'
            << "runs=" << config.runs << '\n'
            << "seed=" << config.master_seed << '\n'
            << "threads=" << config.threads << '\n';
    }
    return out.str();
}

std::string echo_config_json(const SimulationConfig& config)
{
    nlohmann::json j;
    j["mode"] = config.mode == RunMode::Solve ? "solve"
                : config.mode == RunMode::Mc  ? "mc"
                                              : "compare";
    if (config.mode == RunMode::Solve) j["model"] = config.model;
    j["gamma"] = config.gamma;
    j["tau"] = config.tau;
    j["beta"] = config.beta;
    j["k"] = config.reaction_k;
    j["dx"] = config.dx;
    j["dt"] = config.dt;
    j["tmax"] = config.t_max;
    j["grid-points"] = config.grid_points;
    j["times"] = config.output_times;
    j["density"] = config.density == DensityKind::Pareto ? "pareto" : "ml";
    if (config.mode == RunMode::Mc) {
        j["particles"] = config.particles;
        j["runs"] = config.runs;
        j["seed"] = config.master_seed;
        j["threads"] = config.threads;
    }
    if (config.mode == RunMode::Compare) {
        j["a"] = config.a_path;
        j["b"] = config.b_path;
    }
    return j.dump();
}

}  // namespace subchemo

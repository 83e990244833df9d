// Command-line driver: solve | mc | compare.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure, 4 I/O error.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "subchemo/config.hpp"
#include "subchemo/errors.hpp"
#include "subchemo/monte_carlo.hpp"
#include "subchemo/profile_io.hpp"
#include "subchemo/solver.hpp"

namespace {

using namespace subchemo;

struct CliOptions {
    SimulationConfig config;
    std::string config_file;
    std::string times_text;
    std::string density_text;
};

// Shared numeric flags; the returned map ties option names to appliers so the
// command line can override file values key by key.
void add_shared_flags(CLI::App* cmd, CliOptions& opts)
{
    cmd->add_option("--config", opts.config_file, "flat key=value config file");
    cmd->add_option("--gamma", opts.config.gamma, "anomalous exponent in (0,1]");
    cmd->add_option("--tau", opts.config.tau, "characteristic waiting time");
    cmd->add_option("--beta", opts.config.beta, "chemotactic sensitivity");
    cmd->add_option("--k", opts.config.reaction_k, "linear reaction rate (gain>0)");
    cmd->add_option("--dx", opts.config.dx, "lattice spacing");
    cmd->add_option("--dt", opts.config.dt, "solver time step / output grid step");
    cmd->add_option("--tmax", opts.config.t_max, "simulation horizon");
    cmd->add_option("--grid-points", opts.config.grid_points, "odd lattice size");
    cmd->add_option("--times", opts.times_text, "comma-separated output times");
    cmd->add_option("--density", opts.density_text, "waiting-time density: pareto|ml");
    cmd->add_option("--out", opts.config.out_path, "output CSV path");
    cmd->add_option("--threads", opts.config.threads, "worker count (0 = auto)");
}

// File values first, then any flag the user actually passed on top.
void merge_config(CLI::App* cmd, CliOptions& opts)
{
    SimulationConfig merged;
    merged.mode = opts.config.mode;
    if (!opts.config_file.empty()) {
        for (const auto& [key, value] : read_key_value_file(opts.config_file)) {
            apply_key_value(merged, key, value);
        }
    }
    const auto passed = [cmd](const std::string& name) {
        const CLI::Option* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (passed("--gamma")) merged.gamma = opts.config.gamma;
    if (passed("--tau")) merged.tau = opts.config.tau;
    if (passed("--beta")) merged.beta = opts.config.beta;
    if (passed("--k")) merged.reaction_k = opts.config.reaction_k;
    if (passed("--dx")) merged.dx = opts.config.dx;
    if (passed("--dt")) merged.dt = opts.config.dt;
    if (passed("--tmax")) merged.t_max = opts.config.t_max;
    if (passed("--grid-points")) merged.grid_points = opts.config.grid_points;
    if (passed("--threads")) merged.threads = opts.config.threads;
    if (passed("--model")) merged.model = opts.config.model;
    if (passed("--particles")) merged.particles = opts.config.particles;
    if (passed("--runs")) merged.runs = opts.config.runs;
    if (passed("--seed")) merged.master_seed = opts.config.master_seed;
    if (!opts.times_text.empty()) merged.output_times = parse_time_list(opts.times_text);
    if (!opts.density_text.empty()) apply_key_value(merged, "density", opts.density_text);
    merged.out_path = opts.config.out_path;
    merged.a_path = opts.config.a_path;
    merged.b_path = opts.config.b_path;
    merged.report_path = opts.config.report_path;
    opts.config = merged;
}

WaitingTimeLaw law_from(const SimulationConfig& c)
{
    return WaitingTimeLaw(c.density, c.tau, c.gamma);
}

int run_solve(CliOptions& opts)
{
    SimulationConfig& c = opts.config;
    validate_config(c);
    if (c.out_path.empty()) {
        throw ValidationError("solve: --out is required");
    }
    const ModelSpec spec(static_cast<Model>(c.model), law_from(c), Sensitivity(c.beta),
                         c.reaction_k);
    const LatticeField initial = delta_field(c.grid_points, c.dx);
    const Trajectory traj = solve(spec, initial, c.dt, c.t_max, c.output_times);
    write_profile_csv(to_profile_set(traj), c.out_path);
    std::cout << echo_config(c);
    std::cout << "d_gamma=" << spec.diffusion_coefficient(c.dx) << '\n'
              << "chi_gamma=" << spec.chemotaxis_coefficient(c.dx) << '\n';
    if (traj.clamped_mass > 0.0) {
        std::cout << "clamped_mass=" << traj.clamped_mass << '\n';
    }
    std::cout << "wrote " << c.out_path << '\n';
    return 0;
}

int run_mc(CliOptions& opts)
{
    SimulationConfig& c = opts.config;
    c.mode = RunMode::Mc;
    validate_config(c);
    if (c.out_path.empty()) {
        throw ValidationError("mc: --out is required");
    }
    McParams params{law_from(c), Sensitivity(c.beta)};
    params.n_sites = c.grid_points;
    params.dx = c.dx;
    params.particles = c.particles;
    params.runs = c.runs;
    params.output_times = c.output_times;
    params.threads = c.threads;
    const EnsembleResult ensemble = run_ensemble(params, c.master_seed);
    write_profile_csv(to_profile_set(ensemble, c.dx), c.out_path);
    std::cout << echo_config(c);
    std::cout << "wrote " << c.out_path << '\n';
    return 0;
}

int run_compare(CliOptions& opts)
{
    SimulationConfig& c = opts.config;
    c.mode = RunMode::Compare;
    if (c.a_path.empty() || c.b_path.empty()) {
        throw ValidationError("compare: --a and --b are required");
    }
    if (c.report_path.empty()) {
        throw ValidationError("compare: --report is required");
    }
    const ProfileSet a = read_profile_csv(c.a_path);
    const ProfileSet b = read_profile_csv(c.b_path);
    std::vector<double> times =
        opts.times_text.empty() ? a.times : parse_time_list(opts.times_text);
    ComparisonReport report = compare_profiles(a, b, times);
    report.a_label = c.a_path;
    report.b_label = c.b_path;
    c.output_times = times;
    write_report_json(report, c.report_path, echo_config_json(c));
    for (const ComparisonEntry& e : report.entries) {
        std::cout << "t=" << e.t << " l1=" << e.l1 << " max_abs_dev=" << e.max_abs_dev
                  << '\n';
    }
    std::cout << "wrote " << c.report_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"anomalous-subdiffusive chemotaxis toolkit"};
    app.require_subcommand(1);

    CliOptions solve_opts;
    solve_opts.config.mode = subchemo::RunMode::Solve;
    CLI::App* solve_cmd = app.add_subcommand("solve", "time-step one model equation");
    add_shared_flags(solve_cmd, solve_opts);
    solve_cmd->add_option("--model", solve_opts.config.model,
                          "model equation to solve: 1|2|3|4");

    CliOptions mc_opts;
    mc_opts.config.mode = subchemo::RunMode::Mc;
    CLI::App* mc_cmd = app.add_subcommand("mc", "run the particle ensemble");
    add_shared_flags(mc_cmd, mc_opts);
    mc_cmd->add_option("--particles", mc_opts.config.particles, "particles per run");
    mc_cmd->add_option("--runs", mc_opts.config.runs, "independent runs to average");
    mc_cmd->add_option("--seed", mc_opts.config.master_seed, "master seed");

    CliOptions cmp_opts;
    cmp_opts.config.mode = subchemo::RunMode::Compare;
    CLI::App* cmp_cmd = app.add_subcommand("compare", "compare two profile CSVs");
    cmp_cmd->add_option("--a", cmp_opts.config.a_path, "first profile CSV");
    cmp_cmd->add_option("--b", cmp_opts.config.b_path, "second profile CSV");
    cmp_cmd->add_option("--report", cmp_opts.config.report_path, "JSON report path");
    cmp_cmd->add_option("--times", cmp_opts.times_text, "comma-separated times subset");

    try {
        app.parse(argc, argv);
        if (solve_cmd->parsed()) {
            merge_config(solve_cmd, solve_opts);
            return run_solve(solve_opts);
        }
        if (mc_cmd->parsed()) {
            merge_config(mc_cmd, mc_opts);
            return run_mc(mc_opts);
        }
        if (cmp_cmd->parsed()) {
            return run_compare(cmp_opts);
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const subchemo::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const subchemo::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const subchemo::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

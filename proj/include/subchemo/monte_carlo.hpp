#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "subchemo/chemotaxis.hpp"
#include "subchemo/waiting_time.hpp"

namespace subchemo {

/// Event-driven particle-walk configuration. All particles start on the
/// centre site of a periodic lattice with n_sites sites (odd).
struct McParams {
    WaitingTimeLaw law;
    Sensitivity sensitivity;
    std::size_t n_sites = 101;
    double dx = 1.0;
    std::size_t particles = 10000;
    std::size_t runs = 200;
    std::vector<double> output_times{0.4, 2.0, 4.0, 20.0};
    unsigned threads = 0;  ///< worker count for the ensemble; 0 = hardware default
};

/// Output of a single run: per-output-time site counts plus the sum of
/// squared (unwrapped) particle displacements.
struct RunResult {
    std::vector<std::vector<double>> histograms;  ///< [time][site] particle counts
    std::vector<double> sum_sq_displacement;      ///< [time] sum over particles, units dx^2
};

/// Run-averaged histograms. Each histogram sums to the particle count.
struct EnsembleResult {
    std::vector<double> output_times;
    std::vector<std::vector<double>> histograms;  ///< [time][site] mean count over runs
    std::vector<double> msd;                      ///< [time] ensemble mean square displacement
    std::size_t runs = 0;
    std::size_t particles = 0;
    std::uint64_t master_seed = 0;
};

/// Nearest-neighbour jump displacement for a uniform draw r in (0,1):
/// -dx when r < p.left, +dx otherwise.
double sample_jump(const JumpProbabilities& p, double r, double dx);

/// One event-driven run. Between events nothing moves; at each event the jump
/// direction is drawn from the self-chemotactic proportion at the jump
/// instant, then a fresh waiting time is drawn (in that order, from one
/// stream). Snapshots are recorded whenever the next event time passes an
/// output time, before that event is processed. Identical (params, seed)
/// yields identical results.
RunResult run_single(const McParams& params, std::uint64_t seed);

/// Averages runs with per-run seeds derived from master_seed and the run
/// index. Runs execute in parallel; the reduction is in run-index order, so
/// the result is bit-identical for any worker count.
EnsembleResult run_ensemble(const McParams& params, std::uint64_t master_seed);

}  // namespace subchemo

#include "subchemo/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <queue>
#include <string>
#include <thread>
#include <utility>

#include "subchemo/errors.hpp"
#include "subchemo/rng.hpp"

namespace subchemo {

namespace {

void validate_params(const McParams& params)
{
    if (params.n_sites < 3 || params.n_sites % 2 == 0) {
        throw ValidationError("mc: n_sites must be odd and >= 3");
    }
    if (params.particles == 0) {
        throw ValidationError("mc: particles must be >= 1");
    }
    if (!(params.dx > 0.0) || !std::isfinite(params.dx)) {
        throw ValidationError("mc: dx must be positive and finite");
    }
    if (params.output_times.empty()) {
        throw ValidationError("mc: needs at least one output time");
    }
    double prev = -1.0;
    for (double t : params.output_times) {
        if (!(t >= 0.0) || !std::isfinite(t) || t <= prev) {
            throw ValidationError("mc: output times must be finite, nonnegative, "
                                  "strictly ascending");
        }
        prev = t;
    }
}

}  // namespace

double sample_jump(const JumpProbabilities& p, double r, double dx)
{
    if (!(r >= 0.0) || !(r < 1.0)) {
        throw ValidationError("sample_jump: r must lie in [0, 1)");
    }
    return r < p.left ? -dx : dx;
}

RunResult run_single(const McParams& params, std::uint64_t seed)
{
    validate_params(params);
    const std::size_t n = params.n_sites;
    const std::size_t particles = params.particles;
    const auto origin = static_cast<std::int64_t>(n / 2);
    const std::size_t n_out = params.output_times.size();
    const double inv_particles = 1.0 / static_cast<double>(particles);

    std::vector<std::int64_t> displacement(particles, 0);  // unwrapped, lattice units
    std::vector<std::uint32_t> counts(n, 0);
    counts[static_cast<std::size_t>(origin)] = static_cast<std::uint32_t>(particles);

    const auto wrap = [&](std::int64_t unbounded) -> std::size_t {
        const auto size = static_cast<std::int64_t>(n);
        return static_cast<std::size_t>(((unbounded % size) + size) % size);
    };

    std::mt19937_64 gen(seed);

    using Event = std::pair<double, std::uint32_t>;
    std::vector<Event> initial;
    initial.reserve(particles);
    for (std::uint32_t p = 0; p < particles; ++p) {
        initial.emplace_back(params.law.sample(uniform_open(gen)), p);
    }
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events(
        std::greater<Event>{}, std::move(initial));

    RunResult result;
    result.histograms.assign(n_out, std::vector<double>(n, 0.0));
    result.sum_sq_displacement.assign(n_out, 0.0);

    const auto record = [&](std::size_t t_idx) {
        std::vector<double>& hist = result.histograms[t_idx];
        for (std::size_t i = 0; i < n; ++i) hist[i] = counts[i];
        double ssq = 0.0;
        for (std::int64_t d : displacement) {
            const double phys = static_cast<double>(d) * params.dx;
            ssq += phys * phys;
        }
        result.sum_sq_displacement[t_idx] = ssq;
    };

    std::size_t out = 0;
    while (out < n_out) {
        const Event next_event = events.top();
        // Snapshots fall due before the event that overtakes them is processed.
        while (out < n_out && next_event.first > params.output_times[out]) {
            record(out);
            ++out;
        }
        if (out >= n_out) break;

        events.pop();
        const std::uint32_t p = next_event.second;
        const std::size_t site = wrap(origin + displacement[p]);
        const double c_left = counts[wrap(static_cast<std::int64_t>(site) - 1)]
                              * inv_particles;
        const double c_right = counts[wrap(static_cast<std::int64_t>(site) + 1)]
                               * inv_particles;
        const JumpProbabilities jp =
            jump_probabilities(params.sensitivity, c_left, c_right);

        // Direction first, then the fresh waiting time, from the same stream.
        const double jump = sample_jump(jp, uniform_open(gen), params.dx);
        const double wait = params.law.sample(uniform_open(gen));

        --counts[site];
        displacement[p] += jump < 0.0 ? -1 : 1;
        ++counts[wrap(origin + displacement[p])];
        events.emplace(next_event.first + wait, p);
    }
    return result;
}

EnsembleResult run_ensemble(const McParams& params, std::uint64_t master_seed)
{
    validate_params(params);
    if (params.runs == 0) {
        throw ValidationError("mc: runs must be >= 1");
    }
    const std::size_t runs = params.runs;

    unsigned workers = params.threads;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers, runs));

    std::vector<RunResult> per_run(runs);
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_lock;

    const auto work = [&]() {
        try {
            while (true) {
                const std::size_t r = cursor.fetch_add(1);
                if (r >= runs) break;
                per_run[r] = run_single(params, derive_seed(master_seed, r));
            }
        } catch (...) {
            const std::lock_guard<std::mutex> hold(failure_lock);
            if (!failure) failure = std::current_exception();
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    const std::size_t n_out = params.output_times.size();
    EnsembleResult ensemble;
    ensemble.output_times = params.output_times;
    ensemble.histograms.assign(n_out, std::vector<double>(params.n_sites, 0.0));
    ensemble.msd.assign(n_out, 0.0);
    ensemble.runs = runs;
    ensemble.particles = params.particles;
    ensemble.master_seed = master_seed;

    // Fixed-order reduction keeps the result independent of worker scheduling.
    for (std::size_t r = 0; r < runs; ++r) {
        for (std::size_t t = 0; t < n_out; ++t) {
            const std::vector<double>& hist = per_run[r].histograms[t];
            std::vector<double>& acc = ensemble.histograms[t];
            for (std::size_t i = 0; i < params.n_sites; ++i) acc[i] += hist[i];
            ensemble.msd[t] += per_run[r].sum_sq_displacement[t];
        }
    }
    const double inv_runs = 1.0 / static_cast<double>(runs);
    const double inv_samples = inv_runs / static_cast<double>(params.particles);
    for (std::size_t t = 0; t < n_out; ++t) {
        for (double& v : ensemble.histograms[t]) v *= inv_runs;
        ensemble.msd[t] *= inv_samples;
    }
    return ensemble;
}

}  // namespace subchemo

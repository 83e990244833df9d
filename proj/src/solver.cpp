#include "subchemo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "subchemo/errors.hpp"
#include "subchemo/fractional.hpp"
#include "subchemo/tridiag.hpp"

namespace subchemo {

namespace {

constexpr double kNegativeAbortThreshold = -1e-12;

struct ProbabilityField {
    std::vector<double> left;
    std::vector<double> right;
};

ProbabilityField probabilities_from(const std::vector<double>& c, const Sensitivity& s)
{
    const std::size_t n = c.size();
    ProbabilityField p;
    p.left.resize(n);
    p.right.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const JumpProbabilities jp =
            jump_probabilities(s, c[(i + n - 1) % n], c[(i + 1) % n]);
        p.left[i] = jp.left;
        p.right[i] = jp.right;
    }
    return p;
}

std::vector<double> proportion_of(const std::vector<double>& n_values)
{
    double mass = 0.0;
    for (double v : n_values) mass += v;
    std::vector<double> c(n_values.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = n_values[i] / mass;
    return c;
}

// Incremental stepper for one trajectory. Holds the concentration history,
// the per-model auxiliary history, and the jump probabilities at the latest
// time index. advance() produces the field one step ahead and appends it.
class StepEngine {
public:
    StepEngine(const ModelSpec& spec, std::size_t n_sites, double dx, double dt,
               std::size_t max_steps, const LatticeField* external_c)
        : spec_(spec),
          n_(n_sites),
          dx_(dx),
          dt_(dt),
          gamma_(spec.law().gamma()),
          k_(spec.reaction_k()),
          rate_(spec.law().tail_constant().a_gamma / std::pow(spec.law().tau(), gamma_)),
          classical_(gamma_ == 1.0)
    {
        if (n_ < 3) {
            throw ValidationError("solver: lattice needs at least 3 sites");
        }
        if (external_c != nullptr) {
            if (external_c->size() != n_ || !external_c->all_finite()) {
                throw ValidationError(
                    "solver: external chemoattractant grid mismatch or non-finite");
            }
            external_c_ = external_c->values;
        }
        if (!classical_) {
            const FractionalOrder alpha(1.0 - gamma_);
            alpha_ = alpha.value();
            if (spec_.model() == Model::II || spec_.model() == Model::III) {
                weights_ = l1_weights(alpha, max_steps);
                c_alpha_ = std::pow(dt_, -alpha_) / std::tgamma(2.0 - alpha_);
                inv_gamma1_ = 1.0 / std::tgamma(1.0 - alpha_);
            } else if (spec_.model() == Model::IV) {
                kernel_ = volterra_weights(spec_.law(), dt_, max_steps, k_).psi;
            }
        }
    }

    std::size_t latest_index() const { return n_hist_.size() - 1; }
    double clamped_mass() const { return clamped_mass_; }

    void start(const LatticeField& initial) { push_snapshot(initial.values); }

    void rebuild(const FieldHistory& state, std::size_t m)
    {
        if (state.dt() != dt_) {
            throw ValidationError("solver: history dt mismatch");
        }
        for (std::size_t j = 0; j <= m; ++j) {
            push_snapshot(state.at(j).values);
        }
    }

    LatticeField advance()
    {
        const std::size_t m = latest_index();
        const double t_new = static_cast<double>(m + 1) * dt_;

        std::vector<double> x;
        if (classical_) {
            x = step_classical(m);
        } else {
            switch (spec_.model()) {
                case Model::I: x = step_power_law_rate(m); break;
                case Model::II: x = step_flux_memory(m, t_new); break;
                case Model::III: x = step_sitewise_memory(m, t_new); break;
                case Model::IV: x = step_renewal_integral(m, t_new); break;
            }
        }

        accept(x, m + 1, t_new);
        push_snapshot(x);

        LatticeField out;
        out.dx = dx_;
        out.values = std::move(x);
        return out;
    }

private:
    // Bands for (1 + a_diag) x_i - coupling*(p_r(i-1) x_{i-1} + p_l(i+1) x_{i+1}).
    std::vector<double> solve_banded(double a_diag, double coupling,
                                     const std::vector<double>& rhs) const
    {
        std::vector<double> sub(n_), diag(n_), sup(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            sub[i] = -coupling * prob_.right[(i + n_ - 1) % n_];
            sup[i] = -coupling * prob_.left[(i + 1) % n_];
            diag[i] = 1.0 + a_diag;
        }
        return solve_cyclic_tridiagonal(sub, diag, sup, rhs);
    }

    // gamma = 1: every model reduces to the same implicit nearest-neighbour
    // exchange at rate A_1/tau, with the exact per-step reaction growth.
    std::vector<double> step_classical(std::size_t m) const
    {
        const double a = dt_ * rate_;
        std::vector<double> rhs(n_);
        const double growth = std::exp(k_ * dt_);
        for (std::size_t i = 0; i < n_; ++i) rhs[i] = growth * n_hist_[m][i];
        return solve_banded(a, a, rhs);
    }

    // Model I: time-dependent jump rate, singular factor taken at the step
    // midpoint so the first step stays finite.
    std::vector<double> step_power_law_rate(std::size_t m) const
    {
        const double t_mid = (static_cast<double>(m) + 0.5) * dt_;
        const double theta = rate_ * gamma_ * std::pow(t_mid, gamma_ - 1.0);
        const double a = dt_ * theta;
        return solve_banded(a, a, n_hist_[m]);
    }

    // History part of the L1 derivative at t_{m+1}: everything except the
    // c_alpha * f^{m+1} contribution of the newest (implicit) value.
    std::vector<double> l1_history_term(const std::vector<std::vector<double>>& hist,
                                        std::size_t m, double t_new) const
    {
        std::vector<double> h(n_, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const double w = weights_[m - j];
            const std::vector<double>& f0 = hist[j];
            const std::vector<double>& f1 = hist[j + 1];
            for (std::size_t i = 0; i < n_; ++i) h[i] += w * (f1[i] - f0[i]);
        }
        const double boundary = std::pow(t_new, -alpha_) * inv_gamma1_;
        const std::vector<double>& fm = hist[m];
        const std::vector<double>& f0 = hist[0];
        for (std::size_t i = 0; i < n_; ++i) {
            h[i] = c_alpha_ * (h[i] - fm[i]) + f0[i] * boundary;
        }
        return h;
    }

    // Model II: the memory operator acts on the whole exchange flux
    // g_i = -n_i + p_r(i-1) n_{i-1} + p_l(i+1) n_{i+1}, stored (reaction-tilted)
    // per time level in aux_hist_.
    std::vector<double> step_flux_memory(std::size_t m, double t_new) const
    {
        const std::vector<double> h = l1_history_term(aux_hist_, m, t_new);
        const double growth = std::exp(k_ * dt_);
        const double lift = std::exp(k_ * t_new);
        std::vector<double> rhs(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            rhs[i] = growth * n_hist_[m][i] + dt_ * rate_ * lift * h[i];
        }
        const double a = dt_ * rate_ * c_alpha_;
        return solve_banded(a, a, rhs);
    }

    // Model III: the memory operator acts per site on n, and today's jump
    // probabilities multiply the three site derivatives.
    std::vector<double> step_sitewise_memory(std::size_t m, double t_new) const
    {
        const std::vector<double> h = l1_history_term(aux_hist_, m, t_new);
        const double growth = std::exp(k_ * dt_);
        const double lift = std::exp(k_ * t_new);
        std::vector<double> rhs(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            const double mixed = prob_.right[(i + n_ - 1) % n_] * h[(i + n_ - 1) % n_]
                                 + prob_.left[(i + 1) % n_] * h[(i + 1) % n_] - h[i];
            rhs[i] = growth * n_hist_[m][i] + dt_ * rate_ * lift * mixed;
        }
        const double a = dt_ * rate_ * c_alpha_;
        return solve_banded(a, a, rhs);
    }

    // Model IV: renewal integral equation advanced with piecewise-linear
    // product integration; the newest node is implicit with weight omega0.
    std::vector<double> step_renewal_integral(std::size_t m, double t_new) const
    {
        const double omega0 = kernel_.total[0] - kernel_.rising[0];
        std::vector<double> b(n_);
        for (std::size_t i = 0; i < n_; ++i) b[i] = n_hist_[m][i] * kernel_.rising[0];
        for (std::size_t l = 2; l <= m + 1; ++l) {
            const double rising = kernel_.rising[l - 1];
            const double falling = kernel_.total[l - 1] - rising;
            const std::vector<double>& older = n_hist_[m + 1 - l];
            const std::vector<double>& newer = n_hist_[m + 2 - l];
            for (std::size_t i = 0; i < n_; ++i) {
                b[i] += older[i] * rising + newer[i] * falling;
            }
        }
        const double survival_term = spec_.law().survival(t_new) * std::exp(k_ * t_new);
        std::vector<double> rhs(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            rhs[i] = n_hist_[0][i] * survival_term
                     + prob_.right[(i + n_ - 1) % n_] * b[(i + n_ - 1) % n_]
                     + prob_.left[(i + 1) % n_] * b[(i + 1) % n_];
        }
        return solve_banded(0.0, omega0, rhs);
    }

    // Post-solve checks: finiteness, the negative-value policy, and the mass
    // balance guard. Clamped mass is accumulated for diagnostics.
    void accept(std::vector<double>& x, std::size_t new_index, double t_new)
    {
        const std::string where =
            "model " + std::to_string(static_cast<int>(spec_.model())) + " step "
            + std::to_string(new_index);
        for (std::size_t i = 0; i < n_; ++i) {
            if (!std::isfinite(x[i])) {
                throw NumericalError(where + ": non-finite value at site "
                                     + std::to_string(i));
            }
            if (x[i] < kNegativeAbortThreshold) {
                throw NumericalError(where + ": negative concentration "
                                     + std::to_string(x[i]) + " at site "
                                     + std::to_string(i));
            }
            if (x[i] < 0.0) {
                clamped_mass_ += -x[i];
                x[i] = 0.0;
            }
        }
        double mass = 0.0;
        for (double v : x) mass += v;
        const bool guard_mass =
            k_ == 0.0 || spec_.model() == Model::II || spec_.model() == Model::III;
        if (guard_mass) {
            const double expected = initial_mass_ * std::exp(k_ * t_new);
            const double tol = (k_ == 0.0) ? 1e-7 : 1e-5;
            if (!(std::abs(mass - expected) <= tol * expected)) {
                throw NumericalError(where + ": mass balance violated (mass "
                                     + std::to_string(mass) + ", expected "
                                     + std::to_string(expected) + ")");
            }
        }
    }

    void push_snapshot(const std::vector<double>& values)
    {
        const std::size_t idx = n_hist_.size();
        if (idx == 0) {
            initial_mass_ = 0.0;
            for (double v : values) initial_mass_ += v;
            if (!(initial_mass_ > 0.0)) {
                throw ValidationError("solver: initial field must carry positive mass");
            }
        }
        n_hist_.push_back(values);
        const std::vector<double> c =
            external_c_.empty() ? proportion_of(values) : external_c_;
        prob_ = probabilities_from(c, spec_.sensitivity());

        if (classical_) return;
        const double t = static_cast<double>(idx) * dt_;
        if (spec_.model() == Model::II) {
            // Exchange flux at its own time level, tilted by e^{-kt}.
            std::vector<double> g(n_);
            const double tilt = std::exp(-k_ * t);
            for (std::size_t i = 0; i < n_; ++i) {
                g[i] = tilt
                       * (-values[i]
                          + prob_.right[(i + n_ - 1) % n_] * values[(i + n_ - 1) % n_]
                          + prob_.left[(i + 1) % n_] * values[(i + 1) % n_]);
            }
            aux_hist_.push_back(std::move(g));
        } else if (spec_.model() == Model::III) {
            std::vector<double> tilted(values);
            const double tilt = std::exp(-k_ * t);
            for (double& v : tilted) v *= tilt;
            aux_hist_.push_back(std::move(tilted));
        }
    }

    ModelSpec spec_;
    std::size_t n_;
    double dx_;
    double dt_;
    double gamma_;
    double k_;
    double rate_;
    bool classical_;
    double alpha_ = 0.0;
    double c_alpha_ = 0.0;
    double inv_gamma1_ = 0.0;
    std::vector<double> weights_;
    KernelWeights kernel_;
    std::vector<double> external_c_;
    std::vector<std::vector<double>> n_hist_;
    std::vector<std::vector<double>> aux_hist_;
    ProbabilityField prob_;
    double initial_mass_ = 0.0;
    double clamped_mass_ = 0.0;
};

LatticeField step_one(Model model, const FieldHistory& state, const ModelSpec& spec,
                      std::size_t m, const LatticeField* external_c)
{
    if (spec.model() != model) {
        throw ValidationError("step_model: spec selects a different model");
    }
    if (state.size() <= m) {
        throw ValidationError("step_model: history not populated through index "
                              + std::to_string(m));
    }
    StepEngine engine(spec, state.at(0).size(), state.at(0).dx, state.dt(), m + 1,
                      external_c);
    engine.rebuild(state, m);
    return engine.advance();
}

}  // namespace

ModelSpec::ModelSpec(Model model, WaitingTimeLaw law, Sensitivity sensitivity,
                     double reaction_k)
    : model_(model), law_(law), sensitivity_(sensitivity), reaction_k_(reaction_k)
{
    if (!std::isfinite(reaction_k)) {
        throw ValidationError("ModelSpec: reaction rate must be finite");
    }
    if (model_ == Model::I && reaction_k_ != 0.0) {
        throw ValidationError("ModelSpec: Model I has no reaction extension");
    }
}

double ModelSpec::diffusion_coefficient(double dx) const
{
    return law_.tail_constant().a_gamma * dx * dx
           / (2.0 * std::pow(law_.tau(), law_.gamma()));
}

double ModelSpec::chemotaxis_coefficient(double dx) const
{
    return law_.tail_constant().a_gamma * sensitivity_.beta() * dx * dx
           / std::pow(law_.tau(), law_.gamma());
}

LatticeField step_model1(const FieldHistory& state, const ModelSpec& spec, std::size_t m,
                         const LatticeField* external_c)
{
    return step_one(Model::I, state, spec, m, external_c);
}

LatticeField step_model2(const FieldHistory& state, const ModelSpec& spec, std::size_t m,
                         const LatticeField* external_c)
{
    return step_one(Model::II, state, spec, m, external_c);
}

LatticeField step_model3(const FieldHistory& state, const ModelSpec& spec, std::size_t m,
                         const LatticeField* external_c)
{
    return step_one(Model::III, state, spec, m, external_c);
}

LatticeField step_model4(const FieldHistory& state, const ModelSpec& spec, std::size_t m,
                         const LatticeField* external_c)
{
    return step_one(Model::IV, state, spec, m, external_c);
}

Trajectory solve(const ModelSpec& spec, const LatticeField& initial, double dt,
                 double t_max, std::span<const double> output_times,
                 const LatticeField* external_c)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("solve: dt must be positive and finite");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw ValidationError("solve: t_max must be positive and finite");
    }
    if (!initial.all_finite()) {
        throw ValidationError("solve: initial field has non-finite entries");
    }
    for (double v : initial.values) {
        if (v < 0.0) throw ValidationError("solve: initial field has negative entries");
    }
    if (!(initial.total_mass() > 0.0)) {
        throw ValidationError("solve: initial field must carry positive mass");
    }

    const auto grid_index = [dt](double t) -> std::size_t {
        const double fractional = t / dt;
        const auto idx = static_cast<std::size_t>(std::llround(fractional));
        if (std::abs(static_cast<double>(idx) * dt - t) > 1e-9 * std::max(1.0, t)) {
            throw ValidationError("solve: time " + std::to_string(t)
                                  + " does not lie on the dt grid");
        }
        return idx;
    };

    const std::size_t total_steps = grid_index(t_max);
    if (total_steps == 0) {
        throw ValidationError("solve: t_max shorter than one step");
    }

    std::vector<double> times(output_times.begin(), output_times.end());
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<std::size_t> out_index;
    out_index.reserve(times.size());
    for (double t : times) {
        if (t < 0.0) throw ValidationError("solve: negative output time");
        const std::size_t idx = grid_index(t);
        if (idx > total_steps) {
            throw ValidationError("solve: output time " + std::to_string(t)
                                  + " exceeds t_max");
        }
        out_index.push_back(idx);
    }

    Trajectory traj{FieldHistory(dt), {}, {}, 0.0};
    StepEngine engine(spec, initial.size(), initial.dx, dt, total_steps, external_c);
    engine.start(initial);
    traj.history.append(initial);

    std::size_t next_out = 0;
    const auto record_if_requested = [&](std::size_t step_index, const LatticeField& f) {
        while (next_out < out_index.size() && out_index[next_out] == step_index) {
            traj.output_times.push_back(times[next_out]);
            traj.outputs.push_back(f);
            ++next_out;
        }
    };
    record_if_requested(0, initial);

    for (std::size_t step = 0; step < total_steps; ++step) {
        LatticeField next = engine.advance();
        traj.history.append(next);
        record_if_requested(step + 1, next);
    }
    traj.clamped_mass = engine.clamped_mass();
    return traj;
}

}  // namespace subchemo

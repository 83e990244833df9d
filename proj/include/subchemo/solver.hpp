#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "subchemo/chemotaxis.hpp"
#include "subchemo/lattice.hpp"
#include "subchemo/waiting_time.hpp"

namespace subchemo {

enum class Model { I = 1, II = 2, III = 3, IV = 4 };

/// Model selection plus physical parameters. The transport coefficients are
/// derived from the law and lattice spacing on demand, never set directly.
/// reaction_k > 0 is per-capita gain, < 0 loss, 0 off. Model I does not
/// support reactions.
class ModelSpec {
public:
    ModelSpec(Model model, WaitingTimeLaw law, Sensitivity sensitivity,
              double reaction_k = 0.0);

    Model model() const { return model_; }
    const WaitingTimeLaw& law() const { return law_; }
    const Sensitivity& sensitivity() const { return sensitivity_; }
    double reaction_k() const { return reaction_k_; }

    /// A_gamma * dx^2 / (2 tau^gamma); reporting only.
    double diffusion_coefficient(double dx) const;
    /// A_gamma * beta * dx^2 / tau^gamma; reporting only.
    double chemotaxis_coefficient(double dx) const;

private:
    Model model_;
    WaitingTimeLaw law_;
    Sensitivity sensitivity_;
    double reaction_k_;
};

/// Full time history of a run plus the snapshots requested as output.
struct Trajectory {
    FieldHistory history;
    std::vector<double> output_times;
    std::vector<LatticeField> outputs;
    /// Total negative mass zeroed by the clamp rule over the whole run.
    double clamped_mass = 0.0;
};

/// One implicit step t_m -> t_{m+1} of each model's discrete-space equation,
/// given the field history populated through index m. The jump probabilities
/// of the implicit solve are evaluated from the chemoattractant at t_m;
/// history terms use their own-time probabilities. The chemoattractant is the
/// self-chemotactic proportion unless external_c is given, in which case that
/// frozen field is used verbatim at all times.
LatticeField step_model1(const FieldHistory& state, const ModelSpec& spec, std::size_t m,
                         const LatticeField* external_c = nullptr);
LatticeField step_model2(const FieldHistory& state, const ModelSpec& spec, std::size_t m,
                         const LatticeField* external_c = nullptr);
LatticeField step_model3(const FieldHistory& state, const ModelSpec& spec, std::size_t m,
                         const LatticeField* external_c = nullptr);
LatticeField step_model4(const FieldHistory& state, const ModelSpec& spec, std::size_t m,
                         const LatticeField* external_c = nullptr);

/// Time-steps the selected model from the initial field to t_max with step dt,
/// recording snapshots at the requested output times (which must lie on the
/// time grid). With k = 0 total mass is conserved each step up to solver
/// tolerance; a drift beyond the in-run guard aborts with NumericalError, as
/// does any NaN/Inf, naming the offending step.
Trajectory solve(const ModelSpec& spec, const LatticeField& initial, double dt,
                 double t_max, std::span<const double> output_times,
                 const LatticeField* external_c = nullptr);

}  // namespace subchemo

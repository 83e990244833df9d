#include "subchemo/chemotaxis.hpp"

#include <algorithm>
#include <cmath>

#include "subchemo/errors.hpp"

namespace subchemo {

namespace {

// Keeps exp() arguments finite; beta*c stays far below this in practice.
constexpr double kMaxExpArg = 700.0;

double clamped_exp(double x)
{
    return std::exp(std::clamp(x, -kMaxExpArg, kMaxExpArg));
}

}  // namespace

Sensitivity::Sensitivity(double beta) : beta_(beta)
{
    if (!std::isfinite(beta) || beta < 0.0) {
        throw ValidationError("Sensitivity: beta must be finite and >= 0");
    }
}

double sensitivity_value(const Sensitivity& s, double concentration)
{
    if (!std::isfinite(concentration)) {
        throw ValidationError("sensitivity_value: concentration must be finite");
    }
    return clamped_exp(s.beta() * concentration);
}

JumpProbabilities jump_probabilities(const Sensitivity& s, double c_left, double c_right)
{
    if (!std::isfinite(c_left) || !std::isfinite(c_right)) {
        throw ValidationError("jump_probabilities: concentrations must be finite");
    }
    // Ratio form depends only on the concentration difference, so a large
    // common offset cannot overflow.
    const double p_left = 1.0 / (1.0 + clamped_exp(s.beta() * (c_right - c_left)));
    return JumpProbabilities{p_left, 1.0 - p_left};
}

LatticeField self_chemoattractant(const LatticeField& field)
{
    double mass = 0.0;
    for (double v : field.values) {
        if (!(v >= 0.0)) {
            throw ValidationError("self_chemoattractant: negative site concentration");
        }
        mass += v;
    }
    if (!(mass > 0.0)) {
        throw ValidationError("self_chemoattractant: total mass must be positive");
    }
    LatticeField c;
    c.dx = field.dx;
    c.values.resize(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        c.values[i] = field.values[i] / mass;
    }
    return c;
}

}  // namespace subchemo

#pragma once

#include "subchemo/lattice.hpp"

namespace subchemo {

/// Chemotactic sensitivity strength; beta = 0 gives an unbiased walk.
class Sensitivity {
public:
    explicit Sensitivity(double beta);
    double beta() const { return beta_; }

private:
    double beta_;
};

/// Probabilities of a nearest-neighbour jump to the left/right.
/// left + right == 1 exactly by construction.
struct JumpProbabilities {
    double left;
    double right;
};

/// v = exp(beta * c). The exponent is clamped at +-700 so the value stays finite.
double sensitivity_value(const Sensitivity& s, double concentration);

/// Jump probabilities of a site from the chemoattractant at its two neighbours:
/// left = v(c_left) / (v(c_left) + v(c_right)), computed in the overflow-safe
/// form 1 / (1 + exp(beta*(c_right - c_left))); right = 1 - left.
JumpProbabilities jump_probabilities(const Sensitivity& s, double c_left, double c_right);

/// Self-chemotactic concentration: the particle proportion per site,
/// c_i = n_i / sum_j n_j. Requires nonnegative entries and positive total mass.
LatticeField self_chemoattractant(const LatticeField& field);

}  // namespace subchemo

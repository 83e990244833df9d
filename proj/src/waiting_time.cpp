#include "subchemo/waiting_time.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "subchemo/errors.hpp"

namespace subchemo {

WaitingTimeLaw::WaitingTimeLaw(DensityKind kind, double tau, double gamma)
    : kind_(kind), tau_(tau), gamma_(gamma)
{
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw ValidationError("WaitingTimeLaw: tau must be positive and finite");
    }
    if (!(gamma > 0.0) || !(gamma <= 1.0)) {
        throw ValidationError("WaitingTimeLaw: gamma must lie in (0, 1], got "
                              + std::to_string(gamma));
    }
    if (gamma == 1.0) {
        // gamma = 1 always uses the exponential law.
        if (kind_ == DensityKind::Pareto) {
            std::cerr << "notice: gamma = 1 selects the exponential waiting-time law; "
                         "Pareto request redirected\n";
            kind_ = DensityKind::MittagLefflerExp;
        }
        a_gamma_ = 1.0;
        return;
    }
    if (kind_ == DensityKind::MittagLefflerExp) {
        throw ValidationError(
            "WaitingTimeLaw: the Mittag-Leffler density is only supported at gamma = 1 "
            "(its exponential case); use the Pareto density for gamma < 1");
    }
    a_gamma_ = 1.0 / std::tgamma(1.0 - gamma_);
}

double WaitingTimeLaw::pdf(double t) const
{
    if (t < 0.0 || !std::isfinite(t)) {
        throw ValidationError("WaitingTimeLaw::pdf: t must be >= 0 and finite");
    }
    if (kind_ == DensityKind::MittagLefflerExp) {
        return std::exp(-t / tau_) / tau_;
    }
    return (gamma_ / tau_) * std::pow(1.0 + t / tau_, -(1.0 + gamma_));
}

double WaitingTimeLaw::survival(double t) const
{
    if (t < 0.0 || !std::isfinite(t)) {
        throw ValidationError("WaitingTimeLaw::survival: t must be >= 0 and finite");
    }
    if (kind_ == DensityKind::MittagLefflerExp) {
        return std::exp(-t / tau_);
    }
    return std::pow(1.0 + t / tau_, -gamma_);
}

double WaitingTimeLaw::sample(double r) const
{
    if (!(r > 0.0) || !(r < 1.0)) {
        throw ValidationError("WaitingTimeLaw::sample: r must lie strictly in (0, 1)");
    }
    if (kind_ == DensityKind::MittagLefflerExp) {
        return -tau_ * std::log1p(-r);
    }
    return tau_ * (std::pow(1.0 - r, -1.0 / gamma_) - 1.0);
}

}  // namespace subchemo

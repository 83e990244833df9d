#pragma once

namespace subchemo {

enum class DensityKind {
    Pareto,           ///< psi(t) = (gamma/tau) (1 + t/tau)^-(1+gamma)
    MittagLefflerExp  ///< exponential law, psi(t) = (1/tau) e^(-t/tau); gamma = 1 only
};

/// Coefficient of the long-time jump-rate ratio: 1 for the exponential law,
/// 1/Gamma(1-gamma) for the Pareto law with gamma < 1.
struct TailConstant {
    double a_gamma;
};

/// Waiting-time law with characteristic time tau and anomalous exponent gamma.
///
/// gamma = 1 always selects the exponential law regardless of the requested
/// kind; a notice is printed to stderr when a Pareto request is redirected.
/// The general Mittag-Leffler density for gamma < 1 is not supported, so
/// requesting MittagLefflerExp with gamma < 1 is an error.
///
/// Immutable after construction; safe for concurrent shared reads. Sampling
/// takes the uniform draw as an argument, so no generator state lives here.
class WaitingTimeLaw {
public:
    WaitingTimeLaw(DensityKind kind, double tau, double gamma);

    DensityKind kind() const { return kind_; }
    double tau() const { return tau_; }
    double gamma() const { return gamma_; }

    /// Density psi(t), t >= 0. Strictly decreasing in t.
    double pdf(double t) const;

    /// Survival probability Phi(t) = integral of psi over (t, inf). Phi(0) = 1.
    double survival(double t) const;

    /// Inverse-CDF waiting time for a uniform draw r in the open interval (0,1).
    double sample(double r) const;

    TailConstant tail_constant() const { return TailConstant{a_gamma_}; }

private:
    DensityKind kind_;
    double tau_;
    double gamma_;
    double a_gamma_;
};

}  // namespace subchemo

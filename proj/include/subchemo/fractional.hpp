#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "subchemo/lattice.hpp"
#include "subchemo/waiting_time.hpp"

namespace subchemo {

/// Order of the memory operator, restricted to (0,1). The order-0 case
/// (gamma = 1) is handled by bypassing the operator, never by this type.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);
    double value() const { return alpha_; }

private:
    double alpha_;
};

/// L1 increment weights w_k = (k+1)^(1-alpha) - k^(1-alpha) for k = 0..count-1.
std::vector<double> l1_weights(FractionalOrder alpha, std::size_t count);

/// Riemann-Liouville derivative of order alpha of one site's history,
/// evaluated at t_m (m >= 1) with the L1 scheme:
///
///   dt^-alpha / Gamma(2-alpha) * sum_{j=0}^{m-1} w_{m-j-1} (f_{j+1} - f_j)
///     + f_0 * t_m^-alpha / Gamma(1-alpha)
///
/// The first term is the piecewise-linear (Caputo) part, exact for linear f;
/// the second converts it to the Riemann-Liouville form.
double rl_l1(const FieldHistory& history, FractionalOrder alpha, std::size_t site,
             std::size_t m);

/// Reaction-tilted derivative e^{kt} D^alpha (e^{-kt} f): rl_l1 applied to the
/// premultiplied history g(t_j) = e^{-k t_j} f(t_j), postmultiplied by e^{k t_m}.
double rl_l1_modified(const FieldHistory& history, FractionalOrder alpha, double k,
                      std::size_t site, std::size_t m);

/// Per-interval kernel moments for the product-integration rule
///   integral_0^{t_m} K(t_m - t') n(t') dt'
/// with n piecewise linear on the grid. Interval l (1-based, counted backward
/// from the evaluation time) covers u in [t_{l-1}, t_l]:
///   total[l-1]  = integral K(u) du
///   rising[l-1] = integral K(u) (u - t_{l-1})/dt du
/// Both sequences are nonnegative and rising <= total.
struct KernelWeights {
    std::vector<double> total;
    std::vector<double> rising;
};

/// Weight sequences for both kernels of a waiting-time law, for m intervals.
/// tilt_k != 0 tilts the kernels to e^{k u} psi(u) and e^{k u} Phi(u) (the
/// linear-reaction case). Pareto moments use closed-form antiderivatives;
/// tilted Pareto kernels fall back to adaptive quadrature at 1e-10 absolute.
struct VolterraWeights {
    KernelWeights psi;
    KernelWeights phi;
};

VolterraWeights volterra_weights(const WaitingTimeLaw& law, double dt, std::size_t m,
                                 double tilt_k = 0.0);

/// Convolution value at t_m from node values nodes[0..m] (nodes.size() = m+1)
/// and at least m weight intervals:
///   sum_{l=1}^{m} nodes[m-l]*rising[l-1] + nodes[m-l+1]*(total[l-1]-rising[l-1])
/// Reproduces the integral exactly when the true n is piecewise linear.
double convolve_piecewise_linear(const KernelWeights& weights,
                                 std::span<const double> nodes);

}  // namespace subchemo

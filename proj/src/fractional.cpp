#include "subchemo/fractional.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "subchemo/errors.hpp"

namespace subchemo {

namespace {

// Adaptive Simpson quadrature, absolute tolerance.
double simpson(double a, double b, double fa, double fm, double fb)
{
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
           + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol)
{
    const double fa = f(a);
    const double fm = f(0.5 * (a + b));
    const double fb = f(b);
    const double whole = simpson(a, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

constexpr double kQuadTol = 1e-10;

// Antiderivatives of the kernel and of u*kernel, used to build the interval
// moments from endpoint differences.
struct KernelAntiderivatives {
    std::function<double(double)> prim;    // integral of K
    std::function<double(double)> moment;  // integral of u*K(u)
    bool closed_form = true;
    std::function<double(double)> kernel;  // used when closed_form is false
};

KernelAntiderivatives make_antiderivatives(const WaitingTimeLaw& law, bool density_kernel,
                                           double tilt_k)
{
    const double tau = law.tau();
    const double gamma = law.gamma();

    if (law.kind() == DensityKind::MittagLefflerExp) {
        // Exponential kernel, possibly tilted: rate lambda = 1/tau - k.
        const double lambda = 1.0 / tau - tilt_k;
        const double scale = density_kernel ? 1.0 / tau : 1.0;
        KernelAntiderivatives anti;
        if (lambda == 0.0) {
            anti.prim = [scale](double u) { return scale * u; };
            anti.moment = [scale](double u) { return scale * 0.5 * u * u; };
        } else {
            anti.prim = [scale, lambda](double u) {
                return -scale / lambda * std::exp(-lambda * u);
            };
            anti.moment = [scale, lambda](double u) {
                return -scale * (u / lambda + 1.0 / (lambda * lambda))
                       * std::exp(-lambda * u);
            };
        }
        return anti;
    }

    if (tilt_k == 0.0) {
        KernelAntiderivatives anti;
        if (density_kernel) {
            anti.prim = [tau, gamma](double u) { return -std::pow(1.0 + u / tau, -gamma); };
            anti.moment = [tau, gamma](double u) {
                const double s = 1.0 + u / tau;
                return gamma * tau * std::pow(s, 1.0 - gamma) / (1.0 - gamma)
                       + tau * std::pow(s, -gamma);
            };
        } else {
            anti.prim = [tau, gamma](double u) {
                return tau * std::pow(1.0 + u / tau, 1.0 - gamma) / (1.0 - gamma);
            };
            anti.moment = [tau, gamma](double u) {
                const double s = 1.0 + u / tau;
                return tau * tau
                       * (std::pow(s, 2.0 - gamma) / (2.0 - gamma)
                          - std::pow(s, 1.0 - gamma) / (1.0 - gamma));
            };
        }
        return anti;
    }

    // Tilted Pareto kernels have no elementary antiderivative; integrate
    // numerically per interval.
    KernelAntiderivatives anti;
    anti.closed_form = false;
    anti.kernel = [&law, density_kernel, tilt_k](double u) {
        const double base = density_kernel ? law.pdf(u) : law.survival(u);
        return std::exp(tilt_k * u) * base;
    };
    return anti;
}

KernelWeights build_kernel_weights(const WaitingTimeLaw& law, bool density_kernel,
                                   double dt, std::size_t m, double tilt_k)
{
    const KernelAntiderivatives anti = make_antiderivatives(law, density_kernel, tilt_k);
    KernelWeights w;
    w.total.resize(m);
    w.rising.resize(m);
    for (std::size_t l = 1; l <= m; ++l) {
        const double a = static_cast<double>(l - 1) * dt;
        const double b = static_cast<double>(l) * dt;
        double total = 0.0;
        double rising = 0.0;
        if (anti.closed_form) {
            const double dI = anti.prim(b) - anti.prim(a);
            const double dJ = anti.moment(b) - anti.moment(a);
            total = dI;
            rising = (dJ - a * dI) / dt;
        } else {
            total = adaptive_simpson(anti.kernel, a, b, kQuadTol);
            rising = adaptive_simpson(
                [&anti, a, dt](double u) { return anti.kernel(u) * (u - a) / dt; }, a, b,
                kQuadTol);
        }
        // Roundoff in the endpoint differences can leave values a hair outside
        // [0, total]; clip within a small margin, fail beyond it.
        constexpr double kMomentSlack = 1e-8;
        if (total < -kMomentSlack || rising < -kMomentSlack || rising > total + kMomentSlack) {
            throw NumericalError("volterra_weights: inconsistent kernel moment at interval "
                                 + std::to_string(l));
        }
        total = std::max(total, 0.0);
        rising = std::min(std::max(rising, 0.0), total);
        w.total[l - 1] = total;
        w.rising[l - 1] = rising;
    }
    return w;
}

}  // namespace

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha)
{
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw ValidationError("FractionalOrder: alpha must lie in (0, 1), got "
                              + std::to_string(alpha));
    }
}

std::vector<double> l1_weights(FractionalOrder alpha, std::size_t count)
{
    const double p = 1.0 - alpha.value();
    std::vector<double> w(count);
    double prev = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double next = std::pow(static_cast<double>(k + 1), p);
        w[k] = next - prev;
        prev = next;
    }
    return w;
}

double rl_l1(const FieldHistory& history, FractionalOrder alpha, std::size_t site,
             std::size_t m)
{
    if (m < 1) {
        throw ValidationError("rl_l1: evaluation index m must be >= 1");
    }
    if (history.size() <= m) {
        throw ValidationError("rl_l1: history not populated through index "
                              + std::to_string(m));
    }
    if (site >= history.at(0).size()) {
        throw ValidationError("rl_l1: site index out of range");
    }
    const double a = alpha.value();
    const double dt = history.dt();
    const double t_m = history.time_of(m);
    const std::vector<double> w = l1_weights(alpha, m);

    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double df = history.at(j + 1).values[site] - history.at(j).values[site];
        acc += w[m - j - 1] * df;
    }
    const double caputo = std::pow(dt, -a) / std::tgamma(2.0 - a) * acc;
    const double boundary =
        history.at(0).values[site] * std::pow(t_m, -a) / std::tgamma(1.0 - a);
    return caputo + boundary;
}

double rl_l1_modified(const FieldHistory& history, FractionalOrder alpha, double k,
                      std::size_t site, std::size_t m)
{
    if (k == 0.0) {
        return rl_l1(history, alpha, site, m);
    }
    if (m < 1 || history.size() <= m) {
        throw ValidationError("rl_l1_modified: history not populated through index "
                              + std::to_string(m));
    }
    FieldHistory tilted(history.dt());
    for (std::size_t j = 0; j <= m; ++j) {
        LatticeField f = history.at(j);
        const double factor = std::exp(-k * history.time_of(j));
        for (double& v : f.values) v *= factor;
        tilted.append(std::move(f));
    }
    return std::exp(k * history.time_of(m)) * rl_l1(tilted, alpha, site, m);
}

VolterraWeights volterra_weights(const WaitingTimeLaw& law, double dt, std::size_t m,
                                 double tilt_k)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw ValidationError("volterra_weights: dt must be positive and finite");
    }
    if (m < 1) {
        throw ValidationError("volterra_weights: m must be >= 1");
    }
    VolterraWeights w;
    w.psi = build_kernel_weights(law, true, dt, m, tilt_k);
    w.phi = build_kernel_weights(law, false, dt, m, tilt_k);
    return w;
}

double convolve_piecewise_linear(const KernelWeights& weights,
                                 std::span<const double> nodes)
{
    if (nodes.empty()) {
        throw ValidationError("convolve_piecewise_linear: needs at least one node");
    }
    const std::size_t m = nodes.size() - 1;
    if (weights.total.size() < m) {
        throw ValidationError("convolve_piecewise_linear: not enough weight intervals");
    }
    double acc = 0.0;
    for (std::size_t l = 1; l <= m; ++l) {
        const double rising = weights.rising[l - 1];
        const double falling = weights.total[l - 1] - rising;
        acc += nodes[m - l] * rising + nodes[m - l + 1] * falling;
    }
    return acc;
}

}  // namespace subchemo

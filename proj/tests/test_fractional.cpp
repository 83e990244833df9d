#include "subchemo/fractional.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"

#include "subchemo/errors.hpp"
#include "subchemo/lattice.hpp"

using namespace subchemo;

namespace {

const double kPi = std::acos(-1.0);

FieldHistory history_of(const std::function<double(double)>& f, double dt, std::size_t m)
{
    FieldHistory h(dt);
    for (std::size_t j = 0; j <= m; ++j) {
        LatticeField field;
        field.values = {f(j * dt)};
        h.append(field);
    }
    return h;
}

// Test-local quadrature, independent of the library's.
double quad(const std::function<double(double)>& f, double a, double b, int depth = 18)
{
    const double m = 0.5 * (a + b);
    const double coarse = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
    if (depth == 0) return coarse;
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double fine = (b - a) / 12.0
                        * (f(a) + 4.0 * f(lm) + 2.0 * f(m) + 4.0 * f(rm) + f(b));
    if (std::abs(fine - coarse) < 1e-12) return fine;
    return quad(f, a, m, depth - 1) + quad(f, m, b, depth - 1);
}

}  // namespace

TEST_CASE("fractional order bounds")
{
    CHECK_THROWS_AS(FractionalOrder(0.0), ValidationError);
    CHECK_THROWS_AS(FractionalOrder(1.0), ValidationError);
    CHECK_THROWS_AS(FractionalOrder(-0.2), ValidationError);
    CHECK(FractionalOrder(0.5).value() == 0.5);
}

TEST_CASE("l1 derivative of the zero history vanishes")
{
    const FieldHistory h = history_of([](double) { return 0.0; }, 0.01, 50);
    CHECK(rl_l1(h, FractionalOrder(0.5), 0, 50) == 0.0);
}

TEST_CASE("l1 derivative of a constant is exact")
{
    const FieldHistory h = history_of([](double) { return 1.0; }, 0.01, 100);
    const double expected = 1.0 / std::sqrt(kPi);  // t^-a / Gamma(1-a) at t=1, a=1/2
    CHECK(rl_l1(h, FractionalOrder(0.5), 0, 100) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("l1 derivative of a linear ramp")
{
    const double dt = 1e-3;
    const std::size_t m = 1000;
    const FieldHistory h = history_of([](double t) { return t; }, dt, m);
    const double expected = 2.0 / std::sqrt(kPi);  // Gamma(2)/Gamma(1.5) * t^{1/2} at t=1
    const double got = rl_l1(h, FractionalOrder(0.5), 0, m);
    CHECK(got == doctest::Approx(expected).epsilon(1e-2));
    // Piecewise-linear reconstruction is exact for a linear integrand.
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("l1 convergence order on a quadratic")
{
    const double exact = 2.0 / std::tgamma(2.5);  // at t = 1, alpha = 1/2
    std::vector<double> errors;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
        const auto m = static_cast<std::size_t>(std::llround(1.0 / dt));
        const FieldHistory h = history_of([](double t) { return t * t; }, dt, m);
        errors.push_back(std::abs(rl_l1(h, FractionalOrder(0.5), 0, m) - exact));
    }
    for (std::size_t i = 1; i < errors.size(); ++i) {
        const double order = std::log2(errors[i - 1] / errors[i]);
        CHECK(order >= 1.3);
        CHECK(order <= 1.7);
    }
}

TEST_CASE("l1 rejects unpopulated evaluations")
{
    const FieldHistory h = history_of([](double t) { return t; }, 0.1, 3);
    CHECK_THROWS_AS(rl_l1(h, FractionalOrder(0.5), 0, 0), ValidationError);
    CHECK_THROWS_AS(rl_l1(h, FractionalOrder(0.5), 0, 4), ValidationError);
    CHECK_THROWS_AS(rl_l1(h, FractionalOrder(0.5), 5, 3), ValidationError);
}

TEST_CASE("l1 linearity")
{
    const double dt = 0.02;
    const std::size_t m = 40;
    const auto f = [](double t) { return std::sin(3.0 * t) + 0.5; };
    const auto g = [](double t) { return t * t - 2.0 * t; };
    const double a = 1.7;
    const double b = -0.9;
    const FieldHistory hf = history_of(f, dt, m);
    const FieldHistory hg = history_of(g, dt, m);
    const FieldHistory hc = history_of([&](double t) { return a * f(t) + b * g(t); }, dt, m);
    const FractionalOrder alpha(0.35);
    const double combined = rl_l1(hc, alpha, 0, m);
    const double split = a * rl_l1(hf, alpha, 0, m) + b * rl_l1(hg, alpha, 0, m);
    CHECK(combined == doctest::Approx(split).epsilon(1e-12));
}

TEST_CASE("tilted derivative reduces and cancels")
{
    const double dt = 0.01;
    const std::size_t m = 100;
    const FieldHistory h = history_of([](double t) { return std::cos(t); }, dt, m);
    const FractionalOrder alpha(0.5);
    CHECK(rl_l1_modified(h, alpha, 0.0, 0, m) == rl_l1(h, alpha, 0, m));

    // f = e^{kt} makes the tilted history constant, so the value is
    // e^{k t} times the constant's derivative.
    const double k = 0.7;
    const FieldHistory hexp = history_of([k](double t) { return std::exp(k * t); }, dt, m);
    const double expected = std::exp(k) / std::sqrt(kPi);
    CHECK(rl_l1_modified(hexp, alpha, k, 0, m)
          == doctest::Approx(expected).epsilon(1e-10));

    const FieldHistory hzero = history_of([](double) { return 0.0; }, dt, m);
    CHECK(rl_l1_modified(hzero, alpha, k, 0, m) == 0.0);
}

TEST_CASE("survival kernel weights integrate the survival function")
{
    const WaitingTimeLaw law(DensityKind::Pareto, 0.1, 0.5);
    const double dt = 0.01;
    const std::size_t m = 500;
    const VolterraWeights w = volterra_weights(law, dt, m);
    double total = 0.0;
    for (double v : w.phi.total) total += v;
    const double t = m * dt;
    const double tau = law.tau();
    const double gamma = law.gamma();
    const double exact = tau * (std::pow(1.0 + t / tau, 1.0 - gamma) - 1.0) / (1.0 - gamma);
    CHECK(total == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("kernel weights are nonnegative")
{
    for (double tilt : {0.0, 0.4}) {
        const WaitingTimeLaw law(DensityKind::Pareto, 0.1, 0.5);
        const VolterraWeights w = volterra_weights(law, 0.01, 300, tilt);
        for (const KernelWeights* kw : {&w.psi, &w.phi}) {
            for (std::size_t i = 0; i < kw->total.size(); ++i) {
                CHECK(kw->total[i] >= 0.0);
                CHECK(kw->rising[i] >= 0.0);
                CHECK(kw->rising[i] <= kw->total[i]);
            }
        }
    }
}

TEST_CASE("piecewise-linear convolution matches quadrature")
{
    const WaitingTimeLaw law(DensityKind::Pareto, 0.1, 0.5);
    const double dt = 0.05;

    SUBCASE("single interval, linear nodes")
    {
        const VolterraWeights w = volterra_weights(law, dt, 1);
        const std::vector<double> nodes = {2.0, 5.0};
        const double got = convolve_piecewise_linear(w.psi, nodes);
        // n(t') = 2 + 3 t'/dt on [0, dt]; kernel argument is dt - t'.
        const double expected = quad(
            [&](double tp) { return law.pdf(dt - tp) * (2.0 + 3.0 * tp / dt); }, 0.0, dt);
        CHECK(got == doctest::Approx(expected).epsilon(1e-8));
    }

    SUBCASE("many intervals, piecewise-linear nodes, both kernels")
    {
        const std::size_t m = 40;
        const VolterraWeights w = volterra_weights(law, dt, m);
        std::vector<double> nodes(m + 1);
        for (std::size_t j = 0; j <= m; ++j) {
            nodes[j] = 1.0 + std::sin(0.37 * static_cast<double>(j));
        }
        const auto pl = [&](double tp) {
            const double s = tp / dt;
            const auto j = std::min(static_cast<std::size_t>(s), m - 1);
            const double frac = s - static_cast<double>(j);
            return nodes[j] * (1.0 - frac) + nodes[j + 1] * frac;
        };
        const double t_m = m * dt;
        for (bool density : {true, false}) {
            const KernelWeights& kw = density ? w.psi : w.phi;
            const double got = convolve_piecewise_linear(kw, nodes);
            const double expected = quad(
                [&](double tp) {
                    const double kernel =
                        density ? law.pdf(t_m - tp) : law.survival(t_m - tp);
                    return kernel * pl(tp);
                },
                0.0, t_m);
            CHECK(got == doctest::Approx(expected).epsilon(1e-8));
        }
    }

    SUBCASE("zero nodes give a zero convolution")
    {
        const VolterraWeights w = volterra_weights(law, dt, 10);
        const std::vector<double> nodes(11, 0.0);
        CHECK(convolve_piecewise_linear(w.psi, nodes) == 0.0);
    }

    SUBCASE("tilted kernels agree with direct quadrature")
    {
        const double k = 0.5;
        const std::size_t m = 20;
        const VolterraWeights w = volterra_weights(law, dt, m, k);
        std::vector<double> nodes(m + 1);
        for (std::size_t j = 0; j <= m; ++j) nodes[j] = 0.2 * static_cast<double>(j) + 1.0;
        const double t_m = m * dt;
        const double got = convolve_piecewise_linear(w.psi, nodes);
        const double expected = quad(
            [&](double tp) {
                const double u = t_m - tp;
                const double node = 0.2 * (tp / dt) + 1.0;
                return std::exp(k * u) * law.pdf(u) * node;
            },
            0.0, t_m);
        CHECK(got == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("exponential-law kernel weights in closed form")
{
    const WaitingTimeLaw law(DensityKind::MittagLefflerExp, 0.5, 1.0);
    const double dt = 0.02;
    const VolterraWeights w = volterra_weights(law, dt, 50);
    double phi_total = 0.0;
    for (double v : w.phi.total) phi_total += v;
    const double t = 50 * dt;
    // integral of e^{-u/tau} over [0, t]
    const double exact = law.tau() * (1.0 - std::exp(-t / law.tau()));
    CHECK(phi_total == doctest::Approx(exact).epsilon(1e-12));
}

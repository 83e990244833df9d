#include "subchemo/tridiag.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "subchemo/errors.hpp"

namespace subchemo {

namespace {

// Plain Thomas recurrence; diag is consumed as workspace.
std::vector<double> solve_tridiagonal(std::span<const double> sub,
                                      std::vector<double> diag,
                                      std::span<const double> sup,
                                      std::vector<double> rhs)
{
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0) {
            throw NumericalError("tridiagonal solve: zero pivot at row "
                                 + std::to_string(i - 1));
        }
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0) {
        throw NumericalError("tridiagonal solve: zero pivot at last row");
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
    }
    return x;
}

}  // namespace

std::vector<double> solve_cyclic_tridiagonal(std::span<const double> sub,
                                             std::span<const double> diag,
                                             std::span<const double> sup,
                                             std::span<const double> rhs)
{
    const std::size_t n = diag.size();
    if (n < 3 || sub.size() != n || sup.size() != n || rhs.size() != n) {
        throw ValidationError("solve_cyclic_tridiagonal: needs matching bands with n >= 3");
    }

    // Rank-one splitting: A = T + u v^T with u = (sigma, 0..0, corner_bl)^T and
    // v = (1, 0..0, corner_tr/sigma)^T, where corner_tr = sub[0] couples row 0
    // to x[n-1] and corner_bl = sup[n-1] couples row n-1 to x[0].
    const double corner_tr = sub[0];
    const double corner_bl = sup[n - 1];
    const double sigma = -diag[0];
    if (sigma == 0.0) {
        throw NumericalError("solve_cyclic_tridiagonal: zero leading diagonal");
    }

    std::vector<double> diag_mod(diag.begin(), diag.end());
    diag_mod[0] -= sigma;
    diag_mod[n - 1] -= corner_tr * corner_bl / sigma;

    std::vector<double> u(n, 0.0);
    u[0] = sigma;
    u[n - 1] = corner_bl;

    std::vector<double> y =
        solve_tridiagonal(sub, diag_mod, sup, std::vector<double>(rhs.begin(), rhs.end()));
    std::vector<double> z = solve_tridiagonal(sub, diag_mod, sup, std::move(u));

    const double vy = y[0] + corner_tr / sigma * y[n - 1];
    const double vz = z[0] + corner_tr / sigma * z[n - 1];
    const double denom = 1.0 + vz;
    if (denom == 0.0 || !std::isfinite(denom)) {
        throw NumericalError("solve_cyclic_tridiagonal: singular periodic correction");
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = y[i] - vy / denom * z[i];
    }

    double rhs_scale = 0.0;
    for (double v : rhs) rhs_scale = std::max(rhs_scale, std::abs(v));
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xm = x[(i + n - 1) % n];
        const double xp = x[(i + 1) % n];
        residual = std::max(residual,
                            std::abs(sub[i] * xm + diag[i] * x[i] + sup[i] * xp - rhs[i]));
    }
    if (!(residual <= 1e-12 * rhs_scale) && rhs_scale > 0.0) {
        throw NumericalError("solve_cyclic_tridiagonal: residual " + std::to_string(residual)
                             + " exceeds tolerance for rhs scale "
                             + std::to_string(rhs_scale));
    }
    return x;
}

}  // namespace subchemo

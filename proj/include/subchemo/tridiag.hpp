#pragma once

#include <span>
#include <vector>

namespace subchemo {

/// Solves the periodic tridiagonal system
///   sub[i]*x[i-1] + diag[i]*x[i] + sup[i]*x[i+1] = rhs[i],  indices mod n,
/// with the Thomas recurrence plus a rank-one correction for the two corner
/// entries. Requires n >= 3. The residual is checked against
/// 1e-12 * max|rhs|; failure throws NumericalError with the residual attached.
std::vector<double> solve_cyclic_tridiagonal(std::span<const double> sub,
                                             std::span<const double> diag,
                                             std::span<const double> sup,
                                             std::span<const double> rhs);

}  // namespace subchemo

#include "subchemo/tridiag.hpp"

#include <random>
#include <vector>

#include "doctest.h"

#include "subchemo/errors.hpp"

using namespace subchemo;

namespace {

std::vector<double> apply_cyclic(const std::vector<double>& sub,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& sup,
                                 const std::vector<double>& x)
{
    const std::size_t n = x.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = sub[i] * x[(i + n - 1) % n] + diag[i] * x[i] + sup[i] * x[(i + 1) % n];
    }
    return y;
}

}  // namespace

TEST_CASE("cyclic solve recovers random solutions")
{
    std::mt19937_64 gen(5150);
    std::uniform_real_distribution<double> small(-0.3, 0.3);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    for (std::size_t n : {3u, 5u, 8u, 101u}) {
        std::vector<double> sub(n), diag(n), sup(n), x_true(n);
        for (std::size_t i = 0; i < n; ++i) {
            sub[i] = small(gen);
            sup[i] = small(gen);
            diag[i] = 1.5;  // dominant
            x_true[i] = val(gen);
        }
        const std::vector<double> rhs = apply_cyclic(sub, diag, sup, x_true);
        const std::vector<double> x = solve_cyclic_tridiagonal(sub, diag, sup, rhs);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(x[i] == doctest::Approx(x_true[i]).epsilon(1e-11));
        }
    }
}

TEST_CASE("cyclic solve preserves column-sum mass identities")
{
    // When every column sums to the same value s, the solution of A x = rhs
    // satisfies s * sum(x) = sum(rhs).
    const std::size_t n = 31;
    std::mt19937_64 gen(77);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    std::vector<double> p_l(n), p_r(n);
    for (std::size_t i = 0; i < n; ++i) {
        p_l[i] = prob(gen);
        p_r[i] = 1.0 - p_l[i];
    }
    const double a = 0.2;
    std::vector<double> sub(n), diag(n), sup(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        sub[i] = -a * p_r[(i + n - 1) % n];
        sup[i] = -a * p_l[(i + 1) % n];
        diag[i] = 1.0 + a;
        rhs[i] = prob(gen);
    }
    const std::vector<double> x = solve_cyclic_tridiagonal(sub, diag, sup, rhs);
    double sum_x = 0.0;
    double sum_rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_x += x[i];
        sum_rhs += rhs[i];
    }
    CHECK(sum_x == doctest::Approx(sum_rhs).epsilon(1e-13));
}

TEST_CASE("cyclic solve input guards")
{
    std::vector<double> three(3, 1.0);
    std::vector<double> two(2, 1.0);
    CHECK_THROWS_AS(solve_cyclic_tridiagonal(two, two, two, two), ValidationError);
    CHECK_THROWS_AS(solve_cyclic_tridiagonal(two, three, three, three), ValidationError);
}

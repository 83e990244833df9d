#include "subchemo/chemotaxis.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

#include "subchemo/errors.hpp"

using namespace subchemo;

TEST_CASE("sensitivity values")
{
    CHECK(sensitivity_value(Sensitivity(0.0), 3.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sensitivity_value(Sensitivity(1.0), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sensitivity_value(Sensitivity(2.0), 0.5)
          == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(std::isfinite(sensitivity_value(Sensitivity(1e6), 1.0)));
    CHECK_THROWS_AS(Sensitivity(-1.0), ValidationError);
    CHECK_THROWS_AS(Sensitivity(std::nan("")), ValidationError);
}

TEST_CASE("jump probability values")
{
    const Sensitivity beta0(0.0);
    const JumpProbabilities unbiased = jump_probabilities(beta0, 12.0, -3.0);
    CHECK(unbiased.left == 0.5);
    CHECK(unbiased.right == 0.5);

    const Sensitivity any(4.2);
    const JumpProbabilities equal = jump_probabilities(any, 0.3, 0.3);
    CHECK(equal.left == 0.5);
    CHECK(equal.right == 0.5);

    const Sensitivity ln3(std::log(3.0));
    const JumpProbabilities biased = jump_probabilities(ln3, 1.0, 0.0);
    CHECK(biased.left == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(biased.right == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("jump probabilities normalize exactly and swap with arguments")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> conc(0.0, 1.0);
    std::uniform_real_distribution<double> betas(0.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const Sensitivity s(betas(gen));
        const double cl = conc(gen);
        const double cr = conc(gen);
        const JumpProbabilities p = jump_probabilities(s, cl, cr);
        CHECK(p.left + p.right == 1.0);  // exact by construction
        CHECK(p.left >= 0.0);
        CHECK(p.left <= 1.0);

        const JumpProbabilities swapped = jump_probabilities(s, cr, cl);
        CHECK(swapped.left == doctest::Approx(p.right).epsilon(1e-15));
        CHECK(swapped.right == doctest::Approx(p.left).epsilon(1e-15));

        // Difference identity against the direct two-exponential form.
        const double el = std::exp(s.beta() * cl);
        const double er = std::exp(s.beta() * cr);
        const double expected_diff = (el - er) / (el + er);
        CHECK(p.left - p.right == doctest::Approx(expected_diff).epsilon(1e-12));
    }
}

TEST_CASE("jump probabilities are shift invariant")
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> conc(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Sensitivity s(3.0);
        const double cl = conc(gen);
        const double cr = conc(gen);
        const double shift = 50.0 * conc(gen);
        const JumpProbabilities p = jump_probabilities(s, cl, cr);
        const JumpProbabilities q = jump_probabilities(s, cl + shift, cr + shift);
        CHECK(q.left == doctest::Approx(p.left).epsilon(1e-12));
    }
    // Large beta * concentration must not overflow the ratio form.
    const JumpProbabilities extreme = jump_probabilities(Sensitivity(10.0), 1.0, 0.0);
    CHECK(extreme.left > 0.999);
    CHECK(extreme.left + extreme.right == 1.0);
}

TEST_CASE("self-chemoattractant proportions")
{
    LatticeField field;
    field.values = {0.0, 0.0, 2.5, 0.0};
    LatticeField c = self_chemoattractant(field);
    CHECK(c.values[2] == 1.0);
    CHECK(c.values[0] == 0.0);

    field.values = {1.0, 1.0, 1.0, 1.0, 1.0};
    c = self_chemoattractant(field);
    for (double v : c.values) CHECK(v == doctest::Approx(0.2).epsilon(1e-15));

    field.values = {1.0, 3.0};
    c = self_chemoattractant(field);
    CHECK(c.values[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(c.values[1] == doctest::Approx(0.75).epsilon(1e-15));

    field.values = {0.0, 0.0};
    CHECK_THROWS_AS(self_chemoattractant(field), ValidationError);
    field.values = {1.0, -0.5};
    CHECK_THROWS_AS(self_chemoattractant(field), ValidationError);
}

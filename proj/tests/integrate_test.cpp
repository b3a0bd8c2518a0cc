#include "catbell/integrate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace catbell;

TEST(IntegrateAdaptive, GaussianMass) {
    const auto r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -10.0, 10.0);
    EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi), 1e-13);
    EXPECT_LE(r.error, 1e-10);
}

TEST(IntegrateAdaptive, ReversedBoundsFlipSign) {
    const auto f = [](double x) { return std::cos(x); };
    EXPECT_NEAR(integrate(f, 1.0, 0.0), -std::sin(1.0), 1e-14);
    EXPECT_EQ(integrate(f, 2.0, 2.0), 0.0);
}

TEST(IntegrateAdaptive, OscillatoryGaussian) {
    // int exp(-x^2) cos(w x) = sqrt(pi) exp(-w^2/4)
    for (double w : {1.0, 8.0, 24.0, 34.0}) {
        const double exact = std::sqrt(std::numbers::pi) * std::exp(-w * w / 4.0);
        const double got = integrate([w](double x) { return std::exp(-x * x) * std::cos(w * x); }, -9.0, 9.0,
                                     Tolerance{1e-13, 1e-12, 4000});
        EXPECT_NEAR(got, exact, 1e-11) << w;
    }
}

TEST(IntegrateAdaptive, KinkNeedsRefinement) {
    const auto r = integrate_adaptive([](double x) { return std::abs(x - 0.3); }, -1.0, 1.0);
    EXPECT_NEAR(r.value, 0.5 * (1.3 * 1.3 + 0.7 * 0.7), 1e-11);
    EXPECT_GT(r.subdivisions, 0);
}

TEST(IntegrateAdaptive, BudgetExhaustionThrows) {
    Tolerance tight;
    tight.abs = 0.0;
    tight.rel = 0.0;
    tight.max_subdivisions = 3;
    EXPECT_THROW(integrate([](double x) { return std::sqrt(std::abs(x)); }, -1.0, 1.0, tight), std::runtime_error);
}

TEST(GaussLegendre, PolynomialExactness) {
    // 20-point rule integrates degree 39 exactly
    const double got = integrate_gauss_legendre([](double x) { return std::pow(x, 38); }, -1.0, 1.0, 1);
    EXPECT_NEAR(got, 2.0 / 39.0, 1e-15);
    EXPECT_THROW(integrate_gauss_legendre([](double) { return 1.0; }, 0.0, 1.0, 0), std::invalid_argument);
}

TEST(GaussLegendre, ComplexMatchesRealParts) {
    const auto f = [](double x) { return std::complex<double>(std::exp(-x * x), std::sin(x) * std::exp(-x * x)); };
    const auto z = integrate_gauss_legendre_complex(f, -6.0, 6.0, 40);
    EXPECT_NEAR(z.real(), std::sqrt(std::numbers::pi), 1e-14);
    EXPECT_NEAR(z.imag(), 0.0, 1e-15);
}

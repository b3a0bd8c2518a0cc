#include "catbell/model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

using namespace catbell;

TEST(CatParams, RejectsNonPositiveAmplitude) {
    EXPECT_THROW(CatParams(0.0), std::invalid_argument);
    EXPECT_THROW(CatParams(-1.0), std::invalid_argument);
    EXPECT_THROW(CatParams(std::nan("")), std::invalid_argument);
    EXPECT_NO_THROW(CatParams(1e-9));
}

TEST(DetectorModel, DomainChecks) {
    EXPECT_THROW(DetectorModel(0.0), std::invalid_argument);
    EXPECT_THROW(DetectorModel(1.1), std::invalid_argument);
    EXPECT_THROW(DetectorModel(0.9, -0.1), std::invalid_argument);
    EXPECT_THROW(DetectorModel(0.9, 1.5), std::invalid_argument);
    EXPECT_THROW(DetectorModel(1.0, 0.0, 1.0), std::invalid_argument);

    const DetectorModel single(0.8, 0.5);
    EXPECT_EQ(single.eta0(), 0.8);
    EXPECT_EQ(single.eta_pi2(), 0.8);
    EXPECT_EQ(single.xi(), 0.5);

    const DetectorModel split(1.0, 0.7, 0.0);
    EXPECT_EQ(split.eta0(), 1.0);
    EXPECT_EQ(split.eta_pi2(), 0.7);
}

TEST(SpinDirection, UnitNormEnforced) {
    EXPECT_NO_THROW(SpinDirection(0.0, 0.6, 0.8));
    EXPECT_THROW(SpinDirection(1.0, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(SpinDirection(0.0, 0.0, 0.0), std::invalid_argument);

    const auto a = SpinDirection::normalized(3.0, 0.0, 4.0);
    EXPECT_DOUBLE_EQ(a.x(), 0.6);
    EXPECT_DOUBLE_EQ(a.z(), 0.8);
    EXPECT_THROW(SpinDirection::normalized(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST(Overlap, ClosedForm) {
    EXPECT_NEAR(overlap(CatParams(1.0)), 0.1353352832366127, 1e-16);
    EXPECT_NEAR(overlap(CatParams(6.0)) / std::exp(-72.0), 1.0, 1e-14);
    // alpha -> 0 limit approached from the constructible side
    EXPECT_NEAR(overlap(CatParams(1e-9)), 1.0, 1e-15);
}

TEST(NormConstant, ClosedForm) {
    const CatParams one(1.0);
    EXPECT_NEAR(norm_constant(Superposition::plus, one), 2.0 * (1.0 + std::exp(-2.0)), 1e-15);
    EXPECT_NEAR(norm_constant(Superposition::minus, one), 2.0 * (1.0 - std::exp(-2.0)), 1e-15);
    EXPECT_NEAR(norm_constant(Superposition::plus, one), 2.27067056647322538, 1e-14);
    EXPECT_NEAR(norm_constant(Superposition::minus, one), 1.72932943352677462, 1e-14);

    const CatParams six(6.0);
    EXPECT_NEAR(norm_constant(Superposition::plus, six), 2.0, 1e-30);
    EXPECT_NEAR(norm_constant(Superposition::minus, six), 2.0, 1e-30);
}

TEST(NormConstant, DegenerateOddStateRejected) {
    EXPECT_THROW(norm_constant(Superposition::minus, CatParams(1e-9)), std::domain_error);
    EXPECT_NO_THROW(norm_constant(Superposition::plus, CatParams(1e-9)));
    EXPECT_GT(norm_constant(Superposition::minus, CatParams(1e-8)), 0.0);
}

TEST(NormConstant, SumIsFour) {
    for (double a : {1e-4, 0.1, 0.5, 1.0, 2.0, 6.0}) {
        const CatParams p(a);
        const double np = norm_constant(Superposition::plus, p);
        const double nm = norm_constant(Superposition::minus, p);
        EXPECT_NEAR(np + nm, 4.0, 1e-15) << a;
        EXPECT_GE(np, 2.0);
        EXPECT_LE(nm, 2.0);
    }
}

TEST(FringePeriod, Values) {
    EXPECT_NEAR(fringe_period(CatParams(6.0), 1.0), kPi / (6.0 * std::sqrt(2.0)), 1e-15);
    EXPECT_NEAR(fringe_period(CatParams(6.0), 1.0), 0.37024024484653, 1e-13);
    EXPECT_NEAR(fringe_period(CatParams(2.0), 0.5), kHalfPi, 1e-15);
    EXPECT_NEAR(fringe_period(CatParams(1.0), 0.8), 2.0 * fringe_period(CatParams(2.0), 0.8), 1e-14);
    EXPECT_THROW(fringe_period(CatParams(1.0), 0.0), std::invalid_argument);
}

TEST(FringePeriod, Homogeneous) {
    for (double a : {0.3, 1.0, 2.5}) {
        for (double k : {0.5, 2.0, 7.0}) {
            const double eta = 0.75;
            EXPECT_NEAR(fringe_period(CatParams(k * a), eta), fringe_period(CatParams(a), eta) / k, 1e-12);
        }
    }
}

TEST(Visibility, Values) {
    for (double a : {0.5, 2.0, 6.0}) {
        EXPECT_EQ(visibility(CatParams(a), 1.0), 1.0);
    }
    EXPECT_NEAR(visibility(CatParams(2.0), 0.9), std::exp(-0.8), 1e-15);
    EXPECT_NEAR(visibility(CatParams(2.0), 0.9), 0.449328964117222, 1e-14);
    EXPECT_NEAR(visibility(CatParams(6.0), 0.9), std::exp(-7.2), 1e-16);
    EXPECT_LT(visibility(CatParams(2.0), 0.999), 1.0);
}

TEST(Visibility, EqualsOverlapAtScaledAmplitude) {
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        for (double eta : {0.9, 0.7, 0.5}) {
            const CatParams scaled(a * std::sqrt(1.0 - eta));
            EXPECT_NEAR(visibility(CatParams(a), eta), overlap(scaled), 1e-15);
        }
    }
}

TEST(DetectorResolution, Values) {
    EXPECT_EQ(detector_resolution(1.0), 0.0);
    EXPECT_NEAR(detector_resolution(0.5), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(detector_resolution(0.66), 0.5075192189225523, 1e-13);
    double previous = detector_resolution(0.05);
    for (double eta = 0.1; eta <= 1.0; eta += 0.05) {
        const double r = detector_resolution(eta);
        EXPECT_LT(r, previous);
        previous = r;
    }
    EXPECT_THROW(detector_resolution(0.0), std::invalid_argument);
}

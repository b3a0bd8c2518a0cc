#include "catbell/fock_oracle.hpp"

#include "catbell/integrate.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace catbell;

TEST(CoherentFock, VacuumAndPoissonMode) {
    const FockVector vacuum = coherent_fock({0.0, 0.0}, 30);
    EXPECT_EQ(vacuum[0], Complex(1.0, 0.0));
    for (std::size_t n = 1; n < vacuum.size(); ++n) {
        EXPECT_EQ(vacuum[n], Complex(0.0, 0.0));
    }
    const FockVector two = coherent_fock({2.0, 0.0});
    std::size_t mode = 0;
    for (std::size_t n = 0; n < two.size(); ++n) {
        // ties between n = 3 and n = 4 are exact for mean 4
        if (std::norm(two[n]) > std::norm(two[mode]) * (1.0 + 1e-12)) {
            mode = n;
        }
    }
    EXPECT_EQ(mode, 3u);
    EXPECT_NEAR(std::norm(two[4]), std::norm(two[3]), 1e-15);
    EXPECT_NEAR(std::norm(two[4]), std::exp(-4.0) * 256.0 / 24.0, 1e-15);
}

TEST(CoherentFock, TruncatedNormAndCutoff) {
    EXPECT_EQ(default_cutoff(6.0), 109);
    const FockVector six = coherent_fock({6.0, 0.0}, 121);
    EXPECT_GE(six.norm2(), 1.0 - 1e-10);
    EXPECT_LE(six.norm2(), 1.0 + 1e-12);
    EXPECT_THROW(coherent_fock({6.0, 0.0}, 100), std::invalid_argument);
    const FockVector complex_amp = coherent_fock({1.0, -2.5});
    EXPECT_GE(complex_amp.norm2(), 1.0 - 1e-10);
}

TEST(NumberWavefunction, LowOrderClosedForms) {
    const double c = std::pow(std::numbers::pi, -0.25);
    for (double x : {-1.5, 0.0, 0.4, 2.0}) {
        const double g = c * std::exp(-0.5 * x * x);
        EXPECT_NEAR(number_wavefunction(0, x), g, 1e-15);
        EXPECT_NEAR(number_wavefunction(1, x), std::sqrt(2.0) * x * g, 1e-15);
        EXPECT_NEAR(number_wavefunction(2, x), (2.0 * x * x - 1.0) / std::sqrt(2.0) * g, 1e-15);
        EXPECT_NEAR(number_wavefunction(3, x), (2.0 * x * x * x - 3.0 * x) / std::sqrt(3.0) * g, 1e-15);
    }
    EXPECT_THROW(number_wavefunction(-1, 0.0), std::invalid_argument);
}

TEST(NumberWavefunction, Orthonormal) {
    const int n_max = 80;
    std::vector<std::vector<double>> gram(n_max + 1, std::vector<double>(n_max + 1, 0.0));
    const double lo = -18.0;
    const double hi = 18.0;
    const int panels = 720;
    // one shared rule so every pair sees the same nodes
    for (int i = 0; i <= n_max; i += 8) {
        for (int j = i; j <= n_max; j += 5) {
            const double v = integrate_gauss_legendre(
                [&](double x) {
                    const auto psi = number_wavefunctions(n_max, x);
                    return psi[i] * psi[j];
                },
                lo, hi, panels);
            EXPECT_NEAR(v, i == j ? 1.0 : 0.0, 1e-9) << i << " " << j;
        }
    }
}

TEST(SuperpositionFock, ParityStructure) {
    const CatParams p(2.5);
    const FockVector plus = superposition_fock(Superposition::plus, p);
    const FockVector minus = superposition_fock(Superposition::minus, p);
    for (std::size_t n = 0; n < plus.size(); ++n) {
        if (n % 2 == 1) {
            EXPECT_EQ(plus[n], Complex(0.0, 0.0));
        } else {
            EXPECT_EQ(minus[n], Complex(0.0, 0.0));
        }
    }
    EXPECT_NEAR(plus.norm2(), 1.0, 1e-10);
    EXPECT_NEAR(minus.norm2(), 1.0, 1e-10);
    EXPECT_THROW(superposition_fock(Superposition::plus, CatParams(6.5)), std::invalid_argument);
}

TEST(OracleDistribution, MatchesClosedFormAtUnitEfficiency) {
    for (double alpha : {0.5, 2.0, 4.0}) {
        const CatParams p(alpha);
        for (Superposition s : {Superposition::plus, Superposition::minus}) {
            const QuadratureGrid grid =
                oracle_distribution(superposition_fock(s, p), HomodynePhase::momentum(), 1.0, -8.0, 8.0, 801);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                ASSERT_NEAR(grid[i], dist_superposition(s, grid.x(i), p, 1.0), 1e-8) << alpha << " " << grid.x(i);
            }
        }
    }
}

TEST(OracleDistribution, MatchesClosedFormWhenSmeared) {
    const CatParams p(2.0);
    for (Superposition s : {Superposition::plus, Superposition::minus}) {
        const QuadratureGrid grid =
            oracle_distribution(superposition_fock(s, p), HomodynePhase::momentum(), 0.7, -6.0, 6.0, 241);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            ASSERT_NEAR(grid[i], dist_superposition(s, grid.x(i), p, 0.7), 1e-7) << grid.x(i);
        }
    }
}

TEST(OracleDistribution, CoherentPositionAndDomainChecks) {
    const FockVector coherent = coherent_fock({1.5, 0.5});
    const QuadratureGrid grid = oracle_distribution(coherent, HomodynePhase(0.7), 1.0, -8.0, 8.0, 321);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ASSERT_NEAR(grid[i], std::norm(coherent_wavefunction({1.5, 0.5}, HomodynePhase(0.7), grid.x(i))), 1e-12);
    }
    EXPECT_THROW(oracle_distribution(coherent, HomodynePhase::position(), 1.0, 0.0, 8.0, 100), std::invalid_argument);
    EXPECT_THROW(oracle_distribution(coherent, HomodynePhase::position(), 1.0, 1.0, -1.0, 100), std::invalid_argument);
}

TEST(OracleMatrixElement, PositionSignMatchesErf) {
    const CatParams p(2.0);
    const DetectorModel d(0.8);
    const FockVector a = coherent_fock({2.0, 0.0});
    const FockVector b = coherent_fock({-2.0, 0.0});
    const Complex c0 = oracle_matrix_element(Dichotomic::c0, a, a, p, d);
    EXPECT_NEAR(c0.real(), catbell::testing::erf_series(std::sqrt(1.6) * 2.0), 1e-7);
    EXPECT_NEAR(std::abs(oracle_matrix_element(Dichotomic::c0, a, b, p, d)), 0.0, 1e-8);
    EXPECT_NEAR(oracle_matrix_element(Dichotomic::c0, a, a, p, DetectorModel(1.0)).real(),
                catbell::testing::erf_series(std::sqrt(2.0) * 2.0), 1e-10);
}

TEST(OracleMatrixElement, MomentumWindowsMatchFourierSeries) {
    const CatParams p(2.0);
    const FockVector a = coherent_fock({2.0, 0.0});
    const FockVector b = coherent_fock({-2.0, 0.0});
    for (double eta : {1.0, 0.9}) {
        const Complex z = oracle_matrix_element(Dichotomic::cpi2, a, b, p, DetectorModel(eta));
        EXPECT_NEAR(z.real(), catbell::testing::cpi2_fourier(2.0, eta), 1e-6);
        EXPECT_NEAR(z.imag(), 0.0, 1e-10);
    }
}

TEST(OracleMatrixElement, AgreesWithAnalyticBellMaximum) {
    for (double alpha : {1.0, 2.0, 3.0}) {
        for (double eta : {1.0, 0.9, 0.7}) {
            const CatParams p(alpha);
            const DetectorModel d(eta, 0.95);
            EXPECT_NEAR(oracle_s_max(p, d), s_max(p, d).s_max, 1e-8) << alpha << " " << eta;
        }
    }
}

TEST(OracleMatrixElement, AmplitudeCap) {
    const FockVector a = coherent_fock({6.5, 0.0});
    EXPECT_THROW(oracle_matrix_element(Dichotomic::c0, a, a, CatParams(6.5), DetectorModel()), std::invalid_argument);
}

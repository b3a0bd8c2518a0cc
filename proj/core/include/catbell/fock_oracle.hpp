#pragma once

// Brute-force reference path in the truncated number basis.
//
// States are expanded in Fock states, quadrature wavefunctions come from
// normalized Hermite functions, detector smearing is done numerically, and
// bin integrals use fixed Gauss-Legendre panels. Nothing here calls the
// closed-form coherent-state routines, so agreement with them is a genuine
// cross-check.

#include "catbell/bell.hpp"
#include "catbell/model.hpp"
#include "catbell/quadrature.hpp"

#include <cstddef>
#include <vector>

namespace catbell {

/// Largest amplitude the oracle accepts.
inline constexpr double kOracleMaxAlpha = 6.0;

/// Amplitudes c_0 ... c_nmax in the number basis.
class FockVector {
public:
    explicit FockVector(std::vector<Complex> coeffs);

    std::size_t size() const noexcept { return coeffs_.size(); }
    int n_max() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const Complex& operator[](std::size_t n) const noexcept { return coeffs_[n]; }
    const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }

    double norm2() const noexcept;

private:
    std::vector<Complex> coeffs_;
};

/// ceil(|alpha|^2 + 8|alpha| + 25): Poisson tail below 1e-12 for |alpha| <= 6.
int default_cutoff(double abs_alpha);

/// exp(-|a|^2/2) a^n / sqrt(n!) by the recurrence c_n = c_{n-1} a / sqrt(n).
/// Throws std::invalid_argument when n_max < default_cutoff(|alpha|).
FockVector coherent_fock(Complex alpha, int n_max);
FockVector coherent_fock(Complex alpha);

/// |Psi_+-> in the number basis. Odd (even) coefficients of Psi_+ (Psi_-)
/// are exactly zero.
FockVector superposition_fock(Superposition s, const CatParams& p);

/// Hermite function <x|n> with |<x|0>|^2 = exp(-x^2)/sqrt(pi).
double number_wavefunction(int n, double x);

/// <x|0> ... <x|n_max> from the normalized three-term recurrence.
std::vector<double> number_wavefunctions(int n_max, double x);

/// <x_theta|state> = sum_n c_n exp(-i n theta) <x|n>.
Complex fock_wavefunction(const FockVector& state, HomodynePhase theta, double x);

/// Outcome density of `state` at phase theta on n uniform points of
/// [lo, hi]: the exact |<x_theta|state>|^2 for eta = 1, numerically
/// smeared with the detector kernel otherwise. Throws std::invalid_argument
/// when the state has non-negligible weight outside the grid.
QuadratureGrid oracle_distribution(const FockVector& state, HomodynePhase theta, double eta, double lo, double hi,
                                   std::size_t n);

/// <bra|C|ket> by integrating the Fock-basis cross density over the signed
/// bins of C, with the detector of the matching channel of d.
Complex oracle_matrix_element(Dichotomic which, const FockVector& bra, const FockVector& ket, const CatParams& p,
                              const DetectorModel& d);

/// 2 xi sqrt(<a|C0|a>^2 + |<a|Cpi2|-a>|^2) from oracle matrix elements.
double oracle_s_max(const CatParams& p, const DetectorModel& d);

}  // namespace catbell

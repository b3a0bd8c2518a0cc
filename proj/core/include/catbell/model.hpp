#pragma once

// Physical parameters of the spin/cat entangled state
//
//     |K> = (|up> (x) |alpha> + |down> (x) |-alpha>) / sqrt(2)
//
// and the elementary closed-form quantities derived from them. Quadratures
// use dimensionless oscillator units in which the vacuum density is
// exp(-x^2)/sqrt(pi).

#include <numbers>

namespace catbell {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Smallest amplitude for which the odd superposition Psi_- is evaluated.
/// N_- vanishes quadratically as alpha -> 0.
inline constexpr double kMinOddAlpha = 1e-8;

/// Real coherent amplitude alpha > 0.
class CatParams {
public:
    explicit CatParams(double alpha);

    double alpha() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Homodyne efficiencies for the two phase channels and the spin fidelity xi.
///
/// eta0 applies to the position (theta = 0) measurement, eta_pi2 to the
/// momentum (theta = pi/2) measurement. Both lie in (0, 1]; xi lies in [0, 1].
class DetectorModel {
public:
    explicit DetectorModel(double eta = 1.0, double xi = 1.0);
    DetectorModel(double eta0, double eta_pi2, double xi);

    double eta0() const noexcept { return eta0_; }
    double eta_pi2() const noexcept { return eta_pi2_; }
    double xi() const noexcept { return xi_; }

private:
    double eta0_;
    double eta_pi2_;
    double xi_;
};

/// Unit vector selecting the spin projection a . sigma.
class SpinDirection {
public:
    /// Throws std::invalid_argument unless |a| = 1 within 1e-12.
    SpinDirection(double ax, double ay, double az);

    /// Rescales an arbitrary nonzero vector to unit length.
    static SpinDirection normalized(double ax, double ay, double az);

    static SpinDirection x_axis() { return {1.0, 0.0, 0.0}; }
    static SpinDirection y_axis() { return {0.0, 1.0, 0.0}; }
    static SpinDirection z_axis() { return {0.0, 0.0, 1.0}; }

    double x() const noexcept { return ax_; }
    double y() const noexcept { return ay_; }
    double z() const noexcept { return az_; }

    friend bool operator==(const SpinDirection&, const SpinDirection&) = default;

private:
    double ax_;
    double ay_;
    double az_;
};

/// Selects |Psi_+> or |Psi_-> = (|alpha> +- |-alpha>) / sqrt(N_+-).
enum class Superposition { plus, minus };

inline constexpr double sign_of(Superposition s) noexcept {
    return s == Superposition::plus ? 1.0 : -1.0;
}

/// <-alpha|alpha> = exp(-2 alpha^2).
double overlap(const CatParams& p) noexcept;

/// N_+- = 2 (1 +- exp(-2 alpha^2)).
/// Throws std::domain_error for N_- when alpha < kMinOddAlpha.
double norm_constant(Superposition s, const CatParams& p);

/// Fringe spacing T = pi / (sqrt(2 eta) alpha) of the momentum interference.
double fringe_period(const CatParams& p, double eta);

/// Conditional fringe contrast exp(-2 alpha^2 (1 - eta)).
double visibility(const CatParams& p, double eta);

/// Gaussian blur sqrt((1/eta - 1)/2) of an eta-efficient homodyne detector.
double detector_resolution(double eta);

/// Throws std::invalid_argument unless 0 < eta <= 1.
void require_efficiency(double eta);

}  // namespace catbell

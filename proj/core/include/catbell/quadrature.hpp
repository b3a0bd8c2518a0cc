#pragma once

// Homodyne measurement model: quadrature wavefunctions of coherent states,
// the Gaussian POVM of an eta-efficient detector, and the outcome densities
// built from them.
//
// The POVM element for outcome x at phase theta is
//
//     H(x; theta) = (pi (1 - eta))^{-1/2} exp(-(x/sqrt(eta) - X_theta)^2 / (1/eta - 1))
//
// with X_theta = (e^{i theta} a^dag + e^{-i theta} a) / sqrt(2). At eta = 1
// it collapses to the projector |x_theta><x_theta|, which every routine
// here handles as a separate exact branch.

#include "catbell/model.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace catbell {

using Complex = std::complex<double>;

/// Homodyne local-oscillator phase, reduced to [0, 2 pi).
class HomodynePhase {
public:
    explicit HomodynePhase(double theta);

    static HomodynePhase position() { return HomodynePhase(0.0); }
    static HomodynePhase momentum() { return HomodynePhase(kHalfPi); }

    double theta() const noexcept { return theta_; }
    bool is_position() const noexcept { return theta_ == 0.0; }
    bool is_momentum() const noexcept { return theta_ == kHalfPi; }

    friend bool operator==(const HomodynePhase&, const HomodynePhase&) = default;

private:
    double theta_;
};

/// Uniformly spaced samples of a density on [lo, hi]. Immutable.
class QuadratureGrid {
public:
    QuadratureGrid(double lo, double hi, std::vector<double> values);

    /// Samples `f` at n uniformly spaced points including both ends.
    static QuadratureGrid tabulate(double lo, double hi, std::size_t n,
                                   const std::function<double(double)>& f);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return values_.size(); }
    double spacing() const noexcept { return (hi_ - lo_) / static_cast<double>(values_.size() - 1); }
    double x(std::size_t i) const noexcept { return lo_ + static_cast<double>(i) * spacing(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Trapezoid-rule integral of the samples.
    double trapezoid() const noexcept;

private:
    double lo_;
    double hi_;
    std::vector<double> values_;
};

/// <x_theta|alpha>, normalized so that |<x|0>|^2 = exp(-x^2)/sqrt(pi).
Complex coherent_wavefunction(Complex alpha, HomodynePhase theta, double x);

/// Gaussian POVM kernel K_eta(x, y) for true quadrature y and outcome x.
/// Throws std::domain_error at eta = 1, where the kernel is a point mass.
double povm_kernel(double x, double y, double eta);

/// Matrix element <beta| H(x; theta) |alpha> between coherent states, in
/// closed Gaussian form.
Complex povm_coherent_element(Complex beta, Complex alpha, double x, HomodynePhase theta, double eta);

/// Momentum (theta = pi/2) outcome density of |Psi_+->:
/// (2 / (sqrt(pi) N)) exp(-x^2) [1 +- V cos(sqrt(8 eta) alpha x)].
double dist_superposition(Superposition s, double x, const CatParams& p, double eta);

/// Momentum outcome density conditioned on spin "up" along `a`.
/// Normalization is computed once by quadrature at construction.
class ConditionalFringeDensity {
public:
    ConditionalFringeDensity(const SpinDirection& a, const CatParams& p, double eta);

    double operator()(double x) const;
    double normalization() const noexcept { return norm_; }

private:
    double unnormalized(double x) const;

    double ax_;
    double ay_;
    double frequency_;
    double contrast_;
    double norm_;
};

/// Convenience wrapper around ConditionalFringeDensity for a single point.
double dist_conditional_spin_up(double x, const SpinDirection& a, const CatParams& p, double eta);

/// Convolves a perfect (eta = 1) density with the detector kernel by the
/// trapezoid rule on the grid. Rejects eta = 1 and grids too coarse to
/// resolve the kernel width.
double smeared_density(const QuadratureGrid& perfect, double eta, double x);

/// Outcome interval carrying all but a negligible tail of the densities
/// for phase `theta`: +-(sqrt(2) alpha + 12) at theta = 0 and
/// +-(8 + 6 resolution(eta)) at theta = pi/2.
std::pair<double, double> integration_domain(const CatParams& p, HomodynePhase theta, double eta);

}  // namespace catbell

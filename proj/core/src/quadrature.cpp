#include "catbell/quadrature.hpp"

#include "catbell/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catbell {

namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kInvPiQuarter = std::pow(std::numbers::pi, -0.25);

}  // namespace

HomodynePhase::HomodynePhase(double theta) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("homodyne phase must be finite");
    }
    theta = std::fmod(theta, 2.0 * kPi);
    if (theta < 0.0) {
        theta += 2.0 * kPi;
    }
    theta_ = theta >= 2.0 * kPi ? 0.0 : theta;
}

QuadratureGrid::QuadratureGrid(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
    if (!(lo < hi)) {
        throw std::invalid_argument("quadrature grid needs lo < hi");
    }
    if (values_.size() < 2) {
        throw std::invalid_argument("quadrature grid needs at least two points");
    }
    for (double v : values_) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("quadrature grid densities must be nonnegative");
        }
    }
}

QuadratureGrid QuadratureGrid::tabulate(double lo, double hi, std::size_t n,
                                        const std::function<double(double)>& f) {
    if (n < 2) {
        throw std::invalid_argument("quadrature grid needs at least two points");
    }
    std::vector<double> values(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = f(lo + static_cast<double>(i) * h);
    }
    return {lo, hi, std::move(values)};
}

double QuadratureGrid::trapezoid() const noexcept {
    double sum = 0.5 * (values_.front() + values_.back());
    for (std::size_t i = 1; i + 1 < values_.size(); ++i) {
        sum += values_[i];
    }
    return sum * spacing();
}

Complex coherent_wavefunction(Complex alpha, HomodynePhase theta, double x) {
    const Complex rotated = alpha * std::polar(1.0, -theta.theta());
    const double re = rotated.real();
    const double im = rotated.imag();
    const double shift = x - kSqrt2 * re;
    return kInvPiQuarter * std::exp(Complex(-0.5 * shift * shift, kSqrt2 * x * im - re * im));
}

double povm_kernel(double x, double y, double eta) {
    require_efficiency(eta);
    if (eta == 1.0) {
        throw std::domain_error("POVM kernel is a point mass at eta = 1; use the exact branch");
    }
    const double spread = 1.0 / eta - 1.0;
    const double d = x / std::sqrt(eta) - y;
    return std::exp(-d * d / spread) / std::sqrt(kPi * (1.0 - eta));
}

Complex povm_coherent_element(Complex beta, Complex alpha, double x, HomodynePhase theta, double eta) {
    require_efficiency(eta);
    const Complex rot = std::polar(1.0, -theta.theta());
    const Complex a = alpha * rot;
    const Complex b = beta * rot;

    // conj(<y|b>) <y|a> = pi^{-1/2} exp(-(y - m)^2 + i k y + c), convolved
    // with the kernel in closed form. eta = 1 reduces to the plain product.
    const double m = (a.real() + b.real()) / kSqrt2;
    const double k = kSqrt2 * (a.imag() - b.imag());
    const double dr = a.real() - b.real();
    const double se = std::sqrt(eta);
    const double loss = 1.0 - eta;

    const double centred = x - se * m;
    const double re = -centred * centred - 0.25 * k * k * loss - 0.5 * dr * dr;
    const double im = k * (m * loss + se * x) + b.real() * b.imag() - a.real() * a.imag();
    return kInvSqrtPi * std::exp(Complex(re, im));
}

double dist_superposition(Superposition s, double x, const CatParams& p, double eta) {
    const double norm = norm_constant(s, p);
    const double contrast = visibility(p, eta);
    const double frequency = std::sqrt(8.0 * eta) * p.alpha();
    const double fringe = 1.0 + sign_of(s) * contrast * std::cos(frequency * x);
    // clamp the rounding residue at exact fringe minima
    return std::max(0.0, 2.0 * kInvSqrtPi / norm * std::exp(-x * x) * fringe);
}

ConditionalFringeDensity::ConditionalFringeDensity(const SpinDirection& a, const CatParams& p, double eta)
    : ax_(a.x()),
      ay_(a.y()),
      frequency_(std::sqrt(8.0 * eta) * p.alpha()),
      contrast_(visibility(p, eta)),
      norm_(1.0) {
    const auto [lo, hi] = integration_domain(p, HomodynePhase::momentum(), eta);
    norm_ = integrate([this](double x) { return unnormalized(x); }, lo, hi);
}

double ConditionalFringeDensity::unnormalized(double x) const {
    const double phase = frequency_ * x;
    const double fringe = 1.0 + contrast_ * (ax_ * std::cos(phase) + ay_ * std::sin(phase));
    return std::max(0.0, std::exp(-x * x) * fringe);
}

double ConditionalFringeDensity::operator()(double x) const {
    return unnormalized(x) / norm_;
}

double dist_conditional_spin_up(double x, const SpinDirection& a, const CatParams& p, double eta) {
    return ConditionalFringeDensity(a, p, eta)(x);
}

double smeared_density(const QuadratureGrid& perfect, double eta, double x) {
    require_efficiency(eta);
    if (eta == 1.0) {
        throw std::invalid_argument("smearing at eta = 1 is the identity; use the perfect density");
    }
    // kernel standard deviation in y
    const double width = std::sqrt((1.0 / eta - 1.0) / 2.0);
    if (perfect.spacing() > 0.5 * width) {
        throw std::invalid_argument("grid spacing too coarse to resolve the detector kernel");
    }
    const auto& values = perfect.values();
    const std::size_t n = values.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        sum += w * values[i] * povm_kernel(x, perfect.x(i), eta);
    }
    return sum * perfect.spacing();
}

std::pair<double, double> integration_domain(const CatParams& p, HomodynePhase theta, double eta) {
    double half;
    if (theta.is_position()) {
        half = kSqrt2 * p.alpha() + 12.0;
    } else if (theta.is_momentum()) {
        half = 8.0 + 6.0 * detector_resolution(eta);
    } else {
        half = kSqrt2 * p.alpha() + 12.0 + 6.0 * detector_resolution(eta);
    }
    return {-half, half};
}

}  // namespace catbell

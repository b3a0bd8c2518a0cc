#include "catbell/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace catbell {

namespace {

void require_fidelity(double xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw std::invalid_argument("spin fidelity xi must lie in [0, 1], got " + std::to_string(xi));
    }
}

}  // namespace

void require_efficiency(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("efficiency eta must lie in (0, 1], got " + std::to_string(eta));
    }
}

CatParams::CatParams(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("cat amplitude alpha must be a finite positive real");
    }
}

DetectorModel::DetectorModel(double eta, double xi) : DetectorModel(eta, eta, xi) {}

DetectorModel::DetectorModel(double eta0, double eta_pi2, double xi)
    : eta0_(eta0), eta_pi2_(eta_pi2), xi_(xi) {
    require_efficiency(eta0);
    require_efficiency(eta_pi2);
    require_fidelity(xi);
}

SpinDirection::SpinDirection(double ax, double ay, double az) : ax_(ax), ay_(ay), az_(az) {
    const double norm2 = ax * ax + ay * ay + az * az;
    if (!(std::abs(norm2 - 1.0) <= 1e-12)) {
        throw std::invalid_argument("spin direction must be a unit vector");
    }
}

SpinDirection SpinDirection::normalized(double ax, double ay, double az) {
    const double norm = std::hypot(ax, ay, az);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite spin direction");
    }
    return {ax / norm, ay / norm, az / norm};
}

double overlap(const CatParams& p) noexcept {
    return std::exp(-2.0 * p.alpha() * p.alpha());
}

double norm_constant(Superposition s, const CatParams& p) {
    if (s == Superposition::minus) {
        if (p.alpha() < kMinOddAlpha) {
            throw std::domain_error("Psi_- is degenerate for alpha below 1e-8");
        }
        // 1 - exp(-2a^2) without cancellation
        return -2.0 * std::expm1(-2.0 * p.alpha() * p.alpha());
    }
    return 2.0 * (1.0 + overlap(p));
}

double fringe_period(const CatParams& p, double eta) {
    require_efficiency(eta);
    return kPi / (std::sqrt(2.0 * eta) * p.alpha());
}

double visibility(const CatParams& p, double eta) {
    require_efficiency(eta);
    return std::exp(-2.0 * p.alpha() * p.alpha() * (1.0 - eta));
}

double detector_resolution(double eta) {
    require_efficiency(eta);
    return std::sqrt((1.0 / eta - 1.0) / 2.0);
}

}  // namespace catbell

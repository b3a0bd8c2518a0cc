#include "catbell/bell.hpp"

#include "catbell/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace catbell {

namespace {

// Fringe windows reaching into |x| < kWindowReach enter the window sum;
// the envelope is below 1e-21 beyond it.
constexpr double kWindowReach = 7.0;

constexpr int kScanPoints = 64;
constexpr double kThresholdTolerance = 1e-4;

double s_max_value(const MatrixElements& m, double xi) {
    return 2.0 * xi * std::hypot(m.c0_diag, std::abs(m.cpi2_offdiag));
}

}  // namespace

BinSets::BinSets(double period) : period_(period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw std::invalid_argument("bin period must be positive and finite");
    }
}

BinSets BinSets::for_fringes(const CatParams& p, double eta) {
    return BinSets(fringe_period(p, eta));
}

int BinSets::classify(double x) const noexcept {
    const double t = x / period_ + 0.25;
    const double frac = t - std::floor(t);
    return frac < 0.5 ? 1 : -1;
}

std::vector<std::pair<std::pair<double, double>, int>> BinSets::partition(double lo, double hi) const {
    std::vector<std::pair<std::pair<double, double>, int>> out;
    if (!(lo < hi)) {
        return out;
    }
    // bin edges sit at (m/2 - 1/4) T
    const double half = 0.5 * period_;
    auto edge = [&](double m) { return (m * 0.5 - 0.25) * period_; };
    double m = std::floor(lo / half + 0.5) + 1.0;
    double left = lo;
    while (left < hi) {
        double right = std::min(edge(m), hi);
        if (right <= left) {
            m += 1.0;
            continue;
        }
        out.push_back({{left, right}, classify(0.5 * (left + right))});
        left = right;
        m += 1.0;
    }
    return out;
}

int classify_position(double x) noexcept {
    return x < 0.0 ? -1 : 1;
}

int classify_momentum(double x, const BinSets& bins) noexcept {
    return bins.classify(x);
}

double c0_diag(const CatParams& p, double eta0) {
    require_efficiency(eta0);
    return std::erf(std::sqrt(2.0 * eta0) * p.alpha());
}

Complex cpi2_offdiag(const CatParams& p, double eta) {
    const double alpha = p.alpha();
    const double period = fringe_period(p, eta);
    const double frequency = std::sqrt(8.0 * eta) * alpha;

    const auto window = [frequency](double x) { return std::exp(-x * x) * std::cos(frequency * x); };
    const int reach = static_cast<int>(std::ceil(kWindowReach / period + 0.25)) - 1;
    double sum = 0.0;
    for (int n = -reach; n <= reach; ++n) {
        sum += integrate(window, (n - 0.25) * period, (n + 0.25) * period);
    }
    const double re = -overlap(p) + 2.0 * std::numbers::inv_sqrtpi * visibility(p, eta) * sum;
    return {re, 0.0};
}

Complex dichotomic_element(Dichotomic which, Complex bra, Complex ket, const CatParams& p, double eta) {
    require_efficiency(eta);
    const HomodynePhase phase = which == Dichotomic::c0 ? HomodynePhase::position() : HomodynePhase::momentum();
    const auto [lo, hi] = integration_domain(p, phase, eta);

    std::vector<std::pair<std::pair<double, double>, int>> pieces;
    if (which == Dichotomic::c0) {
        pieces = {{{lo, 0.0}, -1}, {{0.0, hi}, 1}};
    } else {
        pieces = BinSets::for_fringes(p, eta).partition(lo, hi);
    }

    double re = 0.0;
    double im = 0.0;
    for (const auto& [interval, sign] : pieces) {
        const auto [a, b] = interval;
        re += sign * integrate([&](double x) { return povm_coherent_element(bra, ket, x, phase, eta).real(); }, a, b);
        im += sign * integrate([&](double x) { return povm_coherent_element(bra, ket, x, phase, eta).imag(); }, a, b);
    }
    return {re, im};
}

double cpi2_diag(const CatParams& p, double eta) {
    const Complex alpha(p.alpha(), 0.0);
    return dichotomic_element(Dichotomic::cpi2, alpha, alpha, p, eta).real();
}

MatrixElements matrix_elements(const CatParams& p, const DetectorModel& d) {
    return {c0_diag(p, d.eta0()), cpi2_offdiag(p, d.eta_pi2()), cpi2_diag(p, d.eta_pi2())};
}

double correlation(const SpinDirection& a, HomodynePhase theta, const MatrixElements& m, double xi) {
    if (theta.is_position()) {
        return xi * a.z() * m.c0_diag;
    }
    if (theta.is_momentum()) {
        return xi * (a.x() * m.cpi2_offdiag.real() + a.y() * m.cpi2_offdiag.imag());
    }
    throw std::invalid_argument("correlations are defined only for homodyne phases 0 and pi/2");
}

double correlation(const SpinDirection& a, HomodynePhase theta, const CatParams& p, const DetectorModel& d) {
    if (theta.is_position()) {
        return d.xi() * a.z() * c0_diag(p, d.eta0());
    }
    if (theta.is_momentum()) {
        const Complex z = cpi2_offdiag(p, d.eta_pi2());
        return d.xi() * (a.x() * z.real() + a.y() * z.imag());
    }
    throw std::invalid_argument("correlations are defined only for homodyne phases 0 and pi/2");
}

double bell_combination(const SpinDirection& a, const SpinDirection& a_prime, const MatrixElements& m,
                        double xi) {
    const auto position = HomodynePhase::position();
    const auto momentum = HomodynePhase::momentum();
    return correlation(a, position, m, xi) + correlation(a, momentum, m, xi) +
           correlation(a_prime, position, m, xi) - correlation(a_prime, momentum, m, xi);
}

double bell_combination(const SpinDirection& a, const SpinDirection& a_prime, const CatParams& p,
                        const DetectorModel& d) {
    MatrixElements m;
    m.c0_diag = c0_diag(p, d.eta0());
    m.cpi2_offdiag = cpi2_offdiag(p, d.eta_pi2());
    return bell_combination(a, a_prime, m, d.xi());
}

BellResult s_max(const CatParams& p, const DetectorModel& d) {
    const MatrixElements m = matrix_elements(p, d);
    // c0 > 0 for alpha > 0, so the direction norm never vanishes
    const double r = std::hypot(m.c0_diag, std::abs(m.cpi2_offdiag));
    const double ux = m.cpi2_offdiag.real() / r;
    const double uy = m.cpi2_offdiag.imag() / r;
    const double uz = m.c0_diag / r;
    return {
        s_max_value(m, d.xi()),
        SpinDirection::normalized(ux, uy, uz),
        SpinDirection::normalized(-ux, -uy, uz),
        m,
    };
}

double s_max_approx(const CatParams& p, const DetectorModel& d) {
    const double fringe = 2.0 / kPi * visibility(p, d.eta_pi2());
    return 2.0 * d.xi() * std::sqrt(1.0 + fringe * fringe);
}

double threshold_eta(const CatParams& p, double xi) {
    const auto s_at = [&](double eta) {
        const DetectorModel d(eta, xi);
        MatrixElements m;
        m.c0_diag = c0_diag(p, eta);
        m.cpi2_offdiag = cpi2_offdiag(p, eta);
        return s_max_value(m, d.xi());
    };

    if (!(s_at(1.0) > 2.0)) {
        throw NoViolationError("S_max does not exceed 2 even at unit efficiency");
    }

    double lower = 0.0;
    double upper = 1.0;
    for (int k = 1; k <= kScanPoints; ++k) {
        const double eta = static_cast<double>(k) / kScanPoints;
        if (s_at(eta) > 2.0) {
            upper = eta;
            break;
        }
        lower = eta;
    }
    if (lower == 0.0) {
        // violated already at the first scan point
        return upper;
    }
    while (upper - lower > kThresholdTolerance) {
        const double mid = 0.5 * (lower + upper);
        if (s_at(mid) > 2.0) {
            upper = mid;
        } else {
            lower = mid;
        }
    }
    return upper;
}

}  // namespace catbell

#include "catbell/fock_oracle.hpp"

#include "catbell/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catbell {

namespace {

const double kInvPiQuarter = std::pow(std::numbers::pi, -0.25);

// Widest Gauss-Legendre panel used for oracle integrals.
constexpr double kPanelWidth = 0.05;

// Relative density allowed at the edges of an oracle grid.
constexpr double kEdgeTolerance = 1e-12;

void require_oracle_amplitude(double abs_alpha) {
    if (abs_alpha > kOracleMaxAlpha) {
        throw std::invalid_argument("Fock oracle is limited to |alpha| <= 6");
    }
}

// exp(-i n theta), exact for the two canonical phases.
Complex phase_factor(int n, HomodynePhase theta) {
    if (theta.is_position()) {
        return {1.0, 0.0};
    }
    if (theta.is_momentum()) {
        switch (n % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, -1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, 1.0};
        }
    }
    return std::polar(1.0, -static_cast<double>(n) * theta.theta());
}

// Phase-rotated coefficients c_n exp(-i n theta).
std::vector<Complex> rotated(const FockVector& state, HomodynePhase theta) {
    std::vector<Complex> out(state.size());
    for (std::size_t n = 0; n < state.size(); ++n) {
        out[n] = state[n] * phase_factor(static_cast<int>(n), theta);
    }
    return out;
}

Complex contract(const std::vector<Complex>& coeffs, const std::vector<double>& psi) {
    Complex sum{};
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        sum += coeffs[n] * psi[n];
    }
    return sum;
}

int panels_for(double a, double b) {
    return std::max(1, static_cast<int>(std::ceil((b - a) / kPanelWidth)));
}

}  // namespace

FockVector::FockVector(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw std::invalid_argument("Fock vector needs at least one coefficient");
    }
}

double FockVector::norm2() const noexcept {
    double sum = 0.0;
    for (const Complex& c : coeffs_) {
        sum += std::norm(c);
    }
    return sum;
}

int default_cutoff(double abs_alpha) {
    return static_cast<int>(std::ceil(abs_alpha * abs_alpha + 8.0 * abs_alpha + 25.0));
}

FockVector coherent_fock(Complex alpha, int n_max) {
    const double r = std::abs(alpha);
    if (n_max < default_cutoff(r)) {
        throw std::invalid_argument("n_max too small for the coherent amplitude");
    }
    std::vector<Complex> c(static_cast<std::size_t>(n_max) + 1);
    c[0] = std::exp(-0.5 * r * r);
    for (int n = 1; n <= n_max; ++n) {
        c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    }
    return FockVector(std::move(c));
}

FockVector coherent_fock(Complex alpha) {
    return coherent_fock(alpha, default_cutoff(std::abs(alpha)));
}

FockVector superposition_fock(Superposition s, const CatParams& p) {
    require_oracle_amplitude(p.alpha());
    const double norm = std::sqrt(norm_constant(s, p));
    const FockVector coherent = coherent_fock(Complex(p.alpha(), 0.0));
    // c_n(-alpha) = (-1)^n c_n(alpha)
    const int kept_parity = s == Superposition::plus ? 0 : 1;
    std::vector<Complex> c(coherent.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        c[n] = static_cast<int>(n % 2) == kept_parity ? 2.0 * coherent[n] / norm : Complex{};
    }
    return FockVector(std::move(c));
}

std::vector<double> number_wavefunctions(int n_max, double x) {
    if (n_max < 0) {
        throw std::invalid_argument("number state index must be nonnegative");
    }
    std::vector<double> psi(static_cast<std::size_t>(n_max) + 1);
    psi[0] = kInvPiQuarter * std::exp(-0.5 * x * x);
    if (n_max >= 1) {
        psi[1] = std::numbers::sqrt2 * x * psi[0];
    }
    for (int n = 2; n <= n_max; ++n) {
        const double dn = static_cast<double>(n);
        psi[n] = x * std::sqrt(2.0 / dn) * psi[n - 1] - std::sqrt((dn - 1.0) / dn) * psi[n - 2];
    }
    return psi;
}

double number_wavefunction(int n, double x) {
    return number_wavefunctions(n, x).back();
}

Complex fock_wavefunction(const FockVector& state, HomodynePhase theta, double x) {
    return contract(rotated(state, theta), number_wavefunctions(state.n_max(), x));
}

QuadratureGrid oracle_distribution(const FockVector& state, HomodynePhase theta, double eta, double lo, double hi,
                                   std::size_t n) {
    require_efficiency(eta);
    if (!(lo < hi) || n < 2) {
        throw std::invalid_argument("oracle grid needs lo < hi and at least two points");
    }
    const std::vector<Complex> coeffs = rotated(state, theta);
    const auto perfect = [&](double y) { return std::norm(contract(coeffs, number_wavefunctions(state.n_max(), y))); };

    if (eta == 1.0) {
        QuadratureGrid grid = QuadratureGrid::tabulate(lo, hi, n, perfect);
        const double peak = *std::max_element(grid.values().begin(), grid.values().end());
        if (grid.values().front() > kEdgeTolerance * peak || grid.values().back() > kEdgeTolerance * peak) {
            throw std::invalid_argument("oracle grid does not cover the support of the state");
        }
        return grid;
    }

    // the smearing source needs the kernel tails beyond the output range
    const double resolution = detector_resolution(eta);
    const double src_lo = lo / std::sqrt(eta) - 10.0 * resolution;
    const double src_hi = hi / std::sqrt(eta) + 10.0 * resolution;
    const double step = std::min(0.25 * resolution, 0.01);
    const auto src_n = static_cast<std::size_t>(std::ceil((src_hi - src_lo) / step)) + 1;
    const QuadratureGrid source = QuadratureGrid::tabulate(src_lo, src_hi, src_n, perfect);
    const double peak = *std::max_element(source.values().begin(), source.values().end());
    if (source.values().front() > kEdgeTolerance * peak || source.values().back() > kEdgeTolerance * peak) {
        throw std::invalid_argument("oracle grid does not cover the support of the state");
    }
    return QuadratureGrid::tabulate(lo, hi, n, [&](double x) { return smeared_density(source, eta, x); });
}

Complex oracle_matrix_element(Dichotomic which, const FockVector& bra, const FockVector& ket, const CatParams& p,
                              const DetectorModel& d) {
    require_oracle_amplitude(p.alpha());
    const HomodynePhase theta = which == Dichotomic::c0 ? HomodynePhase::position() : HomodynePhase::momentum();
    const double eta = which == Dichotomic::c0 ? d.eta0() : d.eta_pi2();
    const int n_max = std::max(bra.n_max(), ket.n_max());

    const std::vector<Complex> bra_c = rotated(bra, theta);
    const std::vector<Complex> ket_c = rotated(ket, theta);
    const auto cross = [&](double y) {
        const std::vector<double> psi = number_wavefunctions(n_max, y);
        Complex b{};
        Complex k{};
        for (std::size_t n = 0; n < bra_c.size(); ++n) {
            b += bra_c[n] * psi[n];
        }
        for (std::size_t n = 0; n < ket_c.size(); ++n) {
            k += ket_c[n] * psi[n];
        }
        return std::conj(b) * k;
    };

    // support of the perfect wavefunctions
    const auto [lo, hi] = integration_domain(p, theta, 1.0);
    const BinSets bins = BinSets::for_fringes(p, d.eta_pi2());

    const auto integrate_complex = [](const std::function<Complex(double)>& f, double a, double b) {
        return integrate_gauss_legendre_complex(f, a, b, panels_for(a, b));
    };

    if (eta == 1.0) {
        // outcome bins act directly on the true quadrature
        std::vector<std::pair<std::pair<double, double>, int>> pieces;
        if (which == Dichotomic::c0) {
            pieces = {{{lo, 0.0}, -1}, {{0.0, hi}, 1}};
        } else {
            pieces = bins.partition(lo, hi);
        }
        Complex sum{};
        for (const auto& [interval, sign] : pieces) {
            sum += static_cast<double>(sign) * integrate_complex(cross, interval.first, interval.second);
        }
        return sum;
    }

    // Integrating the kernel over each outcome bin first leaves a smooth
    // weight W(y) = int dx K(x, y) sign(x).
    const double se = std::sqrt(eta);
    const double spread = std::sqrt(1.0 / eta - 1.0);
    const auto weight = [&](double y) {
        if (which == Dichotomic::c0) {
            return std::erf(y / spread);
        }
        const double reach = 10.0 * spread;
        double w = 0.0;
        for (const auto& [interval, sign] : bins.partition(se * (y - reach), se * (y + reach))) {
            const double upper = std::erf((interval.second / se - y) / spread);
            const double lower = std::erf((interval.first / se - y) / spread);
            w += 0.5 * sign * (upper - lower);
        }
        return w;
    };
    return integrate_complex([&](double y) { return cross(y) * weight(y); }, lo, hi);
}

double oracle_s_max(const CatParams& p, const DetectorModel& d) {
    const FockVector plus = coherent_fock(Complex(p.alpha(), 0.0));
    const FockVector minus = coherent_fock(Complex(-p.alpha(), 0.0));
    const double c0 = oracle_matrix_element(Dichotomic::c0, plus, plus, p, d).real();
    const Complex z = oracle_matrix_element(Dichotomic::cpi2, plus, minus, p, d);
    return 2.0 * d.xi() * std::hypot(c0, std::abs(z));
}

}  // namespace catbell

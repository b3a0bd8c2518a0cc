#pragma once

// Dichotomic homodyne observables and the CHSH-type Bell combination.
//
// Position outcomes are binned by sign (C_0). Momentum outcomes are binned
// into alternating half-period windows around the fringes of |Psi_+> and
// |Psi_-> (C_pi/2):
//
//     Lambda_+ = U_n [(n - 1/4) T, (n + 1/4) T)
//     Lambda_- = U_n [(n + 1/4) T, (n + 3/4) T)
//
// Correlations, the Bell combination and its maximum over spin directions
// are expressed through three matrix elements of these operators between
// the coherent states |alpha> and |-alpha>.

#include "catbell/model.hpp"
#include "catbell/quadrature.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace catbell {

/// Alternating momentum bins with fringe period T. Intervals are closed on
/// the left and open on the right.
class BinSets {
public:
    explicit BinSets(double period);

    /// Bins matched to the fringes of the cat state at efficiency eta.
    static BinSets for_fringes(const CatParams& p, double eta);

    double period() const noexcept { return period_; }

    /// +1 for Lambda_+, -1 for Lambda_-.
    int classify(double x) const noexcept;

    /// Maximal sub-intervals of [lo, hi] on which classify() is constant,
    /// paired with that value, in increasing order.
    std::vector<std::pair<std::pair<double, double>, int>> partition(double lo, double hi) const;

private:
    double period_;
};

/// Sign binning of a position outcome; x = 0 maps to +1.
int classify_position(double x) noexcept;

/// Lambda_+- binning of a momentum outcome.
int classify_momentum(double x, const BinSets& bins) noexcept;

/// Dichotomic observable measured at each homodyne phase.
enum class Dichotomic { c0, cpi2 };

struct MatrixElements {
    double c0_diag = 0.0;        // <alpha|C_0|alpha>
    Complex cpi2_offdiag{};      // <alpha|C_pi/2|-alpha>
    double cpi2_diag = 0.0;      // <alpha|C_pi/2|alpha>
};

struct BellResult {
    double s_max;
    SpinDirection a_opt;
    SpinDirection a_prime_opt;
    MatrixElements elements;
};

/// Thrown by threshold_eta when S_max never exceeds 2 for eta in (0, 1].
class NoViolationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// <alpha|C_0|alpha> = erf(sqrt(2 eta0) alpha).
double c0_diag(const CatParams& p, double eta0);

/// <alpha|C_pi/2|-alpha> as the fringe-window sum
///
///     -exp(-2a^2) + (2/sqrt(pi)) V sum_n int_{(n-1/4)T}^{(n+1/4)T} exp(-x^2) cos(sqrt(8 eta) a x) dx
///
/// with every window reaching into |x| < 7 included. The imaginary part
/// vanishes identically for real alpha and is returned as exactly 0.
Complex cpi2_offdiag(const CatParams& p, double eta);

/// <alpha|C_pi/2|alpha> by direct quadrature over the bins.
double cpi2_diag(const CatParams& p, double eta);

/// <bra|C|ket> for arbitrary coherent states by direct adaptive quadrature
/// of the POVM element over the signed bins of C. The bins of C_pi/2 are
/// those of the cat amplitude p.
Complex dichotomic_element(Dichotomic which, Complex bra, Complex ket, const CatParams& p, double eta);

/// All three elements, each at the efficiency of its own channel.
MatrixElements matrix_elements(const CatParams& p, const DetectorModel& d);

/// E(a, theta) = <K| (xi a.sigma) (x) C_theta |K>; theta must be exactly
/// 0 or pi/2 (std::invalid_argument otherwise).
double correlation(const SpinDirection& a, HomodynePhase theta, const MatrixElements& m, double xi);
double correlation(const SpinDirection& a, HomodynePhase theta, const CatParams& p, const DetectorModel& d);

/// S = E(a,0) + E(a,pi/2) + E(a',0) - E(a',pi/2).
double bell_combination(const SpinDirection& a, const SpinDirection& a_prime, const MatrixElements& m,
                        double xi);
double bell_combination(const SpinDirection& a, const SpinDirection& a_prime, const CatParams& p,
                        const DetectorModel& d);

/// Maximum of S over spin directions, 2 xi sqrt(c0^2 + |c_pi2|^2), with
/// the maximizing pair.
BellResult s_max(const CatParams& p, const DetectorModel& d);

/// Large-amplitude approximation 2 xi sqrt(1 + (2/pi)^2 exp(-4 a^2 (1 - eta))),
/// eta being the momentum-channel efficiency.
double s_max_approx(const CatParams& p, const DetectorModel& d);

/// Smallest efficiency (both channels) with S_max > 2, to within 1e-4.
///
/// Scans 64 equally spaced efficiencies in (0, 1], then bisects the first
/// bracket where S_max crosses 2. Throws NoViolationError when S_max <= 2
/// at every scanned point.
double threshold_eta(const CatParams& p, double xi);

}  // namespace catbell

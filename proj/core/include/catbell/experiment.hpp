#pragma once

// Shot-by-shot simulation of the Bell experiment on the cat state.
//
// Each shot measures the spin with a noisy two-outcome POVM
// P_s(a) = (1 + s xi a.sigma)/2 and the oscillator with an eta-efficient
// homodyne detector, then bins the quadrature into a +-1 outcome.

#include "catbell/bell.hpp"
#include "catbell/model.hpp"
#include "catbell/quadrature.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace catbell {

/// One party's choice: a spin direction and a homodyne phase of 0 or pi/2.
class MeasurementSetting {
public:
    MeasurementSetting(SpinDirection spin, HomodynePhase phase);

    const SpinDirection& spin() const noexcept { return spin_; }
    HomodynePhase phase() const noexcept { return phase_; }

    /// Efficiency of the homodyne channel this setting uses.
    double efficiency(const DetectorModel& d) const noexcept;

private:
    SpinDirection spin_;
    HomodynePhase phase_;
};

struct ShotRecord {
    int spin_outcome;
    double quadrature_outcome;
    int derived_bin;
};

struct CorrelationEstimate {
    double mean;
    double std_error;
    std::size_t shots;
};

/// Running estimate of E[s * bin]; products are +-1 so the sample variance
/// follows from the mean alone.
class CorrelationAccumulator {
public:
    void add(int spin_outcome, int derived_bin) noexcept;
    std::size_t shots() const noexcept { return shots_; }

    /// Throws std::invalid_argument with fewer than two shots.
    CorrelationEstimate estimate() const;

private:
    std::size_t shots_ = 0;
    std::int64_t sum_ = 0;
};

/// 2x2 operator in the {|up>, |down>} basis, row-major.
using SpinOperator = std::array<std::array<Complex, 2>, 2>;

/// (1 + s xi a.sigma) / 2 for s = +-1.
SpinOperator spin_povm_weights(int s, const SpinDirection& a, double xi);

/// p(s, x) = <K| P_s(a) (x) H(x; theta) |K>.
double joint_density(int s, double x, const MeasurementSetting& m, const CatParams& p, const DetectorModel& d);

/// Independent uniform stream derived from (seed, stream index).
class ShotStream {
public:
    ShotStream(std::uint64_t seed, std::uint64_t stream);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept;

private:
    std::mt19937_64 engine_;
};

/// Tabulated inverse-CDF sampler for one measurement setting. Immutable and
/// safe to share between threads; randomness comes from the caller's stream.
class Sampler {
public:
    static constexpr std::size_t kGridPoints = std::size_t{1} << 14;

    Sampler(const MeasurementSetting& m, const CatParams& p, const DetectorModel& d);

    const MeasurementSetting& setting() const noexcept { return setting_; }

    /// Exact marginal probability of spin outcome +1 on the grid.
    double probability_up() const noexcept { return prob_up_; }

    /// Tabulated CDF of x given spin outcome s, at the grid nodes.
    const std::vector<double>& cdf(int s) const noexcept { return s > 0 ? cdf_up_ : cdf_down_; }
    double grid_lo() const noexcept { return lo_; }
    double grid_hi() const noexcept { return hi_; }

    ShotRecord draw(ShotStream& rng) const;
    std::vector<ShotRecord> sample(std::size_t shots, ShotStream& rng) const;

private:
    double invert(const std::vector<double>& cdf, double u) const noexcept;
    int bin(double x) const noexcept;

    MeasurementSetting setting_;
    BinSets bins_;
    double lo_;
    double hi_;
    double prob_up_;
    std::vector<double> cdf_up_;
    std::vector<double> cdf_down_;
};

Sampler build_sampler(const MeasurementSetting& m, const CatParams& p, const DetectorModel& d);

/// Mean and standard error of s * bin. Throws with fewer than two shots.
CorrelationEstimate estimate_correlation(std::span<const ShotRecord> shots);

/// Four settings in the order (a,0), (a,pi/2), (a',0), (a',pi/2); S is
/// their sum with the last term subtracted.
using BellSettings = std::array<MeasurementSetting, 4>;

BellSettings bell_settings(const SpinDirection& a, const SpinDirection& a_prime);

struct ExperimentResult {
    BellSettings settings;
    std::array<CorrelationEstimate, 4> correlations;
    double s;
    double s_std_error;
};

/// Runs shots_per_setting shots for each setting; setting i draws from
/// ShotStream(seed, i). Deterministic given the seed.
ExperimentResult run_bell_experiment(const BellSettings& settings, const CatParams& p, const DetectorModel& d,
                                     std::size_t shots_per_setting, std::uint64_t seed);

/// Same, with the optimal spin directions returned by s_max().
ExperimentResult run_bell_experiment(const CatParams& p, const DetectorModel& d, std::size_t shots_per_setting,
                                     std::uint64_t seed);

}  // namespace catbell

#include "catbell/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace catbell {

MeasurementSetting::MeasurementSetting(SpinDirection spin, HomodynePhase phase) : spin_(spin), phase_(phase) {
    if (!phase.is_position() && !phase.is_momentum()) {
        throw std::invalid_argument("measurement setting phase must be 0 or pi/2");
    }
}

double MeasurementSetting::efficiency(const DetectorModel& d) const noexcept {
    return phase_.is_position() ? d.eta0() : d.eta_pi2();
}

void CorrelationAccumulator::add(int spin_outcome, int derived_bin) noexcept {
    ++shots_;
    sum_ += spin_outcome * derived_bin;
}

CorrelationEstimate CorrelationAccumulator::estimate() const {
    if (shots_ < 2) {
        throw std::invalid_argument("correlation estimate needs at least two shots");
    }
    const double n = static_cast<double>(shots_);
    const double mean = static_cast<double>(sum_) / n;
    // sum of squares is n since every product is +-1
    const double variance = std::max(0.0, (n - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(variance / n), shots_};
}

SpinOperator spin_povm_weights(int s, const SpinDirection& a, double xi) {
    if (s != 1 && s != -1) {
        throw std::invalid_argument("spin outcome must be +1 or -1");
    }
    const double g = 0.5 * s * xi;
    SpinOperator op{};
    op[0][0] = Complex(0.5 + g * a.z(), 0.0);
    op[1][1] = Complex(0.5 - g * a.z(), 0.0);
    op[0][1] = Complex(g * a.x(), -g * a.y());
    op[1][0] = Complex(g * a.x(), g * a.y());
    return op;
}

double joint_density(int s, double x, const MeasurementSetting& m, const CatParams& p, const DetectorModel& d) {
    const SpinOperator w = spin_povm_weights(s, m.spin(), d.xi());
    const double eta = m.efficiency(d);
    const Complex plus(p.alpha(), 0.0);
    const Complex minus(-p.alpha(), 0.0);
    const double h_pp = povm_coherent_element(plus, plus, x, m.phase(), eta).real();
    const double h_mm = povm_coherent_element(minus, minus, x, m.phase(), eta).real();
    const Complex h_pm = povm_coherent_element(plus, minus, x, m.phase(), eta);
    const double value =
        0.5 * (w[0][0].real() * h_pp + w[1][1].real() * h_mm + 2.0 * (w[0][1] * h_pm).real());
    return std::max(0.0, value);
}

ShotStream::ShotStream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream),
        static_cast<std::uint32_t>(stream >> 32),
    };
    engine_.seed(seq);
}

double ShotStream::uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Sampler::Sampler(const MeasurementSetting& m, const CatParams& p, const DetectorModel& d)
    : setting_(m), bins_(BinSets::for_fringes(p, d.eta_pi2())), lo_(0.0), hi_(0.0), prob_up_(0.0) {
    const double eta = m.efficiency(d);
    std::tie(lo_, hi_) = integration_domain(p, m.phase(), eta);

    const std::size_t n = kGridPoints;
    const double h = (hi_ - lo_) / static_cast<double>(n - 1);
    double mass_up = 0.0;
    double mass_down = 0.0;

    // Simpson mass per cell, accumulated into unnormalized CDFs
    auto tabulate = [&](int s, std::vector<double>& cdf, double& mass) {
        cdf.assign(n, 0.0);
        double left = joint_density(s, lo_, m, p, d);
        for (std::size_t i = 1; i < n; ++i) {
            const double x0 = lo_ + static_cast<double>(i - 1) * h;
            const double mid = joint_density(s, x0 + 0.5 * h, m, p, d);
            const double right = joint_density(s, x0 + h, m, p, d);
            cdf[i] = cdf[i - 1] + std::max(0.0, h / 6.0 * (left + 4.0 * mid + right));
            left = right;
        }
        mass = cdf.back();
        if (mass > 0.0) {
            for (double& c : cdf) {
                c /= mass;
            }
        }
        cdf.back() = 1.0;
    };
    tabulate(1, cdf_up_, mass_up);
    tabulate(-1, cdf_down_, mass_down);

    if (!(mass_up + mass_down > 0.0)) {
        throw std::runtime_error("joint density carries no probability on the sampling grid");
    }
    prob_up_ = mass_up / (mass_up + mass_down);
}

double Sampler::invert(const std::vector<double>& cdf, double u) const noexcept {
    // first node with cdf > u; the cell [i-1, i] holds u
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), 1, cdf.size() - 1);
    const double h = (hi_ - lo_) / static_cast<double>(cdf.size() - 1);
    const double c0 = cdf[i - 1];
    const double c1 = cdf[i];
    const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
    return lo_ + (static_cast<double>(i - 1) + frac) * h;
}

int Sampler::bin(double x) const noexcept {
    return setting_.phase().is_position() ? classify_position(x) : classify_momentum(x, bins_);
}

ShotRecord Sampler::draw(ShotStream& rng) const {
    const int s = rng.uniform() < prob_up_ ? 1 : -1;
    const double x = invert(s > 0 ? cdf_up_ : cdf_down_, rng.uniform());
    return {s, x, bin(x)};
}

std::vector<ShotRecord> Sampler::sample(std::size_t shots, ShotStream& rng) const {
    std::vector<ShotRecord> out;
    out.reserve(shots);
    for (std::size_t i = 0; i < shots; ++i) {
        out.push_back(draw(rng));
    }
    return out;
}

Sampler build_sampler(const MeasurementSetting& m, const CatParams& p, const DetectorModel& d) {
    return Sampler(m, p, d);
}

CorrelationEstimate estimate_correlation(std::span<const ShotRecord> shots) {
    CorrelationAccumulator acc;
    for (const ShotRecord& r : shots) {
        acc.add(r.spin_outcome, r.derived_bin);
    }
    return acc.estimate();
}

BellSettings bell_settings(const SpinDirection& a, const SpinDirection& a_prime) {
    const auto position = HomodynePhase::position();
    const auto momentum = HomodynePhase::momentum();
    return {
        MeasurementSetting(a, position),
        MeasurementSetting(a, momentum),
        MeasurementSetting(a_prime, position),
        MeasurementSetting(a_prime, momentum),
    };
}

ExperimentResult run_bell_experiment(const BellSettings& settings, const CatParams& p, const DetectorModel& d,
                                     std::size_t shots_per_setting, std::uint64_t seed) {
    if (shots_per_setting < 100) {
        throw std::invalid_argument("Bell experiment needs at least 100 shots per setting");
    }
    constexpr std::array<double, 4> signs{1.0, 1.0, 1.0, -1.0};

    std::array<CorrelationEstimate, 4> estimates{};
    double s = 0.0;
    double variance = 0.0;
    for (std::size_t i = 0; i < settings.size(); ++i) {
        const Sampler sampler(settings[i], p, d);
        ShotStream rng(seed, i);
        CorrelationAccumulator acc;
        for (std::size_t k = 0; k < shots_per_setting; ++k) {
            const ShotRecord r = sampler.draw(rng);
            acc.add(r.spin_outcome, r.derived_bin);
        }
        estimates[i] = acc.estimate();
        s += signs[i] * estimates[i].mean;
        variance += estimates[i].std_error * estimates[i].std_error;
    }
    return {settings, estimates, s, std::sqrt(variance)};
}

ExperimentResult run_bell_experiment(const CatParams& p, const DetectorModel& d, std::size_t shots_per_setting,
                                     std::uint64_t seed) {
    const BellResult best = s_max(p, d);
    return run_bell_experiment(bell_settings(best.a_opt, best.a_prime_opt), p, d, shots_per_setting, seed);
}

}  // namespace catbell

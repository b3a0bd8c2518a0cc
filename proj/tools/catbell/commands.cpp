#include "catbell/commands.hpp"

#include "catbell/bell.hpp"
#include "catbell/experiment.hpp"
#include "catbell/fock_oracle.hpp"
#include "catbell/model.hpp"
#include "catbell/quadrature.hpp"
#include "catbell/settings_file.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace catbell::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kOracleCliMaxAlpha = 4.0;

struct Physics {
    double alpha = 0.0;
    double eta = 1.0;
    std::optional<double> eta0;
    std::optional<double> eta_pi2;
    double xi = 1.0;

    DetectorModel detector() const { return DetectorModel(eta0.value_or(eta), eta_pi2.value_or(eta), xi); }
};

void add_physics(CLI::App* cmd, Physics& p, bool with_channels) {
    cmd->add_option("--alpha", p.alpha, "coherent amplitude alpha > 0")->required();
    cmd->add_option("--eta", p.eta, "homodyne efficiency in (0, 1]")->capture_default_str();
    if (with_channels) {
        cmd->add_option("--eta0", p.eta0, "efficiency of the theta = 0 channel (default: --eta)");
        cmd->add_option("--eta-pi2", p.eta_pi2, "efficiency of the theta = pi/2 channel (default: --eta)");
        cmd->add_option("--xi", p.xi, "spin measurement fidelity in [0, 1]")->capture_default_str();
    }
}

Json physics_json(const Physics& p) {
    const DetectorModel d = p.detector();
    return Json{{"alpha", p.alpha}, {"eta0", d.eta0()}, {"eta_pi2", d.eta_pi2()}, {"xi", d.xi()}};
}

Json vec_json(const SpinDirection& a) { return Json::array({a.x(), a.y(), a.z()}); }

HomodynePhase parse_theta(const std::string& text) {
    if (text == "pi/2") {
        return HomodynePhase::momentum();
    }
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw std::invalid_argument("theta must be a number or `pi/2`, got `" + text + "`");
    }
    // the exact canonical value keeps the closed-form branches
    if (std::abs(v - kHalfPi) <= 1e-12) {
        return HomodynePhase::momentum();
    }
    return HomodynePhase(v);
}

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw OutputError("cannot open `" + path + "` for writing");
    }
    file << content;
    file.flush();
    if (!file) {
        throw OutputError("failed writing `" + path + "`");
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- dist -------------------------------------------------------------

struct DistArgs {
    Physics phys;
    std::string theta = "pi/2";
    std::string state = "plus";
    std::vector<double> spin = {0.0, 0.0, 1.0};
    std::optional<double> lo;
    std::optional<double> hi;
    std::size_t points = 2001;
    std::string out;
};

int cmd_dist(const DistArgs& a, std::ostream& out) {
    const CatParams p(a.phys.alpha);
    require_efficiency(a.phys.eta);
    const double eta = a.phys.eta;
    const HomodynePhase theta = parse_theta(a.theta);
    const auto [dlo, dhi] = integration_domain(p, theta, eta);
    const double lo = a.lo.value_or(dlo);
    const double hi = a.hi.value_or(dhi);
    if (!(lo < hi) || a.points < 2) {
        throw std::invalid_argument("grid needs lo < hi and at least 2 points");
    }

    std::function<double(double)> density;
    std::optional<ConditionalFringeDensity> conditional;
    if (a.state == "cond-up") {
        if (!theta.is_momentum()) {
            throw std::invalid_argument("cond-up is defined for theta = pi/2 only");
        }
        conditional.emplace(SpinDirection::normalized(a.spin[0], a.spin[1], a.spin[2]), p, eta);
        density = [&](double x) { return (*conditional)(x); };
    } else {
        const Superposition s = a.state == "plus" ? Superposition::plus : Superposition::minus;
        const double n = norm_constant(s, p);
        const Complex up(p.alpha(), 0.0);
        const Complex down(-p.alpha(), 0.0);
        density = [=](double x) {
            if (theta.is_momentum()) {
                return dist_superposition(s, x, p, eta);
            }
            const double diag = povm_coherent_element(up, up, x, theta, eta).real() +
                                povm_coherent_element(down, down, x, theta, eta).real();
            const double cross = 2.0 * povm_coherent_element(down, up, x, theta, eta).real();
            return std::max(0.0, (diag + sign_of(s) * cross) / n);
        };
    }

    const QuadratureGrid grid = QuadratureGrid::tabulate(lo, hi, a.points, density);
    std::string csv = "x,p\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv += format_double(grid.x(i)) + "," + format_double(grid[i]) + "\n";
    }
    emit(a.out, csv, out);
    return kExitOk;
}

// ---- bell -------------------------------------------------------------

struct BellArgs {
    Physics phys;
    std::string out;
};

int cmd_bell(const BellArgs& a, std::ostream& out) {
    const CatParams p(a.phys.alpha);
    const DetectorModel d = a.phys.detector();
    const BellResult r = s_max(p, d);
    Json j;
    j["command"] = "bell";
    j["parameters"] = physics_json(a.phys);
    j["c0_diag"] = r.elements.c0_diag;
    j["cpi2_offdiag"] = Json{{"re", r.elements.cpi2_offdiag.real()}, {"im", r.elements.cpi2_offdiag.imag()}};
    j["s_max"] = r.s_max;
    j["s_max_approx"] = s_max_approx(p, d);
    j["a_opt"] = vec_json(r.a_opt);
    j["a_prime_opt"] = vec_json(r.a_prime_opt);
    j["violation"] = r.s_max > 2.0;
    emit(a.out, dump(j), out);
    return kExitOk;
}

// ---- sweep ------------------------------------------------------------

struct SweepArgs {
    std::string variable;
    double from = 0.0;
    double to = 0.0;
    int steps = 51;
    double alpha = 2.0;
    double eta = 1.0;
    double xi = 1.0;
    std::string out;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    if (!(a.from < a.to) || a.steps < 2) {
        throw std::invalid_argument("sweep needs from < to and steps >= 2");
    }
    const bool over_alpha = a.variable == "alpha";
    // validate the fixed parameters before doing any work
    if (over_alpha) {
        (void)DetectorModel(a.eta, a.xi);
    } else {
        (void)CatParams(a.alpha);
        (void)DetectorModel(1.0, a.xi);
    }
    std::string csv = a.variable + ",s_max,s_max_approx\n";
    for (int i = 0; i < a.steps; ++i) {
        const double v = i + 1 == a.steps ? a.to : a.from + (a.to - a.from) * i / (a.steps - 1);
        const CatParams p(over_alpha ? v : a.alpha);
        const DetectorModel d(over_alpha ? a.eta : v, a.xi);
        csv += format_double(v) + "," + format_double(s_max(p, d).s_max) + "," + format_double(s_max_approx(p, d)) +
               "\n";
    }
    emit(a.out, csv, out);
    return kExitOk;
}

// ---- mc ---------------------------------------------------------------

struct McArgs {
    Physics phys;
    std::size_t shots = 100000;
    std::uint64_t seed = 1;
    std::string settings_file;
    std::string out;
};

int cmd_mc(const McArgs& a, std::ostream& out) {
    const CatParams p(a.phys.alpha);
    const DetectorModel d = a.phys.detector();
    BellSettings settings = [&] {
        if (a.settings_file.empty()) {
            const BellResult r = s_max(p, d);
            return bell_settings(r.a_opt, r.a_prime_opt);
        }
        std::ifstream in(a.settings_file);
        if (!in) {
            throw std::invalid_argument("cannot read settings file `" + a.settings_file + "`");
        }
        return parse_settings(in, a.settings_file);
    }();

    const ExperimentResult r = run_bell_experiment(settings, p, d, a.shots, a.seed);
    constexpr std::array<double, 4> kSigns = {1.0, 1.0, 1.0, -1.0};
    double analytic = 0.0;
    Json rows = Json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        const MeasurementSetting& m = r.settings[i];
        const double expected = correlation(m.spin(), m.phase(), p, d);
        analytic += kSigns[i] * expected;
        rows.push_back(Json{{"spin", vec_json(m.spin())},
                            {"theta", m.phase().theta()},
                            {"sign", static_cast<int>(kSigns[i])},
                            {"E", r.correlations[i].mean},
                            {"std_error", r.correlations[i].std_error},
                            {"shots", r.correlations[i].shots},
                            {"E_analytic", expected}});
    }

    Json params = physics_json(a.phys);
    params["shots_per_setting"] = a.shots;
    params["seed"] = a.seed;
    params["settings_file"] = a.settings_file.empty() ? Json(nullptr) : Json(a.settings_file);

    Json j;
    j["command"] = "mc";
    j["parameters"] = params;
    j["settings"] = rows;
    j["S"] = r.s;
    j["S_std_error"] = r.s_std_error;
    j["S_analytic"] = analytic;
    j["s_max"] = s_max(p, d).s_max;
    emit(a.out, dump(j), out);
    return kExitOk;
}

// ---- oracle-check -----------------------------------------------------

struct OracleArgs {
    double alpha = 0.0;
    double eta = 1.0;
    double tol = 1e-6;
};

double sup_difference(const QuadratureGrid& grid, const std::function<double(double)>& f) {
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        worst = std::max(worst, std::abs(grid[i] - f(grid.x(i))));
    }
    return worst;
}

int cmd_oracle_check(const OracleArgs& a, std::ostream& out) {
    if (a.alpha > kOracleCliMaxAlpha) {
        throw std::invalid_argument("oracle-check is limited to alpha <= 4");
    }
    if (!(a.tol > 0.0)) {
        throw std::invalid_argument("tolerance must be positive");
    }
    const CatParams p(a.alpha);
    const DetectorModel d(a.eta);
    const Complex up_amp(a.alpha, 0.0);
    const FockVector up = coherent_fock(up_amp);
    const FockVector down = coherent_fock(-up_amp);

    std::vector<std::pair<std::string, double>> checks;
    for (Superposition s : {Superposition::plus, Superposition::minus}) {
        const QuadratureGrid g =
            oracle_distribution(superposition_fock(s, p), HomodynePhase::momentum(), a.eta, -7.0, 7.0, 1401);
        checks.emplace_back(s == Superposition::plus ? "dist plus (theta=pi/2)" : "dist minus (theta=pi/2)",
                            sup_difference(g, [&](double x) { return dist_superposition(s, x, p, a.eta); }));
    }
    {
        const auto [lo, hi] = integration_domain(p, HomodynePhase::position(), a.eta);
        const QuadratureGrid g = oracle_distribution(up, HomodynePhase::position(), a.eta, lo, hi, 1401);
        checks.emplace_back("dist coherent (theta=0)", sup_difference(g, [&](double x) {
                                return povm_coherent_element(up_amp, up_amp, x, HomodynePhase::position(), a.eta)
                                    .real();
                            }));
    }
    const MatrixElements m = matrix_elements(p, d);
    checks.emplace_back("<a|C0|a>", std::abs(oracle_matrix_element(Dichotomic::c0, up, up, p, d) - m.c0_diag));
    checks.emplace_back("<a|Cpi2|-a>",
                        std::abs(oracle_matrix_element(Dichotomic::cpi2, up, down, p, d) - m.cpi2_offdiag));
    checks.emplace_back("<a|Cpi2|a>", std::abs(oracle_matrix_element(Dichotomic::cpi2, up, up, p, d) - m.cpi2_diag));
    checks.emplace_back("s_max", std::abs(oracle_s_max(p, d) - s_max(p, d).s_max));

    const auto worst = std::max_element(checks.begin(), checks.end(),
                                        [](const auto& l, const auto& r) { return l.second < r.second; });
    char line[160];
    for (const auto& [name, diff] : checks) {
        std::snprintf(line, sizeof line, "%-26s %.3e %s\n", name.c_str(), diff, diff <= a.tol ? "ok" : "FAIL");
        out << line;
    }
    std::snprintf(line, sizeof line, "worst: %s %.3e (tolerance %.3e)\n", worst->first.c_str(), worst->second, a.tol);
    out << line;
    return worst->second <= a.tol ? kExitOk : kExitCheckFailed;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spin/cat-state Bell inequality with homodyne detection"};
    app.name(args.empty() ? "catbell" : args.front());
    app.require_subcommand(1);

    DistArgs dist;
    auto* dist_cmd = app.add_subcommand("dist", "quadrature outcome density as CSV `x,p`");
    add_physics(dist_cmd, dist.phys, false);
    dist_cmd->add_option("--theta", dist.theta, "homodyne phase in radians, or pi/2")->capture_default_str();
    dist_cmd->add_option("--state", dist.state, "plus, minus or cond-up")
        ->check(CLI::IsMember({"plus", "minus", "cond-up"}))
        ->capture_default_str();
    dist_cmd->add_option("--spin", dist.spin, "spin direction ax,ay,az for cond-up")->expected(3)->delimiter(',');
    dist_cmd->add_option("--lo", dist.lo, "grid start (default: support of the density)");
    dist_cmd->add_option("--hi", dist.hi, "grid end");
    dist_cmd->add_option("--points", dist.points, "grid points")->capture_default_str();
    dist_cmd->add_option("--out", dist.out, "output path (default: stdout)");

    BellArgs bell;
    auto* bell_cmd = app.add_subcommand("bell", "matrix elements and maximal Bell combination as JSON");
    add_physics(bell_cmd, bell.phys, true);
    bell_cmd->add_option("--out", bell.out, "output path (default: stdout)");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "S_max over alpha or eta as CSV");
    sweep_cmd->add_option("--var", sweep.variable, "swept variable")
        ->check(CLI::IsMember({"alpha", "eta"}))
        ->required();
    sweep_cmd->add_option("--from", sweep.from, "first value")->required();
    sweep_cmd->add_option("--to", sweep.to, "last value")->required();
    sweep_cmd->add_option("--steps", sweep.steps, "number of grid values")->capture_default_str();
    sweep_cmd->add_option("--alpha", sweep.alpha, "fixed alpha when sweeping eta")->capture_default_str();
    sweep_cmd->add_option("--eta", sweep.eta, "fixed eta (both channels) when sweeping alpha")->capture_default_str();
    sweep_cmd->add_option("--xi", sweep.xi, "spin measurement fidelity")->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out, "output path (default: stdout)");

    McArgs mc;
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo Bell experiment as JSON");
    add_physics(mc_cmd, mc.phys, true);
    mc_cmd->add_option("--shots", mc.shots, "shots per setting (>= 100)")->capture_default_str();
    mc_cmd->add_option("--seed", mc.seed, "random seed")->capture_default_str();
    mc_cmd->add_option("--settings", mc.settings_file, "settings file (default: optimal directions)");
    mc_cmd->add_option("--out", mc.out, "output path (default: stdout)");

    OracleArgs oracle;
    auto* oracle_cmd = app.add_subcommand("oracle-check", "compare closed forms against the Fock-basis oracle");
    oracle_cmd->add_option("--alpha", oracle.alpha, "coherent amplitude, at most 4")->required();
    oracle_cmd->add_option("--eta", oracle.eta, "homodyne efficiency (both channels)")->capture_default_str();
    oracle_cmd->add_option("--tol", oracle.tol, "largest accepted discrepancy")->capture_default_str();

    std::vector<const char*> argv;
    for (const std::string& s : args) {
        argv.push_back(s.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (dist_cmd->parsed()) return cmd_dist(dist, out);
        if (bell_cmd->parsed()) return cmd_bell(bell, out);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep, out);
        if (mc_cmd->parsed()) return cmd_mc(mc, out);
        return cmd_oracle_check(oracle, out);
    } catch (const std::exception& e) {
        err << app.get_name() << ": error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace catbell::cli

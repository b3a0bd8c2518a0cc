#include "catbell/integrate.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace catbell {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Legendre = boost::math::quadrature::gauss<double, 20>;

constexpr int kInitialPanels = 16;

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const Integrand& f, double a, double b) {
    double error = 0.0;
    // max_depth = 0: one Gauss-Kronrod pair, no internal refinement
    const double value = Kronrod::integrate(f, a, b, 0, 0.0, &error);
    return {a, b, value, error};
}

}  // namespace

IntegrationResult integrate_adaptive(const Integrand& f, double a, double b, Tolerance tol) {
    if (a == b) {
        return {};
    }
    if (a > b) {
        auto r = integrate_adaptive(f, b, a, tol);
        r.value = -r.value;
        return r;
    }

    // a single initial panel can miss a narrow peak between its nodes
    std::priority_queue<Panel> panels;
    double value = 0.0;
    double error = 0.0;
    const double width = (b - a) / kInitialPanels;
    for (int i = 0; i < kInitialPanels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == kInitialPanels) ? b : lo + width;
        const Panel panel = evaluate_panel(f, lo, hi);
        value += panel.value;
        error += panel.error;
        panels.push(panel);
    }
    int splits = 0;

    while (error > std::max(tol.abs, tol.rel * std::abs(value))) {
        if (splits >= tol.max_subdivisions) {
            throw std::runtime_error("adaptive quadrature did not converge within the subdivision budget");
        }
        const Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // panel no longer resolvable in double precision
            throw std::runtime_error("adaptive quadrature reached machine resolution");
        }
        const Panel left = evaluate_panel(f, worst.a, mid);
        const Panel right = evaluate_panel(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++splits;
    }

    // re-sum to shed the drift of the running updates
    double total = 0.0;
    double total_error = 0.0;
    while (!panels.empty()) {
        total += panels.top().value;
        total_error += panels.top().error;
        panels.pop();
    }
    return {total, total_error, splits};
}

double integrate(const Integrand& f, double a, double b, Tolerance tol) {
    return integrate_adaptive(f, a, b, tol).value;
}

double integrate_gauss_legendre(const Integrand& f, double a, double b, int panels) {
    if (panels < 1) {
        throw std::invalid_argument("Gauss-Legendre rule needs at least one panel");
    }
    const double width = (b - a) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == panels) ? b : lo + width;
        sum += Legendre::integrate(f, lo, hi);
    }
    return sum;
}

std::complex<double> integrate_gauss_legendre_complex(const std::function<std::complex<double>(double)>& f, double a,
                                                      double b, int panels) {
    if (panels < 1) {
        throw std::invalid_argument("Gauss-Legendre rule needs at least one panel");
    }
    const double width = (b - a) / panels;
    std::complex<double> sum{};
    for (int i = 0; i < panels; ++i) {
        const double lo = a + i * width;
        const double hi = (i + 1 == panels) ? b : lo + width;
        sum += Legendre::integrate(f, lo, hi);
    }
    return sum;
}

}  // namespace catbell

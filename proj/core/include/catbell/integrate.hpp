#pragma once

// One-dimensional quadrature used throughout the library.

#include <complex>
#include <functional>

namespace catbell {

struct Tolerance {
    double abs = 1e-11;
    double rel = 1e-10;
    int max_subdivisions = 4000;
};

struct IntegrationResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod integration on [a, b], starting
/// from 16 equal panels.
///
/// Bisects the panel with the largest error estimate until the summed
/// estimate drops below max(abs, rel * |value|). Throws std::runtime_error
/// if the subdivision budget is exhausted first.
IntegrationResult integrate_adaptive(const Integrand& f, double a, double b, Tolerance tol = {});

/// Shorthand for integrate_adaptive(...).value.
double integrate(const Integrand& f, double a, double b, Tolerance tol = {});

/// Composite 20-point Gauss-Legendre rule over `panels` equal panels.
/// Non-adaptive; used by the brute-force verification paths.
double integrate_gauss_legendre(const Integrand& f, double a, double b, int panels);

/// Complex-valued variant; each node is evaluated once.
std::complex<double> integrate_gauss_legendre_complex(const std::function<std::complex<double>(double)>& f, double a,
                                                      double b, int panels);

}  // namespace catbell

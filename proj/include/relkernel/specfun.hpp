#pragma once

#include "relkernel/quad.hpp"

namespace relkernel::specfun {

/// Gamma(x) for x > 0.
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Gamma(p) Gamma(q) / Gamma(p + q) for p, q > 0. Symmetric bit-for-bit.
double beta_fn(double p, double q);

/// Order of a Bessel function; finite and non-negative.
class BesselOrder {
public:
    explicit BesselOrder(double nu);
    double value() const noexcept { return nu_; }

private:
    double nu_;
};

/// J_nu(x) for x >= 0.
double bessel_j(BesselOrder order, double x);

/// e^{-x} I_n(x) for integer n >= 0 and x >= 0.
double bessel_i_scaled(int n, double x);

struct HypergeometricArgs {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double w = 0.0;
};

/// Gauss hypergeometric F(a, b, c; w) for w < 1.
///
/// |w| <= 1/2 and 1/2 < w < 1 are summed directly; w < -1/2 is first mapped to
/// w/(w-1) in (1/3, 1) by F(a,b,c;w) = (1-w)^{-b} F(b, c-a, c; w/(w-1)).
/// Throws ConvergenceError with the last tail estimate if the series stalls.
double gauss_2f1(const HypergeometricArgs& args);

/// F(a, b, c; w) from the Euler integral
///   F = 1/B(b, c-b) int_0^1 s^{b-1} (1-s)^{c-b-1} (1 - s w)^{-a} ds,
/// which needs c > b > 0 (a and b are exchanged when only c > a > 0 holds) and w < 1.
double gauss_2f1_euler(const HypergeometricArgs& args, const quad::QuadratureSpec& spec = {1e-300, 1e-13, 12,
                                                                                         quad::Transform::double_exponential});

} // namespace relkernel::specfun

#pragma once

#include "relkernel/geometry.hpp"
#include "relkernel/quad.hpp"
#include "relkernel/specfun.hpp"

#include <complex>
#include <vector>

namespace relkernel::ab {

/// Arguments of one Aharonov-Bohm partial-wave kernel p_m(r, r', t), nu = |m + alpha|.
struct ABModeArgs {
    specfun::BesselOrder nu{0.0};
    double r = 0.0;
    double r_prime = 0.0;
    double t = 1.0;

    double z() const noexcept { return r * r / (t * t); }
    /// Throws DomainError unless r, r' >= 0 and t > 0 are finite.
    void validate() const;
};

enum class DiagRoute { euler_integral, hypergeometric };

/// p_m(r, r, t) = ((2nu+1)/(pi t^2)) (4z)^nu int_0^1 s^{nu-1/2} (1-s)^{nu-1/2} (1+4zs)^{-nu-3/2} ds.
/// The hypergeometric route evaluates the same quantity as
/// (2nu+1)/(pi t^2) (4z)^nu B(nu+1/2, nu+1/2) F(nu+1/2, nu+3/2, 2nu+1; -4z).
double pm_diag(const ABModeArgs& args, DiagRoute route = DiagRoute::euler_integral);

/// int_0^inf e^{-tp} J_nu(rp) J_nu(r'p) p dp by quadrature. Panels end at the zeros of the
/// fast oscillation cos((r+r')p - nu pi - pi/2) and the sum stops where e^{-tp} makes the rest
/// negligible; weakly oscillating cases use a single tanh-sinh pass.
quad::QuadResult pm_bessel_quadrature(const ABModeArgs& args);

/// Off-diagonal p_m; the quadrature of pm_bessel_quadrature. Throws ConvergenceError when the
/// reported error exceeds 1e-9 max(|p_m|, sqrt(p_m(r,r,t) p_m(r',r',t))); the second scale only
/// matters where the oscillating integrand cancels to a tiny value.
double pm_offdiag(const ABModeArgs& args);

struct FullKernel {
    std::complex<double> value;
    /// Cauchy-Schwarz bound of the omitted modes.
    double tail = 0.0;
    int modes = 0;
    bool cutoff_warning = false;
};

/// (1/2pi) sum_{|m| <= M} p_m(r, r', t) e^{i m (theta - theta')}, summed in the order
/// 0, -1, 1, -2, 2, ... With mode_cutoff = 0 modes are added until the next pair's
/// Cauchy-Schwarz bound drops below 1e-13 of the running sum.
FullKernel ab_full_kernel(double alpha, double t, const Vec2& x, const Vec2& y, int mode_cutoff = 0);

/// max over the radii grid of (1+r)^{-3/2-eps} (1+r')^{-3/2-eps} |K(x, y)| with x, y on a
/// common ray; a lower bound of the weighted sup norm. Requires 0 < eps < eps0(alpha).
double weighted_sup(double alpha, double t, double eps, const std::vector<double>& radii);

struct CauchySchwarzSides {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// p_m(r, r', t) against sqrt(p_m(r, r, t) p_m(r', r', t)).
CauchySchwarzSides cauchy_schwarz_sides(const ABModeArgs& args);

/// True iff p_m(r, r', t) <= sqrt(p_m(r, r, t) p_m(r', r', t)) up to a relative slack of 1e-10.
bool cauchy_schwarz_offdiag_bound(const ABModeArgs& args);

} // namespace relkernel::ab

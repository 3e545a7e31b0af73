#pragma once

#include "relkernel/geometry.hpp"

#include <complex>
#include <string>
#include <vector>

namespace relkernel::bounds {

enum class BoundKind {
    thm21_poly,
    thm21_log,
    thm22_poly,
    thm22_log,
    thm22_small_t,
    diamag,
    uniform_rel,
    lemma23,
    lemma31,
    thm32,
};

std::string kind_name(BoundKind kind);
/// Throws DomainError for unknown names.
BoundKind kind_from_name(const std::string& name);

/// Right-hand side of one kernel bound. Unused parameters are ignored.
struct BoundSpec {
    BoundKind kind = BoundKind::uniform_rel;
    /// Polynomial weight exponent, in [0, kappa].
    double beta = 0.0;
    /// Logarithmic weight exponent, in [0, 1].
    double theta = 0.0;
    double kappa = 0.0;
    double mass = 0.0;
    /// Weight exponent of lemma31 and thm32, in (0, eps0).
    double eps = 0.25;
    double eps0 = 0.5;
    /// lemma23: exponent a of the moment.
    double a = 1.0;
    /// lemma31: order |m + alpha| of the partial wave.
    double nu = 0.0;
    double constant = 1.0;
    /// lemma23: second constant.
    double constant2 = 1.0;

    void validate() const;
    /// True for thm22_poly and thm22_log, which hold for t >= 1.
    bool large_time() const noexcept;
};

/// The bound at (x, y, t) with the spec's constant:
///   thm21_poly     C (1+|x|)^b (1+|y|)^b t^{-2-2b}
///   thm21_log      C log(2+|x|)^th log(2+|y|)^th t^{-2} log(2+t)^{-2th}
///   thm22_poly     C (1+|x|)^b (1+|y|)^b t^{-1-b},                 t >= 1
///   thm22_log      C log(2+|x|)^th log(2+|y|)^th t^{-1} log(2+t)^{-2th}, t >= 1
///   thm22_small_t  C t^{-2},                                         t <= 1
///   diamag         C e^{-|x-y|^2/4t} / (4 pi t)
///   uniform_rel    C / (2 pi t^2)
///   lemma23        C m^{a/2} t^{-1/2} + C2 t^{-(1+a)/2}
///   lemma31        C t^{-2-2kappa} (nu + 1)^{-1-eps}
///   thm32          C t^{-2-2kappa}
/// Throws DomainError for t outside the bound's range.
double bound_rhs(const BoundSpec& spec, const Vec2& x, const Vec2& y, double t);

/// Factor applied to |K| before comparing with bound_rhs: (1+|x|)^{-3/2-eps}(1+|y|)^{-3/2-eps}
/// for lemma31 and thm32, 1 otherwise.
double lhs_weight(const BoundSpec& spec, const Vec2& x, const Vec2& y);

struct KernelSample {
    double t = 0.0;
    Vec2 x;
    Vec2 y;
    std::complex<double> value;
    double error = 0.0;
    /// ab-closed, ab-quadrature or solver+subordination.
    std::string method;
};

struct BoundReport {
    BoundSpec spec;
    double fitted_constant = 0.0;
    /// Largest held-out |K| w / rhs with the fitted constant.
    double max_ratio = 0.0;
    std::size_t training = 0;
    std::size_t held_out = 0;
    bool pass = false;
};

constexpr double kHeldOutSlack = 0.05;

/// Distinct times are split into alternating groups: even-indexed groups train the
/// constant (the smallest one dominating them), the rest and always the last group
/// are held out. Passes iff the held-out max ratio is at most 1 + 5%.
/// Throws DomainError for an empty or single-time sample set.
BoundReport verify_bound(const BoundSpec& spec, const std::vector<KernelSample>& samples);

/// Same check with spec.constant taken as given; every sample is held out.
BoundReport verify_bound_fixed(const BoundSpec& spec, const std::vector<KernelSample>& samples,
                               double slack = kHeldOutSlack);

/// Weighted mode bound for the Aharonov-Bohm modes |m| <= max_mode: samples
/// (1+r)^{-3/2-eps} (1+r')^{-3/2-eps} p_m(r, r', t) (|m+alpha|+1)^{1+eps} over all radius pairs
/// r <= r' and the given times, checked against C t^{-2-2kappa} as in verify_bound.
BoundReport verify_lemma31(double alpha, double eps, int max_mode, const std::vector<double>& times,
                           const std::vector<double>& radii);

struct DecayFit {
    std::vector<double> times;
    std::vector<double> values;
    double slope = 0.0;
    double intercept = 0.0;
    /// Root mean square of the log residuals.
    double residual = 0.0;
    /// Standard error of the slope.
    double stderr_slope = 0.0;
};

/// Least-squares line through (log t, log value). Needs at least 4 strictly increasing
/// positive times spanning a decade and positive values.
DecayFit fit_exponent(const std::vector<double>& times, const std::vector<double>& values);

struct Lemma23Report {
    double a = 0.0;
    double mass = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    /// Largest LHS / RHS on the 10x finer check grid.
    double max_ratio = 0.0;
    /// Log-log slopes of the moment over the first and last decade of the check grid.
    double slope_small_t = 0.0;
    double slope_large_t = 0.0;
    bool pass = false;
};

/// Fits C1, C2 >= 0 by least squares of the relative residual of C1 m^{a/2} t^{-1/2} +
/// C2 t^{-(1+a)/2} against the substituted moment on t_grid, scales them to dominate the
/// grid and checks domination on a 10x finer log grid. Throws DomainError for a <= 0,
/// mass < 0 or fewer than two positive grid times.
Lemma23Report verify_lemma23(double a, double mass, const std::vector<double>& t_grid);

struct LimitReport {
    double kappa = 0.0;
    double limit = 0.0;
    std::vector<double> times;
    /// t^{2+2kappa} p_k(r, r, t).
    std::vector<double> scaled;
    /// Relative deviation from the limit at the largest time.
    double deviation = 0.0;
};

/// Compares t^{2+2kappa} p_k(r, r, t) with (2kappa+1)/pi (2r)^{2kappa} B(kappa+1/2, kappa+1/2),
/// for the mode with |k + alpha| = kappa.
LimitReport asymptotic_limit_check(double alpha, double r, const std::vector<double>& t_grid);

} // namespace relkernel::bounds

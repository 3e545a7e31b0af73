#pragma once

#include <functional>

namespace relkernel::quad {

/// Variable change applied before integrating over [lower, inf).
enum class Transform {
    exp_substitution,   ///< x = -log(1 - v), v in [0,1), adaptive Gauss-Kronrod on each half
    double_exponential, ///< exp-sinh rule with step halving
    none,               ///< x = v / (1 - v), v in [0,1), adaptive Gauss-Kronrod on each half
};

struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    /// Gauss-Kronrod bisections for the mapped rules, step-halving levels for
    /// the double-exponential rules (levels are capped at 12).
    int max_subdivisions = 60;
    Transform transform = Transform::double_exponential;

    /// Throws DomainError unless tolerances are positive and max_subdivisions >= 1.
    void validate() const;
    double target(double estimate) const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Integral of f over [lower, inf). `scale` sets the length over which the
/// double-exponential nodes spread out from `lower`.
///
/// Throws ConvergenceError (carrying the best estimate and its error) when the
/// reported error would exceed max(abs_tol, rel_tol*|estimate|), and
/// EvaluationError when f returns a non-finite value.
QuadResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec = {}, double lower = 0.0,
                                   double scale = 1.0);

/// Integral of f over the finite interval [a, b] with the tanh-sinh rule.
/// Integrable endpoint singularities are fine; f is never evaluated at a or b.
QuadResult integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Adaptive G7K15 on [a, b], bisecting the interval with the largest error.
QuadResult integrate_adaptive_gk(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Single G10K21 panel; error is |K21 - G10|.
QuadResult gauss_kronrod_21(const Integrand& f, double a, double b);

// ---------------------------------------------------------------------------
// Subordination

/// The map s -> e^{-sH}(x, y) at fixed x, y, sampled lazily.
struct SubordinationInput {
    Integrand base_kernel;
    double t = 1.0;
    double mass = 0.0;
};

/// (t/sqrt(4 pi)) int_0^inf s^{-3/2} e^{-t^2/4s} base(s) ds, the kernel of e^{-t sqrt(H)}.
/// Integrated in u = t^2/(4s), where the weight becomes u^{-1/2} e^{-u} / sqrt(pi).
QuadResult subordinate_massless(const SubordinationInput& in, const QuadratureSpec& spec = {});

/// (t/sqrt(4 pi)) int_0^inf s^{-3/2} e^{-(t/(2 sqrt s) - m sqrt s)^2} base(s) ds, the kernel of
/// e^{-t (sqrt(H + m^2) - m)}. Reduces exactly to subordinate_massless at mass 0.
QuadResult subordinate_massive(const SubordinationInput& in, const QuadratureSpec& spec = {});

/// int_0^inf r^a e^{-t (r - m/(2r))^2} dr.
QuadResult substituted_moment(double a, double mass, double t, const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Free kernels

/// 1/(4 pi s) e^{-d^2/(4s)}: the heat kernel of -Delta in the plane at distance d.
double free_heat_kernel(double d, double s);

/// t / (2 pi (t^2 + d^2)^{3/2}): the kernel of e^{-t sqrt(-Delta)} in the plane.
double free_relativistic_kernel(double d, double t);

} // namespace relkernel::quad

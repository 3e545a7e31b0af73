#include "relkernel/ab_kernel.hpp"

#include "relkernel/errors.hpp"
#include "relkernel/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace relkernel::ab {

using std::numbers::pi;

void ABModeArgs::validate() const
{
    if (!(r >= 0.0) || !(r_prime >= 0.0) || !std::isfinite(r) || !std::isfinite(r_prime))
        throw DomainError("radii must be finite and non-negative");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
}

namespace {

const quad::QuadratureSpec kFinite{1e-300, 1e-13, 12, quad::Transform::double_exponential};

double diag_euler(double nu, double z)
{
    const double w = 4.0 * z;
    const double lw = std::log(w);
    auto lower = [=](double s) {
        const double q = std::log1p(w * s);
        return std::exp(-0.5 * std::log(s) + (nu - 0.5) * std::log1p(-s) + nu * (lw + std::log(s) - q) - 1.5 * q);
    };
    auto upper = [=](double v) {
        const double s = 1.0 - v;
        const double q = std::log1p(w * s);
        return std::exp(-0.5 * std::log1p(-v) + (nu - 0.5) * std::log(v) + nu * (lw + std::log1p(-v) - q) - 1.5 * q);
    };
    return quad::integrate_finite(lower, 0.0, 0.5, kFinite).value + quad::integrate_finite(upper, 0.0, 0.5, kFinite).value;
}

double diag_hypergeometric(double nu, double z)
{
    const double w = 4.0 * z;
    const double log_beta = 2.0 * specfun::log_gamma(nu + 0.5) - specfun::log_gamma(2.0 * nu + 1.0);
    if (w <= 0.5) {
        const double f = specfun::gauss_2f1({nu + 0.5, nu + 1.5, 2.0 * nu + 1.0, -w});
        return std::exp(nu * std::log(w) + log_beta) * f;
    }
    // F(a,b,c;w) = (1-w)^{-b} F(b, c-a, c; w/(w-1)) with the prefactors combined in logs.
    const double u = w / (1.0 + w);
    const double f = specfun::gauss_2f1({nu + 1.5, nu + 0.5, 2.0 * nu + 1.0, u});
    return std::exp(nu * std::log(w) - (nu + 1.5) * std::log1p(w) + log_beta) * f;
}

// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon(const std::vector<double>& s, double& error)
{
    std::vector<double> prev(s.size(), 0.0);
    std::vector<double> cur = s;
    double best = s.back();
    double best_prev = s.size() > 1 ? s[s.size() - 2] : s.back();
    for (std::size_t col = 1; cur.size() > 1; ++col) {
        std::vector<double> next(cur.size() - 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const double diff = cur[i + 1] - cur[i];
            if (diff == 0.0) {
                error = 0.0;
                return cur[i + 1];
            }
            next[i] = prev[i + 1] + 1.0 / diff;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (col % 2 == 0 && !cur.empty()) {
            best_prev = cur.size() > 1 ? cur[cur.size() - 2] : best;
            best = cur.back();
        }
    }
    error = std::abs(best - best_prev);
    return best;
}

constexpr int kMaxPanels = 20000;

// Cancellation inside a panel can put 1e-13 relative out of reach; the
// achieved error is carried into the total instead.
quad::QuadResult finite_panel(const quad::Integrand& f, double a, double b)
{
    try {
        return quad::integrate_finite(f, a, b, kFinite);
    } catch (const ConvergenceError& e) {
        return {e.best_estimate(), e.achieved_error(), 0};
    }
}

} // namespace

double pm_diag(const ABModeArgs& args, DiagRoute route)
{
    args.validate();
    const double nu = args.nu.value();
    const double t = args.t;
    if (args.r == 0.0) return nu == 0.0 ? 1.0 / (t * t) : 0.0;
    const double z = args.z();
    const double pref = (2.0 * nu + 1.0) / (pi * t * t);
    return pref * (route == DiagRoute::euler_integral ? diag_euler(nu, z) : diag_hypergeometric(nu, z));
}

quad::QuadResult pm_bessel_quadrature(const ABModeArgs& args)
{
    args.validate();
    const double nu = args.nu.value();
    const double r = args.r;
    const double rp = args.r_prime;
    const double t = args.t;
    if ((r == 0.0 || rp == 0.0) && nu > 0.0) return {};

    const specfun::BesselOrder order(nu);
    auto f = [&](double p) {
        const double damp = std::exp(-t * p);
        if (damp == 0.0) return 0.0;
        return damp * p * specfun::bessel_j(order, r * p) * specfun::bessel_j(order, rp * p);
    };
    // Beyond p, |f| <= p e^{-tp} and the rest of the integral is below cut(p).
    auto cut = [&](double p) { return std::exp(-t * p) * (p / t + 1.0 / (t * t)); };
    const double s = r + rp;
    const double p_core = (2.0 * nu + 60.0) / t;

    if (s * p_core <= 16.0 * pi) {
        quad::QuadResult res = finite_panel(f, 0.0, p_core);
        double p = p_core;
        for (int i = 0; i < 16 && cut(p) > 1e-13 * std::abs(res.value); ++i) {
            const quad::QuadResult more = finite_panel(f, p, p + 25.0 / t);
            res.value += more.value;
            res.error += more.error;
            p += 25.0 / t;
        }
        res.error += cut(p);
        return res;
    }

    auto zero = [&](int k) { return (k + 1.0 + nu) * pi / s; };
    quad::QuadResult res = finite_panel(f, 0.0, zero(0));
    std::vector<double> partial{res.value};
    int k = 0;
    double p_max = p_core;
    for (; k < kMaxPanels && zero(k) < p_max; ++k) {
        const double a = zero(k);
        const double b = zero(k + 1);
        quad::QuadResult panel = quad::gauss_kronrod_21(f, a, b);
        const double tol = 1e-13 * std::max(std::abs(res.value), std::abs(panel.value)) + 1e-300;
        if (panel.error > tol) {
            try {
                panel = quad::integrate_adaptive_gk(f, a, b, {tol, 1e-13, 50, quad::Transform::none});
            } catch (const ConvergenceError& e) {
                panel.value = e.best_estimate();
                panel.error = e.achieved_error();
            }
        }
        res.value += panel.value;
        res.error += panel.error;
        res.evaluations += panel.evaluations;
        partial.push_back(res.value);
        if (zero(k + 1) >= p_max && cut(p_max) > 1e-13 * std::abs(res.value) && p_max < p_core + 400.0 / t)
            p_max += 25.0 / t;
    }
    if (k == kMaxPanels && zero(k) < p_max) {
        // Damping too weak for direct summation: extrapolate the panel sums.
        const std::vector<double> last(partial.end() - std::min<std::size_t>(partial.size(), 25), partial.end());
        double extrapolation_error = 0.0;
        res.value = wynn_epsilon(last, extrapolation_error);
        res.error += extrapolation_error;
        return res;
    }
    res.error += cut(std::max(p_max, zero(k)));
    return res;
}

double pm_offdiag(const ABModeArgs& args)
{
    const quad::QuadResult res = pm_bessel_quadrature(args);
    if (res.error <= 1e-9 * std::abs(res.value)) return res.value;
    const double scale = std::sqrt(pm_diag({args.nu, args.r, args.r, args.t}) *
                                   pm_diag({args.nu, args.r_prime, args.r_prime, args.t}));
    if (res.error > 1e-9 * scale + 1e-300)
        throw ConvergenceError("Bessel-product quadrature did not reach 1e-9 of the Cauchy-Schwarz scale", res.value,
                               res.error);
    return res.value;
}

namespace {

std::vector<int> pair_modes(int k)
{
    if (k == 0) return {0};
    return {-k, k};
}

} // namespace

FullKernel ab_full_kernel(double alpha, double t, const Vec2& x, const Vec2& y, int mode_cutoff)
{
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
    if (mode_cutoff < 0) throw DomainError("mode cutoff must be non-negative");
    const double r = x.norm();
    const double rp = y.norm();
    const double dtheta = angle_difference(x, y);
    auto order = [&](int m) { return specfun::BesselOrder(std::abs(m + alpha)); };
    auto diag = [&](int m, double rr) { return pm_diag({order(m), rr, rr, t}); };
    auto mode = [&](int m) { return r == rp ? diag(m, r) : pm_offdiag({order(m), r, rp, t}); };
    auto cs_bound = [&](int k) {
        double b = 0.0;
        for (int m : pair_modes(k)) b += std::sqrt(diag(m, r) * diag(m, rp));
        return b;
    };

    const bool automatic = mode_cutoff == 0;
    const int min_modes = static_cast<int>(std::ceil(std::abs(alpha))) + 1;
    const int cap = automatic ? 5000 : mode_cutoff;
    double re = 0.0;
    double im = 0.0;
    double abs_sum = 0.0;
    FullKernel out;
    int k = 0;
    for (;; ++k) {
        if (automatic && k > min_modes && cs_bound(k) <= 1e-13 * abs_sum) {
            --k;
            break;
        }
        for (int m : pair_modes(k)) {
            const double p = mode(m);
            re += std::cos(m * dtheta) * p;
            im += std::sin(m * dtheta) * p;
            abs_sum += std::abs(p);
        }
        if (k == cap) {
            out.cutoff_warning = automatic;
            break;
        }
    }
    out.modes = k;
    out.value = {re / (2.0 * pi), im / (2.0 * pi)};
    double tail = 0.0;
    for (int j = k + 1; j <= k + 400; ++j) {
        const double b = cs_bound(j);
        tail += b;
        if (b <= 1e-16 * tail) break;
    }
    out.tail = tail / (2.0 * pi);
    return out;
}

double weighted_sup(double alpha, double t, double eps, const std::vector<double>& radii)
{
    const double eps0 = field::eps0_of(alpha);
    if (!(eps > 0.0) || !(eps < eps0)) throw DomainError("eps must lie in (0, eps0(alpha))");
    if (radii.empty()) throw DomainError("radii grid is empty");
    double best = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (std::size_t j = i; j < radii.size(); ++j) {
            const double ri = radii[i];
            const double rj = radii[j];
            if (!(ri >= 0.0) || !(rj >= 0.0)) throw DomainError("radii must be non-negative");
            const double weight = std::pow((1.0 + ri) * (1.0 + rj), -1.5 - eps);
            const FullKernel k = ab_full_kernel(alpha, t, {ri, 0.0}, {rj, 0.0});
            best = std::max(best, weight * std::abs(k.value));
        }
    }
    return best;
}

CauchySchwarzSides cauchy_schwarz_sides(const ABModeArgs& args)
{
    args.validate();
    CauchySchwarzSides out;
    const double d1 = pm_diag({args.nu, args.r, args.r, args.t});
    const double d2 = pm_diag({args.nu, args.r_prime, args.r_prime, args.t});
    out.lhs = args.r == args.r_prime ? d1 : pm_offdiag(args);
    out.rhs = std::sqrt(d1 * d2);
    out.holds = out.lhs <= out.rhs * (1.0 + 1e-10);
    return out;
}

bool cauchy_schwarz_offdiag_bound(const ABModeArgs& args) { return cauchy_schwarz_sides(args).holds; }

} // namespace relkernel::ab

#include "relkernel/bounds_fit.hpp"

#include "relkernel/ab_kernel.hpp"
#include "relkernel/errors.hpp"
#include "relkernel/field.hpp"
#include "relkernel/quad.hpp"
#include "relkernel/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace relkernel::bounds {

using std::numbers::pi;

namespace {

constexpr std::array<std::pair<BoundKind, const char*>, 10> kNames{{
    {BoundKind::thm21_poly, "thm21_poly"},
    {BoundKind::thm21_log, "thm21_log"},
    {BoundKind::thm22_poly, "thm22_poly"},
    {BoundKind::thm22_log, "thm22_log"},
    {BoundKind::thm22_small_t, "thm22_small_t"},
    {BoundKind::diamag, "diamag"},
    {BoundKind::uniform_rel, "uniform_rel"},
    {BoundKind::lemma23, "lemma23"},
    {BoundKind::lemma31, "lemma31"},
    {BoundKind::thm32, "thm32"},
}};

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

} // namespace

std::string kind_name(BoundKind kind)
{
    for (const auto& [k, name] : kNames)
        if (k == kind) return name;
    return "unknown";
}

BoundKind kind_from_name(const std::string& name)
{
    for (const auto& [k, n] : kNames)
        if (name == n) return k;
    throw DomainError("unknown bound kind '" + name + "'");
}

bool BoundSpec::large_time() const noexcept
{
    return kind == BoundKind::thm22_poly || kind == BoundKind::thm22_log;
}

void BoundSpec::validate() const
{
    if (!(constant > 0.0) || !std::isfinite(constant)) throw DomainError("bound constant must be positive");
    if (!finite_nonneg(kappa) || kappa > 0.5) throw DomainError("kappa must lie in [0, 1/2]");
    switch (kind) {
    case BoundKind::thm21_poly:
    case BoundKind::thm22_poly:
        if (!finite_nonneg(beta) || beta > kappa + 1e-15) throw DomainError("beta must lie in [0, kappa]");
        break;
    case BoundKind::thm21_log:
    case BoundKind::thm22_log:
        if (!finite_nonneg(theta) || theta > 1.0) throw DomainError("theta must lie in [0, 1]");
        break;
    case BoundKind::lemma23:
        if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("moment exponent a must be positive");
        if (!finite_nonneg(mass)) throw DomainError("mass must be non-negative");
        if (!finite_nonneg(constant2)) throw DomainError("second constant must be non-negative");
        break;
    case BoundKind::lemma31:
    case BoundKind::thm32:
        if (!(eps > 0.0) || !(eps < eps0)) throw DomainError("eps must lie in (0, eps0)");
        if (kind == BoundKind::lemma31 && !finite_nonneg(nu)) throw DomainError("mode order must be non-negative");
        break;
    default:
        break;
    }
}

double bound_rhs(const BoundSpec& spec, const Vec2& x, const Vec2& y, double t)
{
    spec.validate();
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
    if (spec.large_time() && t < 1.0) throw DomainError(kind_name(spec.kind) + " holds for t >= 1 only");
    if (spec.kind == BoundKind::thm22_small_t && t > 1.0)
        throw DomainError("thm22_small_t holds for t <= 1 only");
    const double rx = x.norm();
    const double ry = y.norm();
    const double c = spec.constant;
    auto poly = [&] { return std::pow((1.0 + rx) * (1.0 + ry), spec.beta); };
    auto logw = [&] {
        return std::pow(std::log(2.0 + rx) * std::log(2.0 + ry), spec.theta) *
               std::pow(std::log(2.0 + t), -2.0 * spec.theta);
    };
    switch (spec.kind) {
    case BoundKind::thm21_poly:
        return c * poly() * std::pow(t, -2.0 - 2.0 * spec.beta);
    case BoundKind::thm21_log:
        return c * logw() / (t * t);
    case BoundKind::thm22_poly:
        return c * poly() * std::pow(t, -1.0 - spec.beta);
    case BoundKind::thm22_log:
        return c * logw() / t;
    case BoundKind::thm22_small_t:
        return c / (t * t);
    case BoundKind::diamag: {
        const double d = distance(x, y);
        return c * std::exp(-d * d / (4.0 * t)) / (4.0 * pi * t);
    }
    case BoundKind::uniform_rel:
        return c / (2.0 * pi * t * t);
    case BoundKind::lemma23:
        return c * std::pow(spec.mass, 0.5 * spec.a) / std::sqrt(t) +
               spec.constant2 * std::pow(t, -0.5 * (1.0 + spec.a));
    case BoundKind::lemma31:
        return c * std::pow(t, -2.0 - 2.0 * spec.kappa) * std::pow(spec.nu + 1.0, -1.0 - spec.eps);
    case BoundKind::thm32:
        return c * std::pow(t, -2.0 - 2.0 * spec.kappa);
    }
    throw DomainError("unknown bound kind");
}

double lhs_weight(const BoundSpec& spec, const Vec2& x, const Vec2& y)
{
    if (spec.kind != BoundKind::lemma31 && spec.kind != BoundKind::thm32) return 1.0;
    return std::pow((1.0 + x.norm()) * (1.0 + y.norm()), -1.5 - spec.eps);
}

namespace {

// |K| w / rhs with constant 1.
double unit_ratio(const BoundSpec& spec, const KernelSample& s)
{
    BoundSpec unit = spec;
    unit.constant = 1.0;
    if (unit.kind == BoundKind::lemma23) unit.constant2 = 0.0;
    return lhs_weight(spec, s.x, s.y) * std::abs(s.value) / bound_rhs(unit, s.x, s.y, s.t);
}

} // namespace

BoundReport verify_bound(const BoundSpec& spec, const std::vector<KernelSample>& samples)
{
    if (samples.empty()) throw DomainError("empty sample set");
    spec.validate();
    std::vector<double> times;
    for (const KernelSample& s : samples) times.push_back(s.t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.size() < 2) throw DomainError("bound verification needs at least two distinct times");

    auto group = [&](double t) {
        return static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), t) - times.begin());
    };
    auto trains = [&](std::size_t g) { return g % 2 == 0 && g + 1 < times.size(); };

    BoundReport out;
    out.spec = spec;
    double fitted = 0.0;
    for (const KernelSample& s : samples) {
        if (!trains(group(s.t))) continue;
        fitted = std::max(fitted, unit_ratio(spec, s));
        ++out.training;
    }
    if (!(fitted > 0.0)) throw DomainError("training samples are all zero; no constant can be fitted");
    out.fitted_constant = fitted;
    out.spec.constant = fitted;
    for (const KernelSample& s : samples) {
        if (trains(group(s.t))) continue;
        out.max_ratio = std::max(out.max_ratio, unit_ratio(spec, s) / fitted);
        ++out.held_out;
    }
    out.pass = out.max_ratio <= 1.0 + kHeldOutSlack;
    return out;
}

BoundReport verify_bound_fixed(const BoundSpec& spec, const std::vector<KernelSample>& samples, double slack)
{
    if (samples.empty()) throw DomainError("empty sample set");
    spec.validate();
    BoundReport out;
    out.spec = spec;
    out.fitted_constant = spec.constant;
    for (const KernelSample& s : samples)
        out.max_ratio = std::max(out.max_ratio, unit_ratio(spec, s) / spec.constant);
    out.held_out = samples.size();
    out.pass = out.max_ratio <= 1.0 + slack;
    return out;
}

BoundReport verify_lemma31(double alpha, double eps, int max_mode, const std::vector<double>& times,
                           const std::vector<double>& radii)
{
    if (max_mode < 0) throw DomainError("max_mode must be non-negative");
    if (times.empty() || radii.empty()) throw DomainError("empty sample set");
    BoundSpec spec;
    spec.kind = BoundKind::thm32;
    spec.kappa = field::kappa_of(alpha);
    spec.eps = eps;
    spec.eps0 = field::eps0_of(alpha);
    spec.validate();
    std::vector<KernelSample> samples;
    for (double t : times) {
        for (std::size_t i = 0; i < radii.size(); ++i) {
            for (std::size_t j = i; j < radii.size(); ++j) {
                const double r = radii[i];
                const double rp = radii[j];
                for (int m = -max_mode; m <= max_mode; ++m) {
                    const double nu = std::abs(m + alpha);
                    const ab::ABModeArgs args{specfun::BesselOrder(nu), r, rp, t};
                    const double p = r == rp ? ab::pm_diag(args) : ab::pm_offdiag(args);
                    samples.push_back({t, {r, 0.0}, {rp, 0.0}, p * std::pow(nu + 1.0, 1.0 + eps), 0.0, "ab-mode"});
                }
            }
        }
    }
    BoundReport out = verify_bound(spec, samples);
    out.spec.kind = BoundKind::lemma31;
    return out;
}

DecayFit fit_exponent(const std::vector<double>& times, const std::vector<double>& values)
{
    if (times.size() != values.size()) throw DomainError("times and values differ in length");
    if (times.size() < 4) throw DomainError("exponent fit needs at least 4 points");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || !std::isfinite(times[i])) throw DomainError("times must be positive");
        if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("times must be strictly increasing");
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw DomainError("value at index " + std::to_string(i) + " is not positive");
    }
    if (times.back() < 10.0 * times.front() * (1.0 - 1e-12)) throw DomainError("times must span a decade");

    const double n = static_cast<double>(times.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        mx += std::log(times[i]);
        my += std::log(values[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double dx = std::log(times[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(values[i]) - my);
    }
    DecayFit fit;
    fit.times = times;
    fit.values = values;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double res = std::log(values[i]) - fit.intercept - fit.slope * std::log(times[i]);
        ss += res * res;
    }
    fit.residual = std::sqrt(ss / n);
    fit.stderr_slope = std::sqrt(ss / (n - 2.0) / sxx);
    return fit;
}

namespace {

const quad::QuadratureSpec kMomentSpec{1e-300, 1e-12, 12, quad::Transform::double_exponential};

double moment(double a, double mass, double t) { return quad::substituted_moment(a, mass, t, kMomentSpec).value; }

std::vector<double> log_grid(double lo, double hi, std::size_t n)
{
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = n == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1.0));
    g.back() = hi;
    return g;
}

double regime_slope(const std::vector<double>& t, const std::vector<double>& v, bool small)
{
    std::vector<double> ts;
    std::vector<double> vs;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (small ? t[i] <= 10.0 * t.front() * (1.0 + 1e-12) : t[i] >= t.back() / 10.0 * (1.0 - 1e-12)) {
            ts.push_back(t[i]);
            vs.push_back(v[i]);
        }
    }
    try {
        return fit_exponent(ts, vs).slope;
    } catch (const DomainError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

Lemma23Report verify_lemma23(double a, double mass, const std::vector<double>& t_grid)
{
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("moment exponent a must be positive");
    if (!finite_nonneg(mass)) throw DomainError("mass must be non-negative");
    std::vector<double> grid = t_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.size() < 2 || !(grid.front() > 0.0)) throw DomainError("lemma fit needs two positive times");

    const double ma = std::pow(mass, 0.5 * a);
    auto f1 = [&](double t) { return ma / std::sqrt(t); };
    auto f2 = [&](double t) { return std::pow(t, -0.5 * (1.0 + a)); };

    std::vector<double> lhs(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) lhs[i] = moment(a, mass, grid[i]);

    // Least squares of (c1 g1 + c2 g2 - 1) with g = f / lhs, restricted to c >= 0.
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, b1 = 0.0, b2 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double g1 = f1(grid[i]) / lhs[i];
        const double g2 = f2(grid[i]) / lhs[i];
        s11 += g1 * g1;
        s12 += g1 * g2;
        s22 += g2 * g2;
        b1 += g1;
        b2 += g2;
    }
    double c1 = 0.0;
    double c2 = 0.0;
    const double det = s11 * s22 - s12 * s12;
    if (mass > 0.0 && det > 1e-12 * s11 * s22) {
        c1 = (b1 * s22 - b2 * s12) / det;
        c2 = (b2 * s11 - b1 * s12) / det;
    }
    if (!(c1 > 0.0 && c2 > 0.0)) {
        const double only2 = b2 / s22;
        const double only1 = s11 > 0.0 ? b1 / s11 : 0.0;
        const double res2 = s22 * only2 * only2 - 2.0 * b2 * only2;
        const double res1 = s11 > 0.0 ? s11 * only1 * only1 - 2.0 * b1 * only1 : 0.0;
        c1 = res1 < res2 ? only1 : 0.0;
        c2 = res1 < res2 ? 0.0 : only2;
    }
    if (!(c1 + c2 > 0.0) || !std::isfinite(c1) || !std::isfinite(c2))
        throw DomainError("lemma fit failed on a degenerate grid");
    double scale = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) scale = std::max(scale, lhs[i] / (c1 * f1(grid[i]) + c2 * f2(grid[i])));

    Lemma23Report out;
    out.a = a;
    out.mass = mass;
    out.c1 = c1 * scale;
    out.c2 = c2 * scale;
    const std::vector<double> fine = log_grid(grid.front(), grid.back(), 10 * (grid.size() - 1) + 1);
    std::vector<double> fine_lhs(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) {
        fine_lhs[i] = moment(a, mass, fine[i]);
        out.max_ratio = std::max(out.max_ratio, fine_lhs[i] / (out.c1 * f1(fine[i]) + out.c2 * f2(fine[i])));
    }
    out.slope_small_t = regime_slope(fine, fine_lhs, true);
    out.slope_large_t = regime_slope(fine, fine_lhs, false);
    out.pass = out.max_ratio <= 1.0 + kHeldOutSlack;
    return out;
}

LimitReport asymptotic_limit_check(double alpha, double r, const std::vector<double>& t_grid)
{
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("radius must be positive");
    if (t_grid.empty()) throw DomainError("time grid is empty");
    LimitReport out;
    out.kappa = field::kappa_of(alpha);
    const double k = out.kappa;
    out.limit = (2.0 * k + 1.0) / pi * std::pow(2.0 * r, 2.0 * k) * specfun::beta_fn(k + 0.5, k + 0.5);
    double t_last = 0.0;
    for (double t : t_grid) {
        const double p = ab::pm_diag({specfun::BesselOrder(k), r, r, t});
        out.times.push_back(t);
        out.scaled.push_back(std::pow(t, 2.0 + 2.0 * k) * p);
        if (t >= t_last) {
            t_last = t;
            out.deviation = std::abs(out.scaled.back() / out.limit - 1.0);
        }
    }
    return out;
}

} // namespace relkernel::bounds

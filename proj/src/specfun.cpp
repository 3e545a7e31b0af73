#include "relkernel/specfun.hpp"

#include "relkernel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace relkernel::specfun {

using std::numbers::pi;

namespace {

void require_positive(double x, const char* name)
{
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError(std::string(name) + " requires a positive finite argument");
}

} // namespace

double gamma_fn(double x)
{
    require_positive(x, "gamma_fn");
    return std::tgamma(x);
}

double log_gamma(double x)
{
    require_positive(x, "log_gamma");
    int sign = 0;
    return lgamma_r(x, &sign);
}

double beta_fn(double p, double q)
{
    require_positive(p, "beta_fn");
    require_positive(q, "beta_fn");
    if (p > q) std::swap(p, q);
    if (p + q < 170.0) return std::tgamma(p) * std::tgamma(q) / std::tgamma(p + q);
    return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
}

BesselOrder::BesselOrder(double nu) : nu_(nu)
{
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("Bessel order must be finite and non-negative");
}

namespace {

double bessel_j_series(double nu, double x)
{
    const double q = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum * std::exp(nu * std::log(0.5 * x) - log_gamma(nu + 1.0));
}

// Hankel expansion: J = sqrt(2/(pi x)) (P cos chi - Q sin chi), chi = x - (nu/2 + 1/4) pi.
double bessel_j_asymptotic(double nu, double x)
{
    const double mu = 4.0 * nu * nu;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) > last && k > 2) break;
        last = std::abs(term);
        switch (k % 4) {
        case 1: q += term; break;
        case 2: p -= term; break;
        case 3: q -= term; break;
        default: p += term; break;
        }
        if (last < 1e-17) break;
    }
    const double phi = (0.5 * nu + 0.25) * pi;
    const double cphi = std::cos(phi);
    const double sphi = std::sin(phi);
    const double cx = std::cos(x);
    const double sx = std::sin(x);
    const double cos_chi = cx * cphi + sx * sphi;
    const double sin_chi = sx * cphi - cx * sphi;
    return std::sqrt(2.0 / (pi * x)) * (p * cos_chi - q * sin_chi);
}

// Miller backward recurrence from the fractional base order, normalized with
// (x/2)^nu0 = sum_k (nu0 + 2k) Gamma(nu0 + k)/k! J_{nu0+2k}(x).
double bessel_j_miller(double nu, double x)
{
    const double base = std::floor(nu);
    const int n = static_cast<int>(base);
    const double nu0 = nu - base;
    const double top = std::max(static_cast<double>(n), x);
    const int kstart = static_cast<int>(top + 30.0 + std::sqrt(40.0 * top));

    // Weights c_k for even k, built upward then consumed downward.
    std::vector<double> weight(kstart / 2 + 2);
    double g = std::tgamma(nu0 + 1.0);
    weight[0] = g;
    for (std::size_t j = 1; j < weight.size(); ++j) {
        if (j > 1) g *= (nu0 + j - 1.0) / j;
        weight[j] = (nu0 + 2.0 * j) * g;
    }

    double above = 0.0;
    double cur = 1e-30;
    double at_n = kstart == n ? cur : 0.0;
    double norm = kstart % 2 == 0 ? weight[kstart / 2] * cur : 0.0;
    for (int k = kstart; k > 0; --k) {
        const double below = 2.0 * (nu0 + k) / x * cur - above;
        above = cur;
        cur = below;
        if (k - 1 == n) at_n = cur;
        if ((k - 1) % 2 == 0) norm += weight[(k - 1) / 2] * cur;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            above *= 1e-250;
            at_n *= 1e-250;
            norm *= 1e-250;
        }
    }
    return at_n * std::pow(0.5 * x, nu0) / norm;
}

} // namespace

double bessel_j(BesselOrder order, double x)
{
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_j requires finite x >= 0");
    const double nu = order.value();
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (x < 8.0 || x * x < 4.0 * (nu + 1.0)) return bessel_j_series(nu, x);
    if (x > std::max(30.0, nu * nu)) return bessel_j_asymptotic(nu, x);
    return bessel_j_miller(nu, x);
}

double bessel_i_scaled(int n, double x)
{
    if (n < 0) throw DomainError("bessel_i_scaled requires n >= 0");
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("bessel_i_scaled requires finite x >= 0");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;

    const double nn = static_cast<double>(n);
    if (x > std::max(1e3, 4.0 * nn * nn)) {
        const double mu = 4.0 * nn * nn;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 60; ++k) {
            const double odd = 2.0 * k - 1.0;
            term *= -(mu - odd * odd) / (k * 8.0 * x);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum / std::sqrt(2.0 * pi * x);
    }

    // Miller with e^x = I_0 + 2 sum_{k>=1} I_k.
    const int kstart = n + 30 + static_cast<int>(std::sqrt(80.0 * (x + nn)));
    double above = 0.0;
    double cur = 1e-30;
    double at_n = kstart == n ? cur : 0.0;
    double norm = 2.0 * cur;
    for (int k = kstart; k > 0; --k) {
        const double below = 2.0 * k / x * cur + above;
        above = cur;
        cur = below;
        if (k - 1 == n) at_n = cur;
        norm += (k - 1 == 0 ? 1.0 : 2.0) * cur;
        if (cur > 1e250) {
            cur *= 1e-250;
            above *= 1e-250;
            at_n *= 1e-250;
            norm *= 1e-250;
        }
    }
    return at_n / norm;
}

namespace {

void validate_2f1(const HypergeometricArgs& g)
{
    if (!std::isfinite(g.a) || !std::isfinite(g.b) || !std::isfinite(g.c) || !std::isfinite(g.w))
        throw DomainError("gauss_2f1 arguments must be finite");
    if (!(g.w < 1.0)) throw DomainError("gauss_2f1 requires w < 1");
    if (g.c <= 0.0 && g.c == std::floor(g.c)) throw DomainError("gauss_2f1 requires c not a non-positive integer");
}

double series_2f1(double a, double b, double c, double u)
{
    if (u == 0.0) return 1.0;
    const double au = std::abs(u);
    const long cap = 500 + static_cast<long>(100.0 / (1.0 - au));
    double term = 1.0;
    double sum = 1.0;
    double tail = 1.0;
    for (long n = 0; n < cap; ++n) {
        const double ratio = (a + n) * (b + n) * u / ((c + n) * (n + 1.0));
        term *= ratio;
        sum += term;
        if (term == 0.0) return sum;
        const double rho = std::max(std::abs(ratio), au);
        tail = rho < 1.0 ? std::abs(term) * rho / (1.0 - rho) : std::abs(term);
        const bool settled = n > std::abs(a) + std::abs(b) + std::abs(c);
        if (settled && std::abs(term) < 1e-16 * std::abs(sum) && tail < 1e-16 * std::abs(sum)) return sum;
    }
    throw ConvergenceError("hypergeometric series did not converge", sum, tail);
}

} // namespace

double gauss_2f1(const HypergeometricArgs& args)
{
    validate_2f1(args);
    const auto [a, b, c, w] = args;
    if (w < -0.5) {
        const double u = w / (w - 1.0);
        return std::pow(1.0 - w, -b) * series_2f1(b, c - a, c, u);
    }
    return series_2f1(a, b, c, w);
}

double gauss_2f1_euler(const HypergeometricArgs& args, const quad::QuadratureSpec& spec)
{
    validate_2f1(args);
    auto [a, b, c, w] = args;
    if (!(c > b && b > 0.0) && c > a && a > 0.0) std::swap(a, b);
    if (!(c > b && b > 0.0)) throw DomainError("Euler integral requires c > b > 0 or c > a > 0");
    if (w == 0.0) return 1.0;

    // Integrate over [0, 1/2] twice, once reflected, so both endpoint distances are exact.
    // A singular power s^e is absorbed by u = s^{e+1}, which leaves a bounded integrand.
    auto half = [&](double e, auto smooth) {
        if (e >= 0.0)
            return quad::integrate_finite([&](double s) { return std::exp(e * std::log(s)) * smooth(s); }, 0.0, 0.5, spec).value;
        const double k = e + 1.0;
        auto g = [&](double u) { return smooth(std::exp(std::log(u) / k)); };
        return quad::integrate_finite(g, 0.0, std::exp(k * std::log(0.5)), spec).value / k;
    };
    const double total =
        half(b - 1.0, [&](double s) { return std::exp((c - b - 1.0) * std::log1p(-s) - a * std::log1p(-s * w)); }) +
        half(c - b - 1.0, [&](double v) { return std::exp((b - 1.0) * std::log1p(-v) - a * std::log1p(-(1.0 - v) * w)); });
    return total / beta_fn(b, c - b);
}

} // namespace relkernel::specfun

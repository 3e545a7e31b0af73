#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "relkernel/ab_kernel.hpp"
#include "relkernel/errors.hpp"
#include "relkernel/quad.hpp"

#include <numbers>

using namespace relkernel;
using namespace relkernel::ab;
using specfun::BesselOrder;
using std::numbers::pi;

namespace {

// nu = 1/2: int e^{-tp} sin(rp) sin(r'p) dp (2/pi) / sqrt(r r')
double half_order(double r, double rp, double t)
{
    return (t / (t * t + (r - rp) * (r - rp)) - t / (t * t + (r + rp) * (r + rp))) / (pi * std::sqrt(r * rp));
}

} // namespace

TEST_CASE("half-order closed form")
{
    CHECK(oracle::rel(pm_offdiag({BesselOrder(0.5), 1.0, 2.0, 1.0}), 0.4 / (pi * std::sqrt(2.0))) < 1e-7);
    oracle::Gen g(31);
    for (int i = 0; i < 40; ++i) {
        const double r = g.log_uniform(0.01, 20.0), rp = g.log_uniform(0.01, 20.0), t = g.log_uniform(0.1, 100.0);
        CHECK(oracle::rel(pm_offdiag({BesselOrder(0.5), r, rp, t}), half_order(r, rp, t)) < 1e-7);
        CHECK(oracle::rel(pm_diag({BesselOrder(0.5), r, r, t}), (1.0 / t - t / (t * t + 4 * r * r)) / (pi * r)) < 1e-10);
    }
}

TEST_CASE("diagonal routes agree")
{
    for (double nu : {0.0, 0.25, 0.5, 1.0, 2.5})
        for (double z : {0.0, 0.1, 1.0, 10.0, 100.0}) {
            const ABModeArgs args{BesselOrder(nu), std::sqrt(z), std::sqrt(z), 1.0};
            const double e = pm_diag(args, DiagRoute::euler_integral);
            const double h = pm_diag(args, DiagRoute::hypergeometric);
            const double q = pm_bessel_quadrature(args).value;
            CHECK(oracle::rel(h, e) < 1e-12);
            CHECK(oracle::rel(q, e) < 1e-9);
        }
    // nu = 0 at the origin: int_0^inf e^{-tp} p dp = t^{-2}
    CHECK(pm_diag({BesselOrder(0.0), 0.0, 0.0, 2.0}) == 0.25);
}

TEST_CASE("sharp large-time limit")
{
    const double t = 1e3;
    CHECK(oracle::rel(t * t * t * pm_diag({BesselOrder(0.5), 1.0, 1.0, t}), 4.0 / pi) < 1e-2);
    // nu = 0: t^2 p_0 -> 1
    CHECK(oracle::rel(1e8 * pm_diag({BesselOrder(0.0), 1.0, 1.0, 1e4}), 1.0) < 1e-6);
}

TEST_CASE("full kernel at zero flux is the free relativistic kernel")
{
    CHECK(oracle::rel(ab_full_kernel(0.0, 1.0, {0.0, 0.0}, {0.0, 0.0}).value.real(), 1.0 / (2.0 * pi)) < 1e-12);
    oracle::Gen g(41);
    for (int i = 0; i < 6; ++i) {
        const Vec2 x{g.uniform(-3, 3), g.uniform(-3, 3)}, y{g.uniform(-3, 3), g.uniform(-3, 3)};
        const double t = g.log_uniform(0.3, 30.0);
        const FullKernel k = ab_full_kernel(0.0, t, x, y);
        CHECK(oracle::rel(k.value.real(), quad::free_relativistic_kernel(distance(x, y), t)) < 1e-9);
        CHECK(std::abs(k.value.imag()) < 1e-12 * std::abs(k.value.real()) + 1e-300);
        CHECK_FALSE(k.cutoff_warning);
    }
}

TEST_CASE("property: modulus is periodic in the flux")
{
    oracle::Gen g(43);
    for (int i = 0; i < 6; ++i) {
        const double alpha = g.uniform(-1.0, 1.0);
        const Vec2 x{g.uniform(-2, 2), g.uniform(-2, 2)}, y{g.uniform(-2, 2), g.uniform(-2, 2)};
        const double k0 = std::abs(ab_full_kernel(alpha, 1.0, x, y).value);
        const double k1 = std::abs(ab_full_kernel(alpha + 1.0, 1.0, x, y).value);
        CHECK(oracle::rel(k1, k0) < 1e-9);
    }
}

TEST_CASE("property: Cauchy-Schwarz bound of the modes")
{
    oracle::Gen g(47);
    for (int i = 0; i < 200; ++i) {
        const ABModeArgs args{BesselOrder(g.uniform(0.0, 6.0)), g.log_uniform(0.01, 10.0), g.log_uniform(0.01, 10.0),
                              g.log_uniform(0.1, 50.0)};
        CHECK(cauchy_schwarz_offdiag_bound(args));
    }
    const CauchySchwarzSides eq = cauchy_schwarz_sides({BesselOrder(1.0), 2.0, 2.0, 1.0});
    CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-14));
}

TEST_CASE("weighted sup norm")
{
    const double s10 = weighted_sup(0.5, 10.0, 0.25, {0.0, 0.5, 1.0, 2.0, 4.0});
    const double s20 = weighted_sup(0.5, 20.0, 0.25, {0.0, 0.5, 1.0, 2.0, 4.0});
    CHECK(s20 / s10 == doctest::Approx(0.125).epsilon(0.05));
    CHECK_THROWS_AS(weighted_sup(0.5, 1.0, 1.0, {1.0}), DomainError);
    CHECK_THROWS_AS(weighted_sup(0.5, 1.0, 0.0, {1.0}), DomainError);
    CHECK_THROWS_AS(weighted_sup(0.5, 1.0, 0.25, {}), DomainError);
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(pm_diag({BesselOrder(0.5), -1.0, -1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(pm_offdiag({BesselOrder(0.5), 1.0, 2.0, 0.0}), DomainError);
    CHECK_THROWS_AS(ab_full_kernel(0.5, 1.0, {1, 0}, {1, 0}, -1), DomainError);
    CHECK(pm_offdiag({BesselOrder(1.5), 0.0, 2.0, 1.0}) == 0.0);
}

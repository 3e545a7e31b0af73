#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "relkernel/errors.hpp"
#include "relkernel/quad.hpp"

#include <numbers>

using namespace relkernel;
using namespace relkernel::quad;
using std::numbers::pi;

namespace {

const Transform kAll[] = {Transform::none, Transform::exp_substitution, Transform::double_exponential};

double massive_closed_form(double d, double t, double m)
{
    const double rho = std::hypot(t, d);
    return t / (2.0 * pi) * (1.0 + m * rho) * std::exp(m * (t - rho)) / (rho * rho * rho);
}

} // namespace

TEST_CASE("spec validation")
{
    CHECK_THROWS_AS((QuadratureSpec{0.0, 1e-10, 60, Transform::none}).validate(), DomainError);
    CHECK_THROWS_AS((QuadratureSpec{1e-12, -1.0, 60, Transform::none}).validate(), DomainError);
    CHECK_THROWS_AS((QuadratureSpec{1e-12, 1e-10, 0, Transform::none}).validate(), DomainError);
    CHECK_NOTHROW(QuadratureSpec{}.validate());
}

TEST_CASE("semi-infinite integrals with every transform")
{
    for (Transform tr : kAll) {
        const QuadratureSpec spec{1e-13, 1e-11, 200, tr};
        CAPTURE(static_cast<int>(tr));
        CHECK(integrate_semi_infinite([](double x) { return x * std::exp(-x); }, spec).value == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(integrate_semi_infinite([](double x) { return std::exp(-x * x); }, spec).value ==
              doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-10));
        CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, spec, 2.0).value ==
              doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
    }
}

TEST_CASE("in-text integral 4 sqrt(pi) t^-3")
{
    for (double t : {0.5, 1.0, 3.0}) {
        auto f = [t](double s) { return s > 0.0 ? std::pow(s, -2.5) * std::exp(-t * t / (4.0 * s)) : 0.0; };
        const QuadResult r = integrate_semi_infinite(f, {1e-300, 1e-12, 12, Transform::double_exponential}, 0.0, t * t);
        CHECK(oracle::rel(r.value, 4.0 * std::sqrt(pi) / (t * t * t)) < 1e-10);
    }
}

TEST_CASE("finite tanh-sinh integrals with endpoint singularities")
{
    CHECK(integrate_finite([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(integrate_finite([](double x) { return std::log(x); }, 0.0, 1.0).value == doctest::Approx(-1.0).epsilon(1e-11));
    CHECK(integrate_finite([](double x) { return std::pow(x, -0.9); }, 0.0, 1.0).value == doctest::Approx(10.0).epsilon(1e-9));
    CHECK(integrate_finite([](double x) { return x; }, 2.0, 1.0).value == doctest::Approx(-1.5));
}

TEST_CASE("Gauss-Kronrod rules")
{
    for (int k = 0; k <= 31; ++k)
        CHECK(gauss_kronrod_21([k](double x) { return std::pow(x, k); }, 0.0, 1.0).value ==
              doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    const QuadResult r = integrate_adaptive_gk([](double x) { return std::sin(50.0 * x); }, 0.0, pi);
    CHECK(std::abs(r.value) < 1e-10);
}

TEST_CASE("errors are reported, not hidden")
{
    auto nan = [](double) { return std::nan(""); };
    CHECK_THROWS_AS(integrate_semi_infinite(nan), EvaluationError);
    const QuadratureSpec tight{1e-300, 1e-15, 1, Transform::none};
    try {
        integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, tight);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_estimate() == doctest::Approx(pi / 2).epsilon(1e-2));
        CHECK(e.achieved_error() > 0.0);
    }
}

TEST_CASE("property: returned errors are honest")
{
    oracle::Gen g(5);
    for (int i = 0; i < 60; ++i) {
        const double a = g.log_uniform(0.1, 10.0);
        const double p = g.uniform(0.0, 3.0);
        // int_0^inf x^p e^{-a x} dx = Gamma(p+1) / a^{p+1}
        const double exact = std::tgamma(p + 1.0) / std::pow(a, p + 1.0);
        for (Transform tr : kAll) {
            const QuadratureSpec spec{1e-300, 1e-9, 200, tr};
            try {
                const QuadResult r = integrate_semi_infinite([&](double x) { return std::pow(x, p) * std::exp(-a * x); }, spec);
                CHECK(std::abs(r.value - exact) <= std::max(r.error, spec.target(exact)));
            } catch (const ConvergenceError&) {
            }
        }
    }
}

TEST_CASE("massless subordination of the free heat kernel")
{
    for (double d : {0.0, 1.0, 2.0, 3.0, 4.0, 5.0})
        for (double t : {0.5, 1.0, 5.0, 10.0}) {
            const SubordinationInput in{[d](double s) { return free_heat_kernel(d, s); }, t, 0.0};
            CHECK(oracle::rel(subordinate_massless(in).value, free_relativistic_kernel(d, t)) < 1e-8);
            CHECK(oracle::rel(subordinate_massive(in).value, free_relativistic_kernel(d, t)) < 1e-8);
        }
    CHECK(free_relativistic_kernel(0.0, 1.0) == doctest::Approx(1.0 / (2.0 * pi)));
}

TEST_CASE("massive subordination of the free heat kernel")
{
    oracle::Gen g(9);
    for (int i = 0; i < 40; ++i) {
        const double m = g.log_uniform(0.01, 20.0);
        const double t = g.log_uniform(1e-3, 1e3);
        const double d = g.uniform(0.0, 5.0);
        const SubordinationInput in{[d](double s) { return free_heat_kernel(d, s); }, t, m};
        CHECK(oracle::rel(subordinate_massive(in, {1e-300, 1e-10, 60, Transform::double_exponential}).value,
                          massive_closed_form(d, t, m)) < 1e-8);
    }
    const SubordinationInput one{[](double s) { return free_heat_kernel(0.0, s); }, 1.0, 1.0};
    CHECK(subordinate_massive(one).value == doctest::Approx(1.0 / pi).epsilon(1e-10));
}

TEST_CASE("substituted moment")
{
    for (double t : {0.01, 1.0, 100.0})
        CHECK(oracle::rel(substituted_moment(2.0, 0.0, t).value, std::sqrt(pi) / (4.0 * std::pow(t, 1.5))) < 1e-10);
    for (auto [a, m, t] : {std::tuple{2.0, 1.0, 10.0}, {0.5, 4.0, 0.1}, {3.0, 1.0, 300.0}}) {
        auto f = [&](double r) { return r > 0.0 ? std::pow(r, a) * std::exp(-t * std::pow(r - m / (2.0 * r), 2)) : 0.0; };
        const double want = oracle::simpson(f, 0.0, 60.0, 2000000);
        CHECK(oracle::rel(substituted_moment(a, m, t).value, want) < 1e-8);
    }
    CHECK_THROWS_AS(substituted_moment(-1.0, 0.0, 1.0), DomainError);
}

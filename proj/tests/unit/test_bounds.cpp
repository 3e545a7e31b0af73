#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "relkernel/bounds_fit.hpp"
#include "relkernel/errors.hpp"
#include "relkernel/quad.hpp"

#include <numbers>

using namespace relkernel;
using namespace relkernel::bounds;
using std::numbers::pi;

namespace {

std::vector<double> log_points(double lo, double hi, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, i / (n - 1.0));
    return out;
}

std::vector<KernelSample> free_samples()
{
    std::vector<KernelSample> out;
    for (double t : log_points(0.5, 50.0, 9))
        for (double d : {0.0, 0.5, 2.0})
            out.push_back({t, {0.0, 0.0}, {d, 0.0}, quad::free_relativistic_kernel(d, t), 0.0, "exact"});
    return out;
}

BoundSpec spec_of(BoundKind kind)
{
    BoundSpec s;
    s.kind = kind;
    return s;
}

} // namespace

TEST_CASE("right-hand sides")
{
    BoundSpec s = spec_of(BoundKind::thm21_poly);
    s.constant = 1.0 / (2.0 * pi);
    CHECK(bound_rhs(s, {5.0, 0.0}, {0.0, 1.0}, 2.0) == doctest::Approx(1.0 / (8.0 * pi)));
    CHECK(bound_rhs(spec_of(BoundKind::diamag), {1.0, 1.0}, {1.0, 1.0}, 1.0) == doctest::Approx(1.0 / (4.0 * pi)));
    s.kappa = 0.5;
    s.beta = 0.5;
    s.constant = 3.0;
    CHECK(bound_rhs(s, {1.0, 0.0}, {0.0, 1.0}, 4.0) == doctest::Approx(3.0 / 32.0));
    BoundSpec lg = spec_of(BoundKind::thm21_log);
    lg.theta = 1.0;
    CHECK(bound_rhs(lg, {0.0, 0.0}, {0.0, 0.0}, 1.0) == doctest::Approx(std::pow(std::log(2.0), 2) / std::pow(std::log(3.0), 2)));
    BoundSpec m = spec_of(BoundKind::thm22_poly);
    CHECK(bound_rhs(m, {0, 0}, {0, 0}, 4.0) == doctest::Approx(0.25));
    BoundSpec l23 = spec_of(BoundKind::lemma23);
    l23.a = 2.0;
    l23.mass = 4.0;
    l23.constant = 1.0;
    l23.constant2 = 2.0;
    CHECK(bound_rhs(l23, {}, {}, 4.0) == doctest::Approx(4.0 / 2.0 + 2.0 / 8.0));
    BoundSpec l31 = spec_of(BoundKind::lemma31);
    l31.kappa = 0.5;
    l31.nu = 1.0;
    CHECK(bound_rhs(l31, {}, {}, 2.0) == doctest::Approx(std::pow(2.0, -3.0) * std::pow(2.0, -1.25)));
    CHECK(lhs_weight(l31, {1.0, 0.0}, {0.0, 3.0}) == doctest::Approx(std::pow(8.0, -1.75)));
}

TEST_CASE("range and parameter checks")
{
    CHECK_THROWS_AS(bound_rhs(spec_of(BoundKind::thm22_poly), {}, {}, 0.5), DomainError);
    CHECK_THROWS_AS(bound_rhs(spec_of(BoundKind::thm22_log), {}, {}, 0.5), DomainError);
    CHECK_THROWS_AS(bound_rhs(spec_of(BoundKind::thm22_small_t), {}, {}, 2.0), DomainError);
    CHECK_THROWS_AS(bound_rhs(spec_of(BoundKind::uniform_rel), {}, {}, 0.0), DomainError);
    BoundSpec s = spec_of(BoundKind::thm21_poly);
    s.beta = 0.3;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = spec_of(BoundKind::thm21_log);
    s.theta = 1.5;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = spec_of(BoundKind::thm32);
    s.eps = 0.6;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = spec_of(BoundKind::uniform_rel);
    s.constant = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    CHECK(kind_from_name(kind_name(BoundKind::thm22_small_t)) == BoundKind::thm22_small_t);
    CHECK_THROWS_AS(kind_from_name("thm99"), DomainError);
}

TEST_CASE("verify_bound on the free kernel")
{
    const BoundReport r = verify_bound(spec_of(BoundKind::thm21_poly), free_samples());
    CHECK(r.pass);
    CHECK(r.fitted_constant == doctest::Approx(1.0 / (2.0 * pi)).epsilon(1e-12));
    CHECK(r.training > 0);
    CHECK(r.held_out > r.training);
    const BoundReport u = verify_bound(spec_of(BoundKind::uniform_rel), free_samples());
    CHECK(u.fitted_constant == doctest::Approx(1.0).epsilon(1e-12));

    BoundSpec wrong = spec_of(BoundKind::thm21_poly);
    wrong.kappa = 0.5;
    wrong.beta = 0.5;
    CHECK_FALSE(verify_bound(wrong, free_samples()).pass);
    CHECK_THROWS_AS(verify_bound(wrong, {}), DomainError);
}

TEST_CASE("property: enlarging the constant never flips pass to fail")
{
    oracle::Gen g(53);
    const auto samples = free_samples();
    BoundSpec s = spec_of(BoundKind::uniform_rel);
    for (int i = 0; i < 200; ++i) {
        s.constant = g.log_uniform(0.5, 2.0);
        const bool before = verify_bound_fixed(s, samples).pass;
        s.constant *= g.uniform(1.0, 10.0);
        CHECK((!before || verify_bound_fixed(s, samples).pass));
    }
}

TEST_CASE("diamagnetic bound holds for the free heat kernel exactly")
{
    std::vector<KernelSample> heat;
    for (double t : {0.1, 1.0, 10.0})
        for (double d : {0.0, 1.0, 4.0}) heat.push_back({t, {0, 0}, {d, 0}, quad::free_heat_kernel(d, t), 0.0, "exact"});
    const BoundReport r = verify_bound_fixed(spec_of(BoundKind::diamag), heat, 1e-14);
    CHECK(r.pass);
    CHECK(r.max_ratio == doctest::Approx(1.0));
}

TEST_CASE("exponent fits")
{
    const std::vector<double> t = log_points(1.0, 100.0, 7);
    std::vector<double> v2, v1;
    for (double ti : t) {
        v2.push_back(std::pow(ti, -2.0));
        v1.push_back(3.0 / ti);
    }
    const DecayFit f2 = fit_exponent(t, v2);
    CHECK(f2.slope == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(f2.residual < 1e-14);
    CHECK(fit_exponent(t, v1).slope == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(fit_exponent(t, v1).intercept == doctest::Approx(std::log(3.0)).epsilon(1e-13));
    CHECK_THROWS_AS(fit_exponent({1.0, 10.0}, {1.0, 0.1}), DomainError);
    CHECK_THROWS_AS(fit_exponent({1.0, 2.0, 3.0, 4.0}, {1.0, 1.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(fit_exponent({1.0, 3.0, 9.0, 27.0}, {1.0, 1.0, -1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(fit_exponent({1.0, 3.0, 3.0, 27.0}, {1.0, 1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("property: exponent recovery under 1% noise")
{
    oracle::Gen g(59);
    std::normal_distribution<double> noise(0.0, 0.01);
    for (int i = 0; i < 200; ++i) {
        const double p = g.uniform(-4.0, 0.0);
        const double c = g.log_uniform(1e-3, 1e3);
        const std::vector<double> t = log_points(1.0, 100.0, 25);
        std::vector<double> v;
        for (double ti : t) v.push_back(c * std::pow(ti, p) * (1.0 + noise(g.rng)));
        CHECK(std::abs(fit_exponent(t, v).slope - p) < 0.02);
    }
}

TEST_CASE("moment lemma")
{
    const auto grid = log_points(1e-2, 1e4, 13);
    const Lemma23Report gauss = verify_lemma23(2.0, 0.0, grid);
    CHECK(gauss.pass);
    CHECK(gauss.c1 == 0.0);
    CHECK(gauss.c2 == doctest::Approx(std::sqrt(pi) / 4.0).epsilon(0.02));
    CHECK(verify_lemma23(3.0, 1.0, grid).pass);
    const Lemma23Report both = verify_lemma23(2.0, 1.0, grid);
    CHECK(both.pass);
    CHECK(both.c1 > 0.0);
    CHECK(both.c2 > 0.0);
    const Lemma23Report large_m = verify_lemma23(0.5, 4.0, grid);
    CHECK(large_m.pass);
    CHECK(large_m.slope_large_t == doctest::Approx(-0.5).epsilon(0.01));
    CHECK(large_m.slope_small_t < -0.5);
    CHECK_THROWS_AS(verify_lemma23(0.0, 1.0, grid), DomainError);
    CHECK_THROWS_AS(verify_lemma23(1.0, 1.0, {1.0}), DomainError);
}

TEST_CASE("large-time limits of the diagonal mode kernel")
{
    const LimitReport half = asymptotic_limit_check(0.5, 1.0, {1e2, 1e3});
    CHECK(half.limit == doctest::Approx(4.0 / pi).epsilon(1e-14));
    CHECK(half.deviation < 1e-2);
    const LimitReport quarter = asymptotic_limit_check(0.25, 1.0, {1e4});
    CHECK(quarter.limit == doctest::Approx(1.5 / pi * std::sqrt(2.0) * std::beta(0.75, 0.75)).epsilon(1e-13));
    CHECK(quarter.deviation < 1e-6);
    const LimitReport integer = asymptotic_limit_check(1.0, 3.0, {1e5});
    CHECK(integer.limit == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integer.deviation < 1e-6);
}

TEST_CASE("weighted mode bound for the half flux")
{
    const BoundReport r = verify_lemma31(0.5, 0.25, 4, {1.0, 10.0, 100.0, 1000.0}, {0.0, 1.0, 5.0});
    CHECK(r.pass);
    CHECK(r.spec.kind == BoundKind::lemma31);
    CHECK(r.fitted_constant > 0.0);
}

// Acceptance criteria. Usage: acceptance [criterion ...]; no arguments runs all twelve.
// Prints one PASS/FAIL line per criterion; a criterion passes only within its runtime budget.

#include "relkernel/ab_kernel.hpp"
#include "relkernel/bounds_fit.hpp"
#include "relkernel/cli/commands.hpp"
#include "relkernel/quad.hpp"
#include "relkernel/radial_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

using namespace relkernel;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
};

double rel_err(double got, double want) { return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want); }

std::vector<double> log_points(double lo, double hi, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, i / (n - 1.0));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Outcome free_relativistic_kernel()
{
    double worst = 0.0;
    int points = 0;
    for (double d : {0.0, 1.25, 2.5, 3.75, 5.0})
        for (double t : {0.5, 1.0, 5.0, 10.0}) {
            const quad::SubordinationInput in{[d](double s) { return quad::free_heat_kernel(d, s); }, t, 0.0};
            worst = std::max(worst, rel_err(quad::subordinate_massless(in).value, quad::free_relativistic_kernel(d, t)));
            ++points;
        }
    return {worst <= 1e-8, fmt("%g points, max rel err %.2e (tol 1e-8)", points, worst)};
}

Outcome in_text_integral()
{
    double worst = 0.0;
    for (double t : {0.5, 1.0, 3.0}) {
        auto f = [t](double s) { return s > 0.0 ? std::pow(s, -2.5) * std::exp(-t * t / (4.0 * s)) : 0.0; };
        const quad::QuadratureSpec spec{1e-300, 1e-13, 60, quad::Transform::double_exponential};
        const double got = quad::integrate_semi_infinite(f, spec, 0.0, t * t).value;
        worst = std::max(worst, rel_err(got, 4.0 * std::sqrt(pi) / (t * t * t)));
    }
    return {worst <= 1e-10, fmt("max rel err %.2e (tol 1e-10)", worst)};
}

Outcome hypergeometric_consistency()
{
    double worst = 0.0;
    for (double nu : {0.0, 0.25, 0.5, 1.0, 2.5})
        for (double z : {0.0, 0.1, 1.0, 10.0, 100.0}) {
            const ab::ABModeArgs args{specfun::BesselOrder(nu), std::sqrt(z), std::sqrt(z), 1.0};
            const double hyp = ab::pm_diag(args, ab::DiagRoute::hypergeometric);
            const double euler = ab::pm_diag(args, ab::DiagRoute::euler_integral);
            const double bessel = ab::pm_bessel_quadrature(args).value;
            worst = std::max({worst, rel_err(hyp, euler), rel_err(hyp, bessel), rel_err(euler, bessel)});
        }
    return {worst <= 1e-6, fmt("25 (nu, z) cases, max pairwise rel diff %.2e (tol 1e-6)", worst)};
}

Outcome half_order_oracle()
{
    const double got = ab::pm_offdiag({specfun::BesselOrder(0.5), 1.0, 2.0, 1.0});
    const double want = 0.4 / (pi * std::sqrt(2.0));
    const double err = rel_err(got, want);
    return {err <= 1e-7, fmt("p = %.15g, closed form %.15g, rel err %.2e (tol 1e-7)", got, want, err)};
}

Outcome sharp_ab_decay()
{
    const std::vector<double> t = log_points(10.0, 1e3, 8);
    std::vector<double> v;
    for (double ti : t) v.push_back(ab::pm_diag({specfun::BesselOrder(0.5), 1.0, 1.0, ti}));
    const double slope = bounds::fit_exponent(t, v).slope;
    const double scaled = std::pow(1e3, 3) * v.back();
    const double dev = rel_err(scaled, 4.0 / pi);
    return {std::abs(slope + 3.0) <= 0.05 && dev <= 0.01,
            fmt("slope %.4f (want -3 +- 0.05), t^3 p at t=1e3 = %.6f vs 4/pi, rel dev %.2e (tol 1e-2)", slope, scaled, dev)};
}

Outcome weighted_mode_bound()
{
    const bounds::BoundReport r =
        bounds::verify_lemma31(0.5, 0.25, 12, log_points(1.0, 1e3, 7), {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0});
    return {r.pass, fmt("fitted C = %.6g, held-out max ratio %.4f (tol 1.05), %g training / %g held-out samples",
                        r.fitted_constant, r.max_ratio, static_cast<double>(r.training), static_cast<double>(r.held_out))};
}

Outcome moment_lemma()
{
    const std::vector<double> grid = log_points(1e-2, 1e4, 13);
    bool pass = true;
    double worst = 0.0;
    double c2 = 0.0;
    for (auto [a, m] : {std::pair{2.0, 0.0}, {2.0, 1.0}, {3.0, 1.0}, {0.5, 4.0}}) {
        const bounds::Lemma23Report r = bounds::verify_lemma23(a, m, grid);
        pass = pass && r.pass;
        worst = std::max(worst, r.max_ratio);
        if (a == 2.0 && m == 0.0) c2 = r.c2;
    }
    const double dev = rel_err(c2, std::sqrt(pi) / 4.0);
    return {pass && dev <= 0.02,
            fmt("max LHS/RHS on the check grid %.4f (tol 1.05), C2(a=2, m=0) = %.6f, rel dev from sqrt(pi)/4 %.2e (tol 2e-2)",
                worst, c2, dev)};
}

Outcome massive_crossover()
{
    auto slope = [](double lo, double hi) {
        const std::vector<double> t = log_points(lo, hi, 8);
        std::vector<double> v;
        for (double ti : t) {
            const quad::SubordinationInput in{[](double s) { return quad::free_heat_kernel(0.0, s); }, ti, 1.0};
            v.push_back(quad::subordinate_massive(in, {1e-300, 1e-10, 60, quad::Transform::double_exponential}).value);
        }
        return bounds::fit_exponent(t, v).slope;
    };
    const double small = slope(1e-3, 1e-2);
    const double large = slope(1e2, 1e3);
    return {std::abs(small + 2.0) <= 0.1 && std::abs(large + 1.0) <= 0.1,
            fmt("slope %.4f on [1e-3, 1e-2] (want -2 +- 0.1), %.4f on [1e2, 1e3] (want -1 +- 0.1)", small, large)};
}

Outcome radial_baseline()
{
    const radial::RadialSolver solver(field::make_flux_data(field::FieldProfile::zero()), radial::RadialGrid::uniform(20.0, 800));
    double diag = 0.0;
    for (double t : {0.5, 1.0, 2.0})
        for (const Vec2& x : {Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.0, 2.5}, Vec2{-3.0, 1.0}})
            diag = std::max(diag, rel_err(solver.assemble_2d_kernel(x, x, t).value.real(), quad::free_heat_kernel(0.0, t)));
    double semigroup = 0.0;
    for (int m : {0, 1, -2, 5}) {
        const radial::ModeSpectrum& sp = *solver.spectrum(m);
        const radial::ModeKernel a = radial::mode_heat_kernel(sp, 0.4);
        const radial::ModeKernel b = radial::mode_heat_kernel(sp, 0.9);
        const radial::ModeKernel ab = radial::mode_heat_kernel(sp, 1.3);
        const Eigen::MatrixXd composed = a.matrix * a.weights.asDiagonal() * b.matrix;
        semigroup = std::max(semigroup, (composed - ab.matrix).norm() / ab.matrix.norm());
    }
    return {diag <= 0.01 && semigroup <= 1e-5,
            fmt("diagonal max rel err %.2e (tol 1e-2), semigroup composition rel err %.2e (tol 1e-5)", diag, semigroup)};
}

// Stretched grids reaching far enough for the subordination integral at t up to 500.
radial::RadialGrid long_time_grid() { return radial::RadialGrid::stretched(0.02, 0.02, 1e6); }

const quad::QuadratureSpec kLongTimeSpec{1e-18, 1e-9, 60, quad::Transform::double_exponential};

Outcome half_flux_step_decay()
{
    const radial::RadialGrid grid = long_time_grid();
    const radial::RadialSolver step(field::make_flux_data(field::FieldProfile::step(1.0, 1.0)), grid);
    const radial::RadialSolver free(field::make_flux_data(field::FieldProfile::zero()), grid);
    const double beta = step.flux().kappa;
    const std::vector<std::pair<Vec2, Vec2>> pairs{{{1.0, 0.0}, {1.0, 0.0}}, {{0.5, 0.0}, {0.0, 2.0}}, {{0.0, 0.0}, {3.0, 0.0}}};
    const std::vector<double> times = log_points(10.0, 200.0, 8);
    double worst_slope = 0.0;
    double slope_lo = 0.0;
    double slope_hi = -10.0;
    double diamag = 0.0;
    for (const auto& [x, y] : pairs) {
        std::vector<double> weighted;
        for (double t : times) {
            const double k = std::abs(step.relativistic_kernel(x, y, t, 0.0, kLongTimeSpec).value);
            weighted.push_back(k * std::pow((1.0 + x.norm()) * (1.0 + y.norm()), -beta));
            // |K_B| against the free kernel inflated by the zero-field solver error on the same grid.
            const double exact = quad::free_relativistic_kernel(distance(x, y), t);
            const double tol = rel_err(free.relativistic_kernel(x, y, t, 0.0, kLongTimeSpec).value.real(), exact);
            diamag = std::max(diamag, k / (exact * (1.0 + tol)));
        }
        const double slope = bounds::fit_exponent(times, weighted).slope;
        slope_lo = std::min(slope_lo == 0.0 ? slope : slope_lo, slope);
        slope_hi = std::max(slope_hi, slope);
        worst_slope = std::max(worst_slope, std::abs(slope + 3.0));
    }
    return {worst_slope <= 0.1 && diamag <= 1.0,
            fmt("fitted slopes in [%.4f, %.4f] (want -3 +- 0.1), max |K_B| / K_0 %.4f (bound 1 up to discretization)",
                slope_lo, slope_hi, diamag)};
}

Outcome integer_flux_log_bound()
{
    const radial::RadialSolver step(field::make_flux_data(field::FieldProfile::step(2.0, 1.0)), long_time_grid());
    const std::vector<std::pair<Vec2, Vec2>> pairs{{{0.0, 0.0}, {0.0, 0.0}}, {{1.0, 0.0}, {1.0, 0.0}},
                                                   {{0.5, 0.0}, {0.0, 2.0}}, {{3.0, 0.0}, {3.0, 0.0}}};
    const std::vector<double> times = log_points(10.0, 500.0, 12);
    // G(t) = t^2 log(2+t)^2 sup over the sample pairs of |K| / (log(2+|x|) log(2+|y|)).
    std::vector<double> g;
    for (double t : times) {
        double sup = 0.0;
        for (const auto& [x, y] : pairs) {
            const double k = std::abs(step.relativistic_kernel(x, y, t, 0.0, kLongTimeSpec).value);
            sup = std::max(sup, k / (std::log(2.0 + x.norm()) * std::log(2.0 + y.norm())));
        }
        const double l = std::log(2.0 + t);
        g.push_back(t * t * l * l * sup);
    }
    // Last decade of the window: t in [50, 500].
    std::size_t first = 0;
    while (times[first] < 50.0) ++first;
    bool increasing = true;
    for (std::size_t i = first + 1; i < g.size(); ++i) increasing = increasing && g[i] > g[i - 1];
    const double growth = g.back() / g[first];
    return {!increasing, fmt("G from %.5f at t=%.1f to %.5f at t=500 (ratio %.4f); ", g[first], times[first], g.back(), growth) +
                             (increasing ? "monotone growth across the last decade" : "no monotone growth")};
}

Outcome invariant_suites()
{
    const cli::VerifyReport report = cli::cmd_verify(cli::Suite::all, 1);
    std::string failed;
    for (const cli::Check& c : report.checks)
        if (!c.pass) failed += " " + c.suite + "." + c.name;
    return {report.pass(), std::to_string(report.checks.size()) + " checks" + (failed.empty() ? ", all passed" : ", failed:" + failed)};
}

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all{
        {1, "free relativistic kernel by subordination", 1.0, free_relativistic_kernel},
        {2, "in-text Gaussian integral", 1.0, in_text_integral},
        {3, "hypergeometric, Euler and Bessel routes agree", 30.0, hypergeometric_consistency},
        {4, "half-order elementary oracle", 1.0, half_order_oracle},
        {5, "sharp Aharonov-Bohm decay", 10.0, sharp_ab_decay},
        {6, "weighted mode bound on held-out samples", 120.0, weighted_mode_bound},
        {7, "substituted moment two-term bound", 10.0, moment_lemma},
        {8, "massive crossover slopes", 10.0, massive_crossover},
        {9, "radial solver baseline", 120.0, radial_baseline},
        {10, "half-flux step field decay and diamagnetic bound", 600.0, half_flux_step_decay},
        {11, "integer-flux logarithmic bound", 600.0, integer_flux_log_bound},
        {12, "invariant suites", 300.0, invariant_suites},
    };
    return all;
}

} // namespace

int main(int argc, char** argv)
{
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        char* end = nullptr;
        const long id = std::strtol(argv[i], &end, 10);
        if (*end != '\0' || id < 1 || id > static_cast<long>(criteria().size())) {
            std::fprintf(stderr, "unknown criterion '%s' (expected 1..%zu)\n", argv[i], criteria().size());
            return 2;
        }
        selected.push_back(static_cast<int>(id));
    }
    int failures = 0;
    for (const Criterion& c : criteria()) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < c.budget_seconds;
        const bool pass = out.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s criterion %2d  %s: %s [%.2f s, budget %g s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    out.detail.c_str(), seconds, c.budget_seconds, in_time ? "" : ", over budget");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

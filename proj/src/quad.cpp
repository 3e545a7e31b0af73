#include "relkernel/quad.hpp"

#include "relkernel/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

namespace relkernel::quad {

using std::numbers::pi;

void QuadratureSpec::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("quadrature tolerances must be positive");
    if (max_subdivisions < 1)
        throw DomainError("quadrature max_subdivisions must be >= 1");
}

double QuadratureSpec::target(double estimate) const { return std::max(abs_tol, rel_tol * std::abs(estimate)); }

namespace {

double checked(double v, double x)
{
    if (!std::isfinite(v))
        throw EvaluationError("integrand returned a non-finite value at x = " + std::to_string(x));
    return v;
}

struct DeNode {
    double x = 0.0;
    double w = 0.0;
    bool valid = false;
};

constexpr double kDeFirstStep = 0.5;
constexpr double kDeTruncation = 1e-18;
constexpr int kDeMaxLevels = 12;

// Trapezoidal sums of the transformed integrand with step halving. The tau
// range is fixed on the first level by walking outward until the terms are
// negligible; later levels only fill in odd nodes.
template <class NodeFn>
QuadResult de_integrate(const Integrand& f, NodeFn node, double tau_max, const QuadratureSpec& spec)
{
    spec.validate();
    const int max_levels = std::clamp(spec.max_subdivisions, 1, kDeMaxLevels);

    QuadResult res;
    double abs_sum = 0.0;
    auto term = [&](double tau) {
        const DeNode n = node(tau);
        if (!n.valid) return 0.0;
        ++res.evaluations;
        const double v = checked(f(n.x), n.x) * n.w;
        abs_sum += std::abs(v);
        return v;
    };

    double sum = term(0.0);
    double max_term = std::abs(sum);
    double tau_hi = 0.0;
    double tau_lo = 0.0;
    for (int dir : {1, -1}) {
        int small = 0;
        for (int k = 1; k * kDeFirstStep <= tau_max; ++k) {
            const double tau = dir * k * kDeFirstStep;
            const double v = term(tau);
            sum += v;
            max_term = std::max(max_term, std::abs(v));
            if (dir > 0) tau_hi = tau; else tau_lo = tau;
            if (k * kDeFirstStep >= 3.0 && std::abs(v) <= kDeTruncation * max_term) {
                if (++small >= 2) break;
            } else {
                small = 0;
            }
        }
    }

    double h = kDeFirstStep;
    double estimate = h * sum;
    double err = std::abs(estimate);
    for (int level = 1; level <= max_levels; ++level) {
        h *= 0.5;
        double fresh = 0.0;
        const long first = static_cast<long>(std::ceil((tau_lo / h - 1.0) / 2.0));
        for (long j = first;; ++j) {
            const double tau = (2 * j + 1) * h;
            if (tau <= tau_lo) continue;
            if (tau >= tau_hi) break;
            fresh += term(tau);
        }
        const double refined = 0.5 * estimate + h * fresh;
        err = std::abs(refined - estimate);
        estimate = refined;
        err = std::max(err, 4e-16 * h * abs_sum);
        if (level >= 2 && err <= spec.target(estimate)) {
            res.value = estimate;
            res.error = err;
            return res;
        }
    }
    throw ConvergenceError("double-exponential quadrature did not converge", estimate, err);
}

// exp-sinh: x = lower + scale * exp(pi/2 sinh tau).
QuadResult exp_sinh(const Integrand& f, double lower, double scale, const QuadratureSpec& spec)
{
    auto node = [=](double tau) {
        DeNode n;
        const double y = 0.5 * pi * std::sinh(tau);
        const double off = scale * std::exp(y);
        if (!(off > 0.0) || !std::isfinite(off)) return n;
        n.x = lower + off;
        if (n.x == lower || !std::isfinite(n.x)) return n;
        n.w = off * 0.5 * pi * std::cosh(tau);
        n.valid = std::isfinite(n.w);
        return n;
    };
    return de_integrate(f, node, 6.7, spec);
}

// tanh-sinh on [a, b]; distances to the nearer endpoint are formed directly.
QuadResult tanh_sinh(const Integrand& f, double a, double b, const QuadratureSpec& spec)
{
    const double len = b - a;
    auto node = [=](double tau) {
        DeNode n;
        const double y = 0.5 * pi * std::sinh(tau);
        const double e = std::exp(-2.0 * std::abs(y));
        const double delta = len * e / (1.0 + e);
        if (!(delta > 0.0)) return n;
        n.x = tau < 0.0 ? a + delta : b - delta;
        if (n.x <= a || n.x >= b) return n;
        n.w = len * pi * std::cosh(tau) * e / ((1.0 + e) * (1.0 + e));
        n.valid = true;
        return n;
    };
    return de_integrate(f, node, 6.05, spec);
}

// QUADPACK qk15 / qk21 abscissae and weights.
constexpr std::array<double, 8> kXgk15 = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk15 = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg7 = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::array<double, 11> kXgk21 = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720, 0.0};
constexpr std::array<double, 11> kWgk21 = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208977449186, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg10 = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const Integrand& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double fc = checked(f(c), c);
    double k = kWgk15[7] * fc;
    double g = kWg7[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = hl * kXgk15[i];
        const double s = checked(f(c - dx), c - dx) + checked(f(c + dx), c + dx);
        k += kWgk15[i] * s;
        if (i % 2 == 1) g += kWg7[i / 2] * s;
    }
    return {a, b, k * hl, std::abs((k - g) * hl)};
}

} // namespace

QuadResult gauss_kronrod_21(const Integrand& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double fc = checked(f(c), c);
    double k = kWgk21[10] * fc;
    double g = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double dx = hl * kXgk21[i];
        const double s = checked(f(c - dx), c - dx) + checked(f(c + dx), c + dx);
        k += kWgk21[i] * s;
        if (i % 2 == 1) g += kWg10[i / 2] * s;
    }
    return {k * hl, std::abs((k - g) * hl), 21};
}

QuadResult integrate_adaptive_gk(const Integrand& f, double a, double b, const QuadratureSpec& spec)
{
    spec.validate();
    if (a == b) return {};
    std::priority_queue<Panel> heap;
    Panel first = gk15(f, a, b);
    heap.push(first);
    double total = first.value;
    double total_err = first.error;
    QuadResult res;
    res.evaluations = 15;
    int bisections = 0;
    while (total_err > spec.target(total) && bisections < spec.max_subdivisions) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        res.evaluations += 30;
        // |K - G| is optimistic next to endpoint singularities; the change of the parent's
        // value under bisection is a floor that catches them.
        const double jump = 0.5 * std::abs(left.value + right.value - worst.value);
        left.error = std::max(left.error, jump);
        right.error = std::max(right.error, jump);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++bisections;
    }
    // Re-sum to avoid drift from the running updates.
    total = 0.0;
    total_err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    if (total_err > spec.target(total))
        throw ConvergenceError("adaptive Gauss-Kronrod quadrature did not converge", total, total_err);
    res.value = total;
    res.error = total_err;
    return res;
}

QuadResult integrate_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec)
{
    if (a == b) return {};
    if (a > b) {
        QuadResult r = integrate_finite(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    return tanh_sinh(f, a, b, spec);
}

namespace {

// x = lower + scale * map(v, 1 - v) on v in [0, 1). The half v >= 1/2 is integrated in
// w = 1 - v so that both the finite end and the point at infinity are resolved in doubles.
template <class Map, class Jac>
QuadResult mapped_rule(Map map, Jac jac, const Integrand& f, double lower, double scale, const QuadratureSpec& spec)
{
    auto g = [&](double v, double w) {
        const double x = lower + scale * map(v, w);
        return std::isfinite(x) ? f(x) * scale * jac(v, w) : 0.0;
    };
    QuadResult half[2];
    bool failed = false;
    for (int i = 0; i < 2; ++i) {
        auto h = [&](double u) { return i == 0 ? g(u, 1.0 - u) : g(1.0 - u, u); };
        try {
            half[i] = integrate_adaptive_gk(h, 0.0, 0.5, spec);
        } catch (const ConvergenceError& e) {
            half[i] = {e.best_estimate(), e.achieved_error(), 0};
            failed = true;
        }
    }
    const QuadResult sum{half[0].value + half[1].value, half[0].error + half[1].error,
                         half[0].evaluations + half[1].evaluations};
    if (failed)
        throw ConvergenceError("mapped Gauss-Kronrod rule did not reach the tolerance", sum.value, sum.error);
    return sum;
}

} // namespace

QuadResult integrate_semi_infinite(const Integrand& f, const QuadratureSpec& spec, double lower, double scale)
{
    spec.validate();
    if (!(scale > 0.0)) throw DomainError("integration scale must be positive");
    switch (spec.transform) {
    case Transform::double_exponential:
        return exp_sinh(f, lower, scale, spec);
    case Transform::none:
        return mapped_rule([&](double v, double w) { return v / w; }, [](double, double w) { return 1.0 / (w * w); },
                           f, lower, scale, spec);
    case Transform::exp_substitution:
        return mapped_rule([](double v, double w) { return v < 0.5 ? -std::log1p(-v) : -std::log(w); },
                           [](double, double w) { return 1.0 / w; }, f, lower, scale, spec);
    }
    throw DomainError("unknown quadrature transform");
}

namespace {

QuadResult combine(const QuadResult& a, const QuadResult& b)
{
    return {a.value + b.value, a.error + b.error, a.evaluations + b.evaluations};
}

QuadResult integrate_piece(const Integrand& f, double a, double b, const QuadratureSpec& spec)
{
    if (spec.transform == Transform::double_exponential) return integrate_finite(f, a, b, spec);
    return integrate_adaptive_gk(f, a, b, spec);
}

void check_time(double t)
{
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
}

} // namespace

QuadResult subordinate_massless(const SubordinationInput& in, const QuadratureSpec& spec)
{
    check_time(in.t);
    const double t = in.t;
    const double norm = 1.0 / std::sqrt(pi);
    auto g = [&](double u) {
        const double w = norm * std::exp(-u) / std::sqrt(u);
        if (w == 0.0) return 0.0;
        return w * in.base_kernel(t * t / (4.0 * u));
    };
    return integrate_semi_infinite(g, spec);
}

QuadResult subordinate_massive(const SubordinationInput& in, const QuadratureSpec& spec)
{
    check_time(in.t);
    if (!(in.mass >= 0.0) || !std::isfinite(in.mass)) throw DomainError("mass must be non-negative");
    if (in.mass == 0.0) return subordinate_massless(in, spec);

    const double t = in.t;
    const double c = 0.5 * in.mass * t; // peak of the weight in u
    const double norm = 1.0 / std::sqrt(pi);
    auto g = [&](double u) {
        const double q = std::sqrt(u);
        const double d = q - c / q;
        const double w = norm * std::exp(-d * d) / q;
        if (w == 0.0) return 0.0;
        return w * in.base_kernel(t * t / (4.0 * u));
    };
    if (c <= 1.0) return integrate_semi_infinite(g, spec);
    return combine(integrate_piece(g, 0.0, c, spec), integrate_semi_infinite(g, spec, c, std::sqrt(c)));
}

QuadResult substituted_moment(double a, double mass, double t, const QuadratureSpec& spec)
{
    if (!(a > 0.0)) throw DomainError("moment order a must be positive");
    if (!(mass >= 0.0)) throw DomainError("mass must be non-negative");
    check_time(t);
    auto f = [=](double r) {
        const double d = r - mass / (2.0 * r);
        return std::pow(r, a) * std::exp(-t * d * d);
    };
    const double width = 1.0 / std::sqrt(t);
    if (mass == 0.0) return integrate_semi_infinite(f, spec, 0.0, width);
    const double peak = std::sqrt(0.5 * mass);
    return combine(integrate_piece(f, 0.0, peak, spec), integrate_semi_infinite(f, spec, peak, width));
}

double free_heat_kernel(double d, double s)
{
    check_time(s);
    return std::exp(-d * d / (4.0 * s)) / (4.0 * pi * s);
}

double free_relativistic_kernel(double d, double t)
{
    check_time(t);
    const double q = t * t + d * d;
    return t / (2.0 * pi * q * std::sqrt(q));
}

} // namespace relkernel::quad

#pragma once

#include <cmath>
#include <functional>
#include <random>

namespace oracle {

/// Composite Simpson rule with n (even) panels; independent of the library quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n)
{
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// Midpoint rule; spectrally accurate for smooth periodic integrands over a full period.
inline double midpoint(const std::function<double(double)>& f, double a, double b, int n)
{
    const double h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f(a + (i + 0.5) * h);
    return s * h;
}

/// Seeded generator for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(unsigned long long seed) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
};

// Relative difference; absolute when the reference is exactly zero.
inline double rel(double got, double want) { return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want); }

} // namespace oracle

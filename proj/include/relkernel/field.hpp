#pragma once

#include "relkernel/geometry.hpp"

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace relkernel::field {

enum class FieldKind { zero, step, gaussian_truncated, aharonov_bohm, table };

/// A radial magnetic field B(r). Every kind except aharonov_bohm is compactly
/// supported on [0, R] and continuous apart from the jump of the step profile.
class FieldProfile {
public:
    static FieldProfile zero();
    /// B = B0 on r <= R.
    static FieldProfile step(double b0, double radius);
    /// B = B0 (exp(-r^2/2 sigma^2) - exp(-R^2/2 sigma^2)) on r < R.
    static FieldProfile gaussian_truncated(double b0, double sigma, double radius);
    /// Point flux alpha at the origin; no B(r) is attached.
    static FieldProfile aharonov_bohm(double alpha);
    /// Linear interpolation through (r, B) nodes with increasing r. The last
    /// node's value is replaced by 0, so R is the last radius.
    static FieldProfile table(std::vector<std::pair<double, double>> nodes);
    /// Two-column CSV (r, B); '#' lines and a non-numeric header are skipped.
    static FieldProfile table_from_csv(const std::string& path);

    FieldKind kind() const noexcept { return kind_; }
    /// B(r); throws DomainError for aharonov_bohm.
    double field_at(double r) const;
    /// R for compactly supported kinds, 0 for zero and aharonov_bohm.
    double support_radius() const noexcept { return radius_; }
    /// Stored flux of an aharonov_bohm profile.
    double ab_alpha() const;
    std::string describe() const;

    double b0() const noexcept { return b0_; }
    double sigma() const noexcept { return sigma_; }
    const std::vector<std::pair<double, double>>& nodes() const noexcept { return nodes_; }

private:
    FieldKind kind_ = FieldKind::zero;
    double b0_ = 0.0;
    double sigma_ = 0.0;
    double radius_ = 0.0;
    double alpha_ = 0.0;
    std::vector<std::pair<double, double>> nodes_;
};

/// Flux quantities derived from a profile.
struct FluxData {
    double alpha = 0.0;
    double kappa = 0.0;
    double eps0 = 0.5;
    /// a(0+): 0 for regular fields, alpha for the point flux.
    double origin_flux = 0.0;
    bool point_flux = false;
    /// R; 0 when a(r) is constant (zero field and point flux).
    double support_radius = 0.0;
    /// a(r) = int_0^r B(rho) rho drho (alpha for r >= R).
    std::function<double(double)> flux_fn;
};

/// int_0^inf B(r) r dr; DomainError for aharonov_bohm.
double flux_alpha(const FieldProfile& profile);

/// min over integers n of |n + alpha|.
double kappa_of(double alpha);

/// min{ |m + alpha| - 3/2 : m integer, |m + alpha| > 3/2 }.
double eps0_of(double alpha);

/// Precomputes the flux function on a cumulative grid (cubic Hermite between
/// nodes, using a' = B r).
FluxData make_flux_data(const FieldProfile& profile);

/// A(x) = (-x2, x1)/|x|^2 a(|x|). Zero at the origin for regular fields,
/// DomainError there for aharonov_bohm.
Vec2 poincare_gauge_at(const FluxData& flux, const Vec2& x);
Vec2 poincare_gauge_at(const FieldProfile& profile, const Vec2& x);

} // namespace relkernel::field

#include "relkernel/field.hpp"

#include "relkernel/errors.hpp"
#include "relkernel/quad.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

namespace relkernel::field {

namespace {

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_radius(double r)
{
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("field support radius must be positive and finite");
}

} // namespace

FieldProfile FieldProfile::zero() { return {}; }

FieldProfile FieldProfile::step(double b0, double radius)
{
    require_finite(b0, "B0");
    require_radius(radius);
    FieldProfile p;
    p.kind_ = FieldKind::step;
    p.b0_ = b0;
    p.radius_ = radius;
    return p;
}

FieldProfile FieldProfile::gaussian_truncated(double b0, double sigma, double radius)
{
    require_finite(b0, "B0");
    require_radius(radius);
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be positive and finite");
    FieldProfile p;
    p.kind_ = FieldKind::gaussian_truncated;
    p.b0_ = b0;
    p.sigma_ = sigma;
    p.radius_ = radius;
    return p;
}

FieldProfile FieldProfile::aharonov_bohm(double alpha)
{
    require_finite(alpha, "alpha");
    FieldProfile p;
    p.kind_ = FieldKind::aharonov_bohm;
    p.alpha_ = alpha;
    return p;
}

FieldProfile FieldProfile::table(std::vector<std::pair<double, double>> nodes)
{
    if (nodes.size() < 2) throw DomainError("table profile needs at least two nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        require_finite(nodes[i].first, "table radius");
        require_finite(nodes[i].second, "table value");
        if (nodes[i].first < 0.0) throw DomainError("table radii must be non-negative");
        if (i > 0 && !(nodes[i].first > nodes[i - 1].first))
            throw DomainError("table radii must be strictly increasing");
    }
    nodes.back().second = 0.0;
    FieldProfile p;
    p.kind_ = FieldKind::table;
    p.radius_ = nodes.back().first;
    require_radius(p.radius_);
    p.nodes_ = std::move(nodes);
    return p;
}

FieldProfile FieldProfile::table_from_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open table file " + path);
    std::vector<std::pair<double, double>> nodes;
    std::string line;
    int lineno = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double r = 0.0;
        double b = 0.0;
        if (!(ss >> r >> b)) {
            if (std::exchange(header_allowed, false)) continue;
            throw DomainError(path + ":" + std::to_string(lineno) + ": expected two numbers (r, B)");
        }
        header_allowed = false;
        nodes.emplace_back(r, b);
    }
    return table(std::move(nodes));
}

double FieldProfile::field_at(double r) const
{
    if (r < 0.0) throw DomainError("radius must be non-negative");
    switch (kind_) {
    case FieldKind::zero:
        return 0.0;
    case FieldKind::aharonov_bohm:
        throw DomainError("aharonov_bohm profile has no regular field");
    case FieldKind::step:
        return r <= radius_ ? b0_ : 0.0;
    case FieldKind::gaussian_truncated: {
        if (r >= radius_) return 0.0;
        const double s2 = 2.0 * sigma_ * sigma_;
        return b0_ * (std::exp(-r * r / s2) - std::exp(-radius_ * radius_ / s2));
    }
    case FieldKind::table: {
        if (r >= radius_) return 0.0;
        if (r <= nodes_.front().first) return nodes_.front().second;
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r,
                                         [](double v, const auto& n) { return v < n.first; });
        const auto& [r1, b1] = *it;
        const auto& [r0, b0] = *(it - 1);
        return b0 + (b1 - b0) * (r - r0) / (r1 - r0);
    }
    }
    return 0.0;
}

double FieldProfile::ab_alpha() const
{
    if (kind_ != FieldKind::aharonov_bohm) throw DomainError("ab_alpha is only defined for aharonov_bohm profiles");
    return alpha_;
}

std::string FieldProfile::describe() const
{
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case FieldKind::zero: os << "zero"; break;
    case FieldKind::step: os << "step(B0=" << b0_ << ", R=" << radius_ << ")"; break;
    case FieldKind::gaussian_truncated:
        os << "gaussian_truncated(B0=" << b0_ << ", sigma=" << sigma_ << ", R=" << radius_ << ")";
        break;
    case FieldKind::aharonov_bohm: os << "aharonov_bohm(alpha=" << alpha_ << ")"; break;
    case FieldKind::table: os << "table(" << nodes_.size() << " nodes, R=" << radius_ << ")"; break;
    }
    return os.str();
}

namespace {

struct FluxTable {
    std::vector<double> r;
    std::vector<double> a;
    std::vector<double> da;
    double alpha = 0.0;

    double operator()(double x) const
    {
        if (x <= 0.0) return 0.0;
        if (x >= r.back()) return alpha;
        const auto it = std::upper_bound(r.begin(), r.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
        const double h = r[i + 1] - r[i];
        const double s = (x - r[i]) / h;
        const double s2 = s * s;
        const double s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * a[i] + (s3 - 2 * s2 + s) * h * da[i] + (-2 * s3 + 3 * s2) * a[i + 1] +
               (s3 - s2) * h * da[i + 1];
    }
};

constexpr int kFluxCells = 4096;

std::shared_ptr<FluxTable> build_flux_table(const FieldProfile& p)
{
    const double radius = p.support_radius();
    std::vector<double> grid;
    for (int i = 0; i <= kFluxCells; ++i) grid.push_back(radius * i / kFluxCells);
    for (const auto& n : p.nodes()) grid.push_back(n.first);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto table = std::make_shared<FluxTable>();
    table->r = grid;
    table->a.assign(grid.size(), 0.0);
    table->da.assign(grid.size(), 0.0);
    auto integrand = [&](double r) { return p.field_at(r) * r; };
    for (std::size_t i = 1; i < grid.size(); ++i) {
        table->a[i] = table->a[i - 1] + quad::gauss_kronrod_21(integrand, grid[i - 1], grid[i]).value;
        table->da[i] = integrand(grid[i]);
    }
    if (p.kind() == FieldKind::step) {
        for (std::size_t i = 0; i < grid.size(); ++i) table->a[i] = 0.5 * p.b0() * grid[i] * grid[i];
    }
    table->alpha = table->a.back();
    return table;
}

} // namespace

double flux_alpha(const FieldProfile& profile)
{
    switch (profile.kind()) {
    case FieldKind::zero: return 0.0;
    case FieldKind::aharonov_bohm:
        throw DomainError("flux_alpha is not defined for aharonov_bohm profiles; the flux is a stored parameter");
    case FieldKind::step: {
        const double r = profile.support_radius();
        return 0.5 * profile.b0() * r * r;
    }
    default:
        return build_flux_table(profile)->alpha;
    }
}

double kappa_of(double alpha)
{
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    return std::abs(alpha - std::round(alpha));
}

double eps0_of(double alpha)
{
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    const double base = std::floor(-alpha);
    double best = std::numeric_limits<double>::infinity();
    for (int k = -4; k <= 5; ++k) {
        const double v = std::abs(base + k + alpha);
        if (v > 1.5) best = std::min(best, v - 1.5);
    }
    return best;
}

FluxData make_flux_data(const FieldProfile& profile)
{
    FluxData d;
    switch (profile.kind()) {
    case FieldKind::zero:
        d.flux_fn = [](double) { return 0.0; };
        break;
    case FieldKind::aharonov_bohm: {
        const double a = profile.ab_alpha();
        d.alpha = a;
        d.origin_flux = a;
        d.point_flux = true;
        d.flux_fn = [a](double) { return a; };
        break;
    }
    default: {
        auto table = build_flux_table(profile);
        d.alpha = profile.kind() == FieldKind::step ? flux_alpha(profile) : table->alpha;
        table->alpha = d.alpha;
        d.flux_fn = [table](double r) { return (*table)(r); };
        d.support_radius = profile.support_radius();
        break;
    }
    }
    d.kappa = kappa_of(d.alpha);
    d.eps0 = eps0_of(d.alpha);
    return d;
}

Vec2 poincare_gauge_at(const FluxData& flux, const Vec2& x)
{
    const double r2 = x.x1 * x.x1 + x.x2 * x.x2;
    if (r2 == 0.0) {
        if (flux.point_flux) throw DomainError("vector potential is singular at the origin");
        return {};
    }
    const double a = flux.flux_fn(std::sqrt(r2)) / r2;
    return {-x.x2 * a, x.x1 * a};
}

Vec2 poincare_gauge_at(const FieldProfile& profile, const Vec2& x)
{
    return poincare_gauge_at(make_flux_data(profile), x);
}

} // namespace relkernel::field

#include "relkernel/radial_solver.hpp"

#include "relkernel/errors.hpp"
#include "relkernel/specfun.hpp"

#include <lapacke.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <unordered_map>

namespace relkernel::radial {

using std::numbers::pi;

RadialGrid::RadialGrid(std::vector<double> faces) : faces_(std::move(faces))
{
    centers_.reserve(faces_.size() - 1);
    for (std::size_t j = 0; j + 1 < faces_.size(); ++j) centers_.push_back(0.5 * (faces_[j] + faces_[j + 1]));
}

RadialGrid RadialGrid::uniform(double r_max, int n)
{
    if (!(r_max > 0.0) || !std::isfinite(r_max)) throw DomainError("grid r_max must be positive and finite");
    if (n < 16) throw DomainError("grid needs at least 16 cells");
    std::vector<double> faces(n + 1);
    for (int j = 0; j <= n; ++j) faces[j] = r_max * j / n;
    return RadialGrid(std::move(faces));
}

RadialGrid RadialGrid::stretched(double h0, double growth, double r_max)
{
    if (!(h0 > 0.0) || !(growth >= 0.0) || !(r_max > 0.0) || !std::isfinite(r_max))
        throw DomainError("stretched grid needs h0 > 0, growth >= 0 and finite r_max > 0");
    std::vector<double> faces{0.0};
    while (faces.back() < r_max) faces.push_back(faces.back() + std::max(h0, growth * faces.back()));
    const std::size_t n = faces.size() - 1;
    // Fold a short last cell into its neighbour.
    if (n >= 2 && r_max - faces[n - 1] < 0.5 * (faces[n] - faces[n - 1])) faces.pop_back();
    faces.back() = r_max;
    if (faces.size() < 17) throw DomainError("grid needs at least 16 cells");
    return RadialGrid(std::move(faces));
}

double partial_wave_potential(int mode, const field::FluxData& flux, double r)
{
    if (!(r > 0.0)) throw DomainError("potential is evaluated at r > 0");
    const double v = mode + flux.flux_fn(r);
    return (v * v - 0.25) / (r * r);
}

namespace {

double origin_order(int mode, const field::FluxData& flux) { return std::abs(mode + flux.origin_flux); }

} // namespace

DiscreteOperator build_operator(int mode, const field::FluxData& flux, const RadialGrid& grid)
{
    const int n = grid.size();
    if (n < 16) throw DomainError("grid needs at least 16 cells");
    const auto& f = grid.faces();
    const auto& c = grid.centers();
    const double nu0 = origin_order(mode, flux);
    const double a0 = flux.origin_flux;
    const double p = 2.0 * nu0 + 1.0;
    const double e = p + 1.0;

    DiscreteOperator op;
    op.mode = mode;
    op.nu0 = nu0;
    op.log_mass.resize(n);
    for (int j = 0; j < n; ++j) {
        const double ratio = f[j] / f[j + 1];
        op.log_mass[j] = e * std::log(f[j + 1]) + std::log1p(-std::pow(ratio, e)) - std::log(e);
    }
    // log of r^{2 nu0 + 1} / dr at faces 1..n; face n couples to the wall.
    std::vector<double> log_face(n + 1, -std::numeric_limits<double>::infinity());
    for (int k = 1; k < n; ++k) log_face[k] = p * std::log(f[k]) - std::log(c[k] - c[k - 1]);
    log_face[n] = p * std::log(f[n]) - std::log(f[n] - c[n - 1]);

    op.diag.resize(n);
    op.offdiag.resize(n - 1);
    for (int j = 0; j < n; ++j) {
        const double a = flux.flux_fn(c[j]);
        const double centrifugal = (a - a0) * (2.0 * mode + a + a0) / (c[j] * c[j]);
        double d = std::exp(log_face[j + 1] - op.log_mass[j]) + centrifugal;
        if (j > 0) d += std::exp(log_face[j] - op.log_mass[j]);
        op.diag[j] = d;
        if (j + 1 < n) op.offdiag[j] = -std::exp(log_face[j + 1] - 0.5 * (op.log_mass[j] + op.log_mass[j + 1]));
    }
    return op;
}

ModeSpectrum diagonalize(const DiscreteOperator& op, const RadialGrid& grid)
{
    if (static_cast<int>(op.diag.size()) != grid.size()) throw DomainError("operator and grid sizes differ");
    const lapack_int n = static_cast<lapack_int>(op.diag.size());
    std::vector<double> d = op.diag;
    std::vector<double> e = op.offdiag;
    e.resize(std::max<lapack_int>(n, 1));
    ModeSpectrum s;
    s.mode = op.mode;
    s.nu0 = op.nu0;
    s.eigenvalues.resize(n);
    s.eigenvectors.resize(n, n);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
    lapack_int found = 0;
    const lapack_int info =
        LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, 0.0, &found,
                       s.eigenvalues.data(), s.eigenvectors.data(), n, support.data());
    if (info != 0 || found != n)
        throw LinearAlgebraError("tridiagonal eigensolver failed (info = " + std::to_string(info) + ")");

    s.node_scale.resize(n);
    s.node_weight.resize(n);
    const auto& c = grid.centers();
    for (lapack_int i = 0; i < n; ++i) {
        const double lr = std::log(c[i]);
        s.node_scale[i] = std::exp(op.nu0 * lr - 0.5 * op.log_mass[i]);
        s.node_weight[i] = std::exp(op.log_mass[i] - 2.0 * op.nu0 * lr);
    }
    return s;
}

Eigen::VectorXd ModeSpectrum::profile(const RadialGrid& grid, double r) const
{
    const int n = grid.size();
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    if (!(r >= 0.0) || r >= grid.r_max()) throw DomainError("evaluation radius must lie in [0, r_max)");
    if (r == 0.0 && nu0 > 0.0) return v;

    const auto& c = grid.centers();
    const int idx = static_cast<int>(std::upper_bound(c.begin(), c.end(), r) - c.begin()) - 1;
    const int i0 = std::clamp(idx - 1, 0, n - 4);
    const double lr = r > 0.0 ? std::log(r) : 0.0;
    for (int j = 0; j < 4; ++j) {
        double weight = 1.0;
        for (int k = 0; k < 4; ++k)
            if (k != j) weight *= (r - c[i0 + k]) / (c[i0 + j] - c[i0 + k]);
        if (weight == 0.0) continue;
        // r^{nu0} g_i with g_i = node_scale_i phi_i / r_i^{nu0}
        const double ratio = nu0 > 0.0 ? std::exp(nu0 * (lr - std::log(c[i0 + j]))) : 1.0;
        const double factor = weight * node_scale[i0 + j] * ratio;
        v += factor * eigenvectors.row(i0 + j).transpose();
    }
    return v;
}

ModeKernel mode_heat_kernel(const ModeSpectrum& spectrum, double t)
{
    if (!(t > 0.0)) throw DomainError("time must be positive");
    Eigen::MatrixXd b = spectrum.eigenvectors;
    for (Eigen::Index k = 0; k < b.cols(); ++k) b.col(k) *= std::exp(-0.5 * t * spectrum.eigenvalues[k]);
    b = spectrum.node_scale.asDiagonal() * b;
    ModeKernel mk;
    mk.mode = spectrum.mode;
    mk.t = t;
    mk.matrix = b * b.transpose();
    mk.weights = spectrum.node_weight;
    return mk;
}

double free_mode_tail(double r, double rp, double s, int cutoff, int shift)
{
    if (!(s > 0.0)) throw DomainError("time must be positive");
    const double x = r * rp / (2.0 * s);
    const double pref = std::exp(-(r - rp) * (r - rp) / (4.0 * s)) / (4.0 * pi * s);
    double sum = 0.0;
    for (int m = cutoff + 1;; ++m) {
        const double term = 2.0 * specfun::bessel_i_scaled(std::max(0, m - shift), x);
        sum += term;
        if (term == 0.0 || (m - shift > 0 && term < 1e-17 * sum)) break;
    }
    return pref * sum;
}

RadialSolver::RadialSolver(field::FluxData flux, RadialGrid grid, SolverOptions options)
    : flux_(std::move(flux)), grid_(std::move(grid)), options_(options)
{
    if (options_.mode_cutoff < 0 || options_.max_modes < 1) throw DomainError("invalid mode cutoff settings");
    if (!(options_.tail_rel_tol > 0.0)) throw DomainError("tail tolerance must be positive");
    double amax = std::max(std::abs(flux_.alpha), std::abs(flux_.origin_flux));
    const double support = flux_.support_radius;
    for (int i = 1; i <= 1000 && support > 0.0; ++i) amax = std::max(amax, std::abs(flux_.flux_fn(support * i / 1000.0)));
    tail_shift_ = static_cast<int>(std::ceil(amax));
}

std::shared_ptr<const ModeSpectrum> RadialSolver::spectrum(int mode) const
{
    // With a constant flux function the operator depends on m only through nu0.
    const long long key = flux_.support_radius == 0.0
                              ? (1LL << 40) + std::llround(origin_order(mode, flux_) * 1e6)
                              : static_cast<long long>(mode);
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto s = std::make_shared<ModeSpectrum>(diagonalize(build_operator(mode, flux_, grid_), grid_));
    std::lock_guard lock(mutex_);
    return cache_.emplace(key, std::move(s)).first->second;
}

void RadialSolver::prepare_modes(int cutoff) const
{
    std::vector<int> modes;
    for (int k = 0; k <= cutoff; ++k) {
        modes.push_back(-k);
        if (k > 0) modes.push_back(k);
    }
    const int workers = std::max(1, std::min<int>(options_.threads, static_cast<int>(modes.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < modes.size(); i = next++) spectrum(modes[i]);
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

double RadialSolver::mode_kernel(int mode, double r, double rp, double s) const
{
    if (!(s > 0.0)) throw DomainError("time must be positive");
    const auto sp = spectrum(mode);
    const Eigen::VectorXd v = sp->profile(grid_, r);
    const Eigen::VectorXd w = sp->profile(grid_, rp);
    return (v.array() * w.array() * (-s * sp->eigenvalues.array()).exp()).sum();
}

int RadialSolver::auto_cutoff(double r, double rp, double s) const
{
    const double x = r * rp / (2.0 * s);
    // Scaled free mode weights; they sum to 1 over all m when shift = 0.
    std::vector<double> q;
    for (int m = 0; m <= options_.max_modes + 1; ++m) {
        q.push_back(specfun::bessel_i_scaled(std::max(0, m - tail_shift_), x));
        if (m > tail_shift_ && q.back() < 1e-3 * options_.tail_rel_tol) break;
    }
    double tail = 0.0;
    int cutoff = static_cast<int>(q.size()) - 1;
    for (int m = cutoff; m >= 1; --m) {
        if (tail + 2.0 * q[m] > options_.tail_rel_tol) break;
        tail += 2.0 * q[m];
        cutoff = m - 1;
    }
    return std::clamp(cutoff, 1, options_.max_modes);
}

namespace {

std::vector<int> mode_order(int cutoff)
{
    std::vector<int> out{0};
    for (int k = 1; k <= cutoff; ++k) {
        out.push_back(-k);
        out.push_back(k);
    }
    return out;
}

} // namespace

KernelValue RadialSolver::assemble_2d_kernel(const Vec2& x, const Vec2& y, double s, int cutoff) const
{
    if (!(s > 0.0)) throw DomainError("time must be positive");
    const double r = x.norm();
    const double rp = y.norm();
    const double dtheta = angle_difference(x, y);
    const bool automatic = cutoff <= 0 && options_.mode_cutoff <= 0;
    const int m_cut = cutoff > 0 ? cutoff : (options_.mode_cutoff > 0 ? options_.mode_cutoff : auto_cutoff(r, rp, s));

    double re = 0.0;
    double im = 0.0;
    for (int m : mode_order(m_cut)) {
        const double p = mode_kernel(m, r, rp, s);
        re += std::cos(m * dtheta) * p;
        im += std::sin(m * dtheta) * p;
    }
    KernelValue out;
    out.value = {re / (2.0 * pi), im / (2.0 * pi)};
    out.modes = m_cut;
    out.error = free_mode_tail(r, rp, s, m_cut, tail_shift_);
    const double free_scale = std::exp(-(r - rp) * (r - rp) / (4.0 * s)) / (4.0 * pi * s);
    out.cutoff_warning = out.error > options_.tail_rel_tol * free_scale * (automatic ? 1.0 : 1e3);
    return out;
}

KernelValue RadialSolver::relativistic_kernel(const Vec2& x, const Vec2& y, double t, double mass,
                                              const quad::QuadratureSpec& spec) const
{
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
    if (!(mass >= 0.0) || !std::isfinite(mass)) throw DomainError("mass must be non-negative");
    spec.validate();
    const double r = x.norm();
    const double rp = y.norm();
    const double dtheta = angle_difference(x, y);
    const int fixed = options_.mode_cutoff;

    struct ModeTerm {
        int mode;
        std::shared_ptr<const ModeSpectrum> spectrum;
        Eigen::VectorXd coef;
    };
    std::vector<ModeTerm> terms;
    auto ensure = [&](int cutoff) {
        const std::vector<int> order = mode_order(cutoff);
        for (std::size_t i = terms.size(); i < order.size(); ++i) {
            auto sp = spectrum(order[i]);
            Eigen::VectorXd coef = sp->profile(grid_, r).cwiseProduct(sp->profile(grid_, rp));
            terms.push_back({order[i], std::move(sp), std::move(coef)});
        }
    };

    const double skip = 1e-3 * spec.abs_tol;
    const double c = 0.5 * mass * t;
    double worst_tail = 0.0;
    int max_modes = 0;
    bool warned = false;
    std::unordered_map<double, std::complex<double>> memo;
    auto heat = [&](double s) -> std::complex<double> {
        const auto hit = memo.find(s);
        if (hit != memo.end()) return hit->second;
        const double u = t * t / (4.0 * s);
        const double q = std::sqrt(u);
        const double d = q - c / q;
        const double weight = std::exp(-d * d) / (q * std::sqrt(pi));
        std::complex<double> k{0.0, 0.0};
        if (weight / (4.0 * pi * s) >= skip) {
            const int m_cut = fixed > 0 ? fixed : auto_cutoff(r, rp, s);
            ensure(m_cut);
            double re = 0.0;
            double im = 0.0;
            for (std::size_t i = 0; i < 2 * static_cast<std::size_t>(m_cut) + 1; ++i) {
                const ModeTerm& term = terms[i];
                const double p = (term.coef.array() * (-s * term.spectrum->eigenvalues.array()).exp()).sum();
                re += std::cos(term.mode * dtheta) * p;
                im += std::sin(term.mode * dtheta) * p;
            }
            k = {re / (2.0 * pi), im / (2.0 * pi)};
            const double tail = free_mode_tail(r, rp, s, m_cut, tail_shift_);
            const double free_scale = std::exp(-(r - rp) * (r - rp) / (4.0 * s)) / (4.0 * pi * s);
            worst_tail = std::max(worst_tail, tail / free_scale);
            max_modes = std::max(max_modes, m_cut);
            if (fixed <= 0 && tail > options_.tail_rel_tol * free_scale) warned = true;
        }
        memo.emplace(s, k);
        return k;
    };

    quad::SubordinationInput in;
    in.t = t;
    in.mass = mass;
    in.base_kernel = [&](double s) { return heat(s).real(); };
    const quad::QuadResult re = quad::subordinate_massive(in, spec);
    quad::QuadResult im;
    const bool real_only = dtheta == 0.0 || std::abs(dtheta) == pi || (r == 0.0 || rp == 0.0);
    if (!real_only) {
        in.base_kernel = [&](double s) { return heat(s).imag(); };
        im = quad::subordinate_massive(in, spec);
    }

    // Part of the subordination integral where the wall at r_max is felt,
    // bounded with the free diagonal kernel.
    const double gap = grid_.r_max() - std::max(r, rp);
    const double s_wall = gap * gap / 144.0;
    const double u_wall = t * t / (4.0 * s_wall);
    const double wall = 2.0 / 3.0 * std::pow(u_wall, 1.5) / (std::pow(pi, 1.5) * t * t);

    KernelValue out;
    out.value = {re.value, im.value};
    out.error = re.error + im.error + wall + worst_tail * quad::free_relativistic_kernel(std::abs(r - rp), t);
    out.modes = max_modes;
    out.cutoff_warning = warned;
    return out;
}

} // namespace relkernel::radial

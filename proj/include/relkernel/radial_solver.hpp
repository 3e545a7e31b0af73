#pragma once

#include "relkernel/field.hpp"
#include "relkernel/geometry.hpp"
#include "relkernel/quad.hpp"

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace relkernel::radial {

/// Cell-centred radial grid on [0, r_max]. Unknowns live at cell centres,
/// the Dirichlet wall is the last face.
class RadialGrid {
public:
    /// n cells of width r_max / n.
    static RadialGrid uniform(double r_max, int n);
    /// Cell widths max(h0, growth * r): uniform near the origin, geometric further out.
    /// The last cell is stretched so the final face is exactly r_max.
    static RadialGrid stretched(double h0, double growth, double r_max);

    int size() const noexcept { return static_cast<int>(centers_.size()); }
    double r_max() const noexcept { return faces_.back(); }
    const std::vector<double>& faces() const noexcept { return faces_; }
    const std::vector<double>& centers() const noexcept { return centers_; }

private:
    explicit RadialGrid(std::vector<double> faces);
    std::vector<double> faces_;
    std::vector<double> centers_;
};

/// ((m + a(r))^2 - 1/4) / r^2, the potential of the half-line operator after
/// the substitution f = sqrt(r) u.
double partial_wave_potential(int mode, const field::FluxData& flux, double r);

/// Symmetric tridiagonal discretization of one partial wave.
///
/// With nu0 = |m + a(0+)| and f = r^{nu0} g, the form
///   int r^{2 nu0 + 1} ( g'^2 + ((m + a)^2 - nu0^2)/r^2 g^2 ) dr
/// is discretized by finite volumes and symmetrized with the cell masses
/// M_j = int_cell r^{2 nu0 + 1} dr (kept as logarithms).
struct DiscreteOperator {
    int mode = 0;
    double nu0 = 0.0;
    std::vector<double> diag;
    std::vector<double> offdiag;
    std::vector<double> log_mass;
};

/// Throws DomainError for grids with fewer than 16 cells.
DiscreteOperator build_operator(int mode, const field::FluxData& flux, const RadialGrid& grid);

/// Eigen-decomposition of one discrete partial wave.
struct ModeSpectrum {
    int mode = 0;
    double nu0 = 0.0;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    /// c_i with p(r_i, r_j, s) = c_i c_j sum_k e^{-s lambda_k} phi_ik phi_jk.
    Eigen::VectorXd node_scale;
    /// Quadrature weights of r dr at the nodes that make the discrete semigroup exact.
    Eigen::VectorXd node_weight;

    /// Coefficients v_k(r) with p(r, r', s) = sum_k e^{-s lambda_k} v_k(r) v_k(r').
    /// Off-node radii use 4-point Lagrange interpolation of g = r^{-nu0} f.
    Eigen::VectorXd profile(const RadialGrid& grid, double r) const;
};

/// Throws LinearAlgebraError if the eigensolver fails.
ModeSpectrum diagonalize(const DiscreteOperator& op, const RadialGrid& grid);

/// Values of e^{-t h_m}(r_i, r_j) against r dr at all grid nodes.
struct ModeKernel {
    int mode = 0;
    double t = 0.0;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd weights;
};

ModeKernel mode_heat_kernel(const ModeSpectrum& spectrum, double t);

/// (1/2pi) sum_{|m| > cutoff} of free partial-wave heat kernels with orders
/// lowered by `shift`, an estimate of the truncation error of a mode sum.
double free_mode_tail(double r, double rp, double s, int cutoff, int shift = 0);

struct SolverOptions {
    /// Fixed mode cutoff M; 0 picks the smallest M whose tail estimate is below tolerance.
    int mode_cutoff = 0;
    int max_modes = 400;
    /// Tail tolerance relative to the free heat kernel at the same points.
    double tail_rel_tol = 1e-10;
    /// Worker threads used when a batch of spectra is computed.
    int threads = 1;
};

struct KernelValue {
    std::complex<double> value;
    double error = 0.0;
    int modes = 0;
    bool cutoff_warning = false;
};

/// Heat and relativistic kernels of a radial field from cached partial-wave spectra.
/// Safe to share between threads.
class RadialSolver {
public:
    RadialSolver(field::FluxData flux, RadialGrid grid, SolverOptions options = {});

    const field::FluxData& flux() const noexcept { return flux_; }
    const RadialGrid& grid() const noexcept { return grid_; }
    const SolverOptions& options() const noexcept { return options_; }

    std::shared_ptr<const ModeSpectrum> spectrum(int mode) const;
    /// Computes spectra of all |m| <= cutoff, in parallel when options().threads > 1.
    void prepare_modes(int cutoff) const;

    /// e^{-s h_m}(r, r') against r dr.
    double mode_kernel(int mode, double r, double rp, double s) const;

    /// (1/2pi) sum_{|m| <= M} e^{i m (theta - theta')} p_m(r, r', s), summed in the
    /// order 0, -1, 1, -2, 2, ...; `cutoff` overrides options().mode_cutoff when positive.
    KernelValue assemble_2d_kernel(const Vec2& x, const Vec2& y, double s, int cutoff = 0) const;

    /// Kernel of e^{-t (sqrt(H + m^2) - m)} by subordination of assemble_2d_kernel.
    KernelValue relativistic_kernel(const Vec2& x, const Vec2& y, double t, double mass,
                                    const quad::QuadratureSpec& spec = {}) const;

private:
    int tail_shift() const noexcept { return tail_shift_; }
    int auto_cutoff(double r, double rp, double s) const;

    field::FluxData flux_;
    RadialGrid grid_;
    SolverOptions options_;
    int tail_shift_ = 0;
    mutable std::mutex mutex_;
    mutable std::map<long long, std::shared_ptr<const ModeSpectrum>> cache_;
};

} // namespace relkernel::radial

#pragma once

#include <complex>
#include <vector>

#include "peterlin/grid.hpp"

// Opaque FFTW handles; the header stays clean of fftw3.h.
struct fftw_plan_s;

namespace peterlin {

/// Fourier coefficients of a real field, r2c half-spectrum layout:
/// index = iy*(nx/2+1) + ikx with ikx in [0, nx/2], iy in [0, ny).
using Spectrum = std::vector<std::complex<double>>;

/// Precomputed transform plans, wavenumber tables and the 2/3-rule dealias
/// mask for one grid. Transform methods reuse internal scratch buffers and
/// must be called from one thread at a time; the cell-parallel loops in the
/// solvers never touch the workspace.
///
/// Conventions:
///  - inverse(forward(f)) == f up to roundoff (normalization 1/(nx*ny)).
///  - all nonlinear products are formed from dealiased (2/3-masked) inputs.
///  - solves and derivative transforms split off the field mean first, so
///    spatially constant fields pass through bitwise unchanged.
class SpectralWorkspace {
public:
    explicit SpectralWorkspace(const TorusGrid2D& grid);
    ~SpectralWorkspace();
    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    const TorusGrid2D& grid() const { return grid_; }
    long n_bins() const { return n_bins_; }

    Spectrum forward(const ScalarField& f);
    ScalarField inverse(const Spectrum& s);

    /// forward(f - mean(f)) with the DC bin zeroed; exact zeros for
    /// constant input. Use when the result feeds a derivative.
    Spectrum forward_fluct(const ScalarField& f, double* mean_out = nullptr);

    /// Zeroes every bin outside the 2/3 dealias ball (Nyquist included).
    void dealias(Spectrum& s) const;

    Spectrum deriv_x(const Spectrum& s) const;
    Spectrum deriv_y(const Spectrum& s) const;

    // -- differential operators (spectrally exact on resolved modes) --
    VectorField gradient(const ScalarField& f);
    ScalarField divergence(const VectorField& v);
    ScalarField laplacian(const ScalarField& f);
    VectorField laplacian(const VectorField& v);
    TensorField laplacian(const TensorField& t);

    /// (u . grad) f, pseudo-spectral with 2/3 dealiasing of both factors.
    /// Precondition: u divergence-free (to 1e-10); not checked here.
    ScalarField advect(const VectorField& u, const ScalarField& f);
    VectorField advect(const VectorField& u, const VectorField& f);
    TensorField advect(const VectorField& u, const TensorField& f);

    /// Dealiased velocity gradient G_ij = du_i/dx_j.
    Matrix2Field velocity_gradient(const VectorField& u);

    /// L2 projection onto divergence-free fields. Mean flow is preserved;
    /// output divergence <= 1e-12 in max norm; idempotent.
    VectorField leray_project(const VectorField& v);

    /// Projection plus the scalar potential of the removed gradient part,
    /// used to recover the pressure diagnostically.
    VectorField leray_project(const VectorField& v, ScalarField& potential_out);

    /// Solves (1 - coef * Laplacian) out = f. coef >= 0. Output is
    /// dealiased; constant fields are returned bitwise unchanged.
    ScalarField helmholtz_solve(const ScalarField& f, double coef);

    /// div T for a symmetric tensor, dealiased (T enters products of the
    /// momentum equation).
    VectorField divergence_dealiased(const TensorField& t);

private:
    TorusGrid2D grid_;
    int nkx_;       // nx/2 + 1
    long n_bins_;   // ny * nkx
    std::vector<double> kx_;       // per bin
    std::vector<double> ky_;       // per bin
    std::vector<double> k2_;       // per bin
    std::vector<unsigned char> keep_;  // dealias mask per bin

    fftw_plan_s* plan_fwd_ = nullptr;
    fftw_plan_s* plan_bwd_ = nullptr;
    double* real_buf_ = nullptr;
    std::complex<double>* cplx_buf_ = nullptr;

    Spectrum mul_ik(const Spectrum& s, const std::vector<double>& k) const;
};

}  // namespace peterlin

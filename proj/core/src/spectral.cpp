#include "peterlin/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>

namespace peterlin {

SpectralWorkspace::SpectralWorkspace(const TorusGrid2D& grid) : grid_(grid) {
    const int nx = grid_.nx, ny = grid_.ny;
    nkx_ = nx / 2 + 1;
    n_bins_ = static_cast<long>(ny) * nkx_;

    kx_.resize(n_bins_);
    ky_.resize(n_bins_);
    k2_.resize(n_bins_);
    keep_.resize(n_bins_);
    const int cutx = nx / 3, cuty = ny / 3;
    for (int iy = 0; iy < ny; ++iy) {
        const double ky = (iy <= ny / 2) ? iy : iy - ny;
        for (int ikx = 0; ikx < nkx_; ++ikx) {
            const long b = static_cast<long>(iy) * nkx_ + ikx;
            // Nyquist rows carry no usable derivative information.
            kx_[b] = (ikx == nx / 2) ? 0.0 : ikx;
            ky_[b] = (iy == ny / 2) ? 0.0 : ky;
            k2_[b] = static_cast<double>(ikx) * ikx + ky * ky;
            keep_[b] = (ikx <= cutx && std::abs(ky) <= cuty) ? 1 : 0;
        }
    }

    real_buf_ = fftw_alloc_real(static_cast<size_t>(grid_.size()));
    cplx_buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(static_cast<size_t>(n_bins_)));
    plan_fwd_ = fftw_plan_dft_r2c_2d(ny, nx, real_buf_,
                                     reinterpret_cast<fftw_complex*>(cplx_buf_), FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_2d(ny, nx, reinterpret_cast<fftw_complex*>(cplx_buf_),
                                     real_buf_, FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_bwd_) throw Error("spectral: FFTW plan creation failed");
}

SpectralWorkspace::~SpectralWorkspace() {
    if (plan_fwd_) fftw_destroy_plan(plan_fwd_);
    if (plan_bwd_) fftw_destroy_plan(plan_bwd_);
    if (real_buf_) fftw_free(real_buf_);
    if (cplx_buf_) fftw_free(reinterpret_cast<fftw_complex*>(cplx_buf_));
}

Spectrum SpectralWorkspace::forward(const ScalarField& f) {
    if (f.nx() != grid_.nx || f.ny() != grid_.ny)
        throw ShapeError("spectral: field does not match grid");
    std::memcpy(real_buf_, f.data(), sizeof(double) * static_cast<size_t>(grid_.size()));
    fftw_execute(plan_fwd_);
    return Spectrum(cplx_buf_, cplx_buf_ + n_bins_);
}

ScalarField SpectralWorkspace::inverse(const Spectrum& s) {
    if (static_cast<long>(s.size()) != n_bins_)
        throw ShapeError("spectral: spectrum does not match grid");
    std::memcpy(cplx_buf_, s.data(), sizeof(std::complex<double>) * static_cast<size_t>(n_bins_));
    fftw_execute(plan_bwd_);  // c2r destroys its input buffer; copy is required anyway
    ScalarField out(grid_);
    const double scale = 1.0 / static_cast<double>(grid_.size());
    for (long i = 0; i < grid_.size(); ++i) out[i] = real_buf_[i] * scale;
    return out;
}

Spectrum SpectralWorkspace::forward_fluct(const ScalarField& f, double* mean_out) {
    if (f.nx() != grid_.nx || f.ny() != grid_.ny)
        throw ShapeError("spectral: field does not match grid");
    const double m = field_mean(f);
    if (mean_out) *mean_out = m;
    for (long i = 0; i < grid_.size(); ++i) real_buf_[i] = f[i] - m;
    fftw_execute(plan_fwd_);
    Spectrum s(cplx_buf_, cplx_buf_ + n_bins_);
    s[0] = 0.0;
    return s;
}

void SpectralWorkspace::dealias(Spectrum& s) const {
    for (long b = 0; b < n_bins_; ++b)
        if (!keep_[b]) s[b] = 0.0;
}

Spectrum SpectralWorkspace::mul_ik(const Spectrum& s, const std::vector<double>& k) const {
    Spectrum out(n_bins_);
    for (long b = 0; b < n_bins_; ++b) {
        // i*k*(re + i im) = -k*im + i k*re
        out[b] = std::complex<double>(-k[b] * s[b].imag(), k[b] * s[b].real());
    }
    return out;
}

Spectrum SpectralWorkspace::deriv_x(const Spectrum& s) const { return mul_ik(s, kx_); }
Spectrum SpectralWorkspace::deriv_y(const Spectrum& s) const { return mul_ik(s, ky_); }

VectorField SpectralWorkspace::gradient(const ScalarField& f) {
    Spectrum s = forward_fluct(f);
    VectorField g(grid_);
    g.x = inverse(deriv_x(s));
    g.y = inverse(deriv_y(s));
    return g;
}

ScalarField SpectralWorkspace::divergence(const VectorField& v) {
    Spectrum sx = forward_fluct(v.x);
    Spectrum sy = forward_fluct(v.y);
    Spectrum d = deriv_x(sx);
    Spectrum dy = deriv_y(sy);
    for (long b = 0; b < n_bins_; ++b) d[b] += dy[b];
    return inverse(d);
}

ScalarField SpectralWorkspace::laplacian(const ScalarField& f) {
    Spectrum s = forward_fluct(f);
    for (long b = 0; b < n_bins_; ++b) s[b] *= -k2_[b];
    return inverse(s);
}

VectorField SpectralWorkspace::laplacian(const VectorField& v) {
    VectorField out(grid_);
    out.x = laplacian(v.x);
    out.y = laplacian(v.y);
    return out;
}

TensorField SpectralWorkspace::laplacian(const TensorField& t) {
    TensorField out(grid_);
    out.xx = laplacian(t.xx);
    out.xy = laplacian(t.xy);
    out.yy = laplacian(t.yy);
    return out;
}

ScalarField SpectralWorkspace::advect(const VectorField& u, const ScalarField& f) {
    require_same_shape(u.x, f, "advect");
    Spectrum s = forward_fluct(f);
    dealias(s);
    ScalarField fx = inverse(deriv_x(s));
    ScalarField fy = inverse(deriv_y(s));
    ScalarField out(grid_);
    for (long i = 0; i < grid_.size(); ++i) out[i] = u.x[i] * fx[i] + u.y[i] * fy[i];
    return out;
}

VectorField SpectralWorkspace::advect(const VectorField& u, const VectorField& f) {
    VectorField out(grid_);
    out.x = advect(u, f.x);
    out.y = advect(u, f.y);
    return out;
}

TensorField SpectralWorkspace::advect(const VectorField& u, const TensorField& f) {
    TensorField out(grid_);
    out.xx = advect(u, f.xx);
    out.xy = advect(u, f.xy);
    out.yy = advect(u, f.yy);
    return out;
}

Matrix2Field SpectralWorkspace::velocity_gradient(const VectorField& u) {
    Matrix2Field g(grid_);
    Spectrum sx = forward_fluct(u.x);
    dealias(sx);
    g.xx = inverse(deriv_x(sx));
    g.xy = inverse(deriv_y(sx));
    Spectrum sy = forward_fluct(u.y);
    dealias(sy);
    g.yx = inverse(deriv_x(sy));
    g.yy = inverse(deriv_y(sy));
    return g;
}

VectorField SpectralWorkspace::leray_project(const VectorField& v) {
    ScalarField unused;
    return leray_project(v, unused);
}

VectorField SpectralWorkspace::leray_project(const VectorField& v, ScalarField& potential_out) {
    double mx = 0.0, my = 0.0;
    Spectrum sx = forward_fluct(v.x, &mx);
    Spectrum sy = forward_fluct(v.y, &my);
    Spectrum phi(n_bins_, std::complex<double>(0.0, 0.0));
    for (long b = 1; b < n_bins_; ++b) {
        if (k2_[b] == 0.0) continue;  // remaining Nyquist-free zero rows
        const std::complex<double> kdotu = kx_[b] * sx[b] + ky_[b] * sy[b];
        const std::complex<double> proj = kdotu / k2_[b];
        sx[b] -= kx_[b] * proj;
        sy[b] -= ky_[b] * proj;
        // removed part = i k phi  =>  phi = -i (k.u)/|k|^2
        phi[b] = std::complex<double>(proj.imag(), -proj.real());
    }
    VectorField out(grid_);
    out.x = inverse(sx);
    out.y = inverse(sy);
    for (long i = 0; i < grid_.size(); ++i) {
        out.x[i] += mx;
        out.y[i] += my;
    }
    potential_out = inverse(phi);
    return out;
}

ScalarField SpectralWorkspace::helmholtz_solve(const ScalarField& f, double coef) {
    if (!(coef >= 0.0)) throw InvalidParameterError("helmholtz_solve: coef must be >= 0");
    double m = 0.0;
    Spectrum s = forward_fluct(f, &m);
    dealias(s);
    for (long b = 0; b < n_bins_; ++b) s[b] /= (1.0 + coef * k2_[b]);
    ScalarField out = inverse(s);
    for (long i = 0; i < grid_.size(); ++i) out[i] += m;
    return out;
}

VectorField SpectralWorkspace::divergence_dealiased(const TensorField& t) {
    Spectrum sxx = forward_fluct(t.xx);
    Spectrum sxy = forward_fluct(t.xy);
    Spectrum syy = forward_fluct(t.yy);
    dealias(sxx);
    dealias(sxy);
    dealias(syy);
    Spectrum dx = deriv_x(sxx);
    Spectrum dy = deriv_y(sxy);
    for (long b = 0; b < n_bins_; ++b) dx[b] += dy[b];
    VectorField out(grid_);
    out.x = inverse(dx);
    Spectrum dx2 = deriv_x(sxy);
    Spectrum dy2 = deriv_y(syy);
    for (long b = 0; b < n_bins_; ++b) dx2[b] += dy2[b];
    out.y = inverse(dx2);
    return out;
}

}  // namespace peterlin

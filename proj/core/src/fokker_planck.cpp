#include "peterlin/fokker_planck.hpp"

#include <cmath>

#include "peterlin/moments.hpp"
#include "peterlin/parallel.hpp"

namespace peterlin {

void FPConfig::validate() const {
    if (!(dt > 0.0)) throw InvalidParameterError("fp: dt must be positive");
    if (cutoff_L) {
        const double L = *cutoff_L;
        if (!(L > 1.0)) throw InvalidParameterError("fp: cutoff requires L > 1");
        if (dt > 1.0 / (4.0 * L * L))
            throw ConfigError(0, "time step violates Δt ≤ (4L²)⁻¹: dt = " +
                                     std::to_string(dt) + ", bound = " +
                                     std::to_string(1.0 / (4.0 * L * L)));
    }
}

double cutoff_beta(double s, double L) { return s < L ? s : L; }

std::vector<double> gaussian_psi_hat(const SymMat2& c0, const HermiteBasis& basis) {
    if (!c0.is_spd())
        throw InvalidParameterError("gaussian_psi_hat: C0 must be symmetric positive definite");
    const double a = basis.a();
    if (!(c0.max_eigenvalue() < 2.0 * a))
        throw RepresentabilityError(
            "gaussian_psi_hat: largest eigenvalue of C0 must be < 2a for the "
            "Gaussian ratio to lie in the weighted L2 space");

    // E[He_{k1}(R1/sqrt(a)) He_{k2}(R2/sqrt(a))] under R ~ N(0, C0), from the
    // generating function exp((alpha t^2 + 2 beta t s + gamma s^2)/2) of the
    // scaled covariance deviation.
    const double al = c0.xx / a - 1.0;
    const double be = c0.xy / a;
    const double ga = c0.yy / a - 1.0;

    const int nmax = basis.max_degree();
    std::vector<double> fact(nmax + 1, 1.0);
    for (int k = 1; k <= nmax; ++k) fact[k] = fact[k - 1] * k;

    std::vector<double> c(basis.n_modes(), 0.0);
    for (int mi = 0; mi < basis.n_modes(); ++mi) {
        const int k1 = basis.mode(mi).k1, k2 = basis.mode(mi).k2;
        double s = 0.0;
        for (int m = 0; m <= std::min(k1, k2); ++m) {
            if ((k1 - m) % 2 != 0 || (k2 - m) % 2 != 0) continue;
            const int i = (k1 - m) / 2, j = (k2 - m) / 2;
            s += std::pow(al, i) * std::pow(ga, j) * std::pow(be, m) /
                 (std::pow(2.0, i + j) * fact[i] * fact[j] * fact[m]);
        }
        c[mi] = std::sqrt(fact[k1] * fact[k2]) * s;
    }
    return c;
}

void ou_implicit_solve(HermiteField& field, const ScalarField& gamma_coef, double dt,
                       const HermiteBasis& basis) {
    require_same_shape(field.mode(0), gamma_coef, "ou_implicit_solve");
    const long n = field.n_cells();
    for (long i = 0; i < n; ++i)
        if (!(gamma_coef[i] > 0.0))
            throw BlowupError("ou_implicit_solve: Gamma must be positive everywhere", -1, i);
    for (int m = 0; m < field.n_modes(); ++m) {
        const double eig = basis.ou_eigenvalue(m);
        if (eig == 0.0) continue;  // mass mode
        ScalarField& cm = field.mode(m);
        parallel_for(n, [&](long i) { cm[i] /= (1.0 + dt * gamma_coef[i] * eig); });
    }
}

namespace {

// Mode-coupling table of the drift operator
//   -tr(G) - sum_il G_il u_l d/du_i + sum_il G_il u_i u_l
// in the scaled variable u = R/sqrt(a). Contributions per source mode
// (k1,k2), grouped by which gradient entry multiplies them.
struct DriftTerm {
    int target;
    int source;
    enum Which { g11, g22, g12, g21, g12_plus_g21 } which;
    double coef;
};

std::vector<DriftTerm> build_drift_terms(const HermiteBasis& basis) {
    std::vector<DriftTerm> terms;
    auto add = [&](int t1, int t2, int src, DriftTerm::Which w, double c) {
        const int ti = basis.mode_index(t1, t2);
        if (ti >= 0 && c != 0.0) terms.push_back(DriftTerm{ti, src, w, c});
    };
    for (int mi = 0; mi < basis.n_modes(); ++mi) {
        const int k1 = basis.mode(mi).k1, k2 = basis.mode(mi).k2;
        add(k1 + 2, k2, mi, DriftTerm::g11, std::sqrt(double(k1 + 1) * (k1 + 2)));
        add(k1, k2 + 2, mi, DriftTerm::g22, std::sqrt(double(k2 + 1) * (k2 + 2)));
        add(k1, k2, mi, DriftTerm::g11, double(k1));
        add(k1, k2, mi, DriftTerm::g22, double(k2));
        add(k1 + 1, k2 + 1, mi, DriftTerm::g12_plus_g21, std::sqrt(double(k1 + 1) * (k2 + 1)));
        if (k2 > 0) add(k1 + 1, k2 - 1, mi, DriftTerm::g12, std::sqrt(double(k1 + 1) * k2));
        if (k1 > 0) add(k1 - 1, k2 + 1, mi, DriftTerm::g21, std::sqrt(double(k1) * (k2 + 1)));
    }
    return terms;
}

const std::vector<DriftTerm>& drift_terms_for(const HermiteBasis& basis) {
    // one table per (degree); coefficients are a-independent
    thread_local int cached_degree = -1;
    thread_local std::vector<DriftTerm> cached;
    if (cached_degree != basis.max_degree()) {
        cached = build_drift_terms(basis);
        cached_degree = basis.max_degree();
    }
    return cached;
}

inline double pick(const Mat2& g, DriftTerm::Which w) {
    switch (w) {
        case DriftTerm::g11: return g.xx;
        case DriftTerm::g22: return g.yy;
        case DriftTerm::g12: return g.xy;
        case DriftTerm::g21: return g.yx;
        case DriftTerm::g12_plus_g21: return g.xy + g.yx;
    }
    return 0.0;
}

}  // namespace

void drift_apply_local(std::span<const double> coeffs, const Mat2& grad_u,
                       const HermiteBasis& basis, std::span<double> rate_out) {
    for (auto& v : rate_out) v = 0.0;
    for (const DriftTerm& t : drift_terms_for(basis))
        rate_out[t.target] += pick(grad_u, t.which) * t.coef * coeffs[t.source];
}

namespace {

// Collocation route for the cut-off drift: weak-form row
//   d_j = sum_q w_q beta^L(psi-hat(R_q)) (G R_q) . grad h_j(R_q).
// grad h_0 = 0, so the mass row is exactly zero.
void drift_cell_cutoff(std::span<const double> coeffs, const Mat2& g, double L,
                       const HermiteBasis& basis, std::span<double> out) {
    const long nn = basis.n_nodes();
    const int nm = basis.n_modes();
    for (int j = 0; j < nm; ++j) out[j] = 0.0;
    for (long q = 0; q < nn; ++q) {
        const double v = basis.eval_at_node(coeffs, q);
        const double s = basis.weight(q) * cutoff_beta(v, L);
        if (s == 0.0) continue;
        const double r1 = basis.node_r1(q), r2 = basis.node_r2(q);
        const double w1 = g.xx * r1 + g.xy * r2;
        const double w2 = g.yx * r1 + g.yy * r2;
        for (int j = 0; j < nm; ++j)
            out[j] += s * (w1 * basis.deriv_r1(j, q) + w2 * basis.deriv_r2(j, q));
    }
}

}  // namespace

HermiteField drift_apply(const HermiteField& field, const Matrix2Field& grad_u,
                         std::optional<double> cutoff_L, const HermiteBasis& basis) {
    require_same_shape(field.mode(0), grad_u.xx, "drift_apply");
    const TorusGrid2D grid{field.nx(), field.ny()};
    HermiteField out(grid, basis);
    const long n = field.n_cells();
    const int nm = basis.n_modes();

    if (cutoff_L && !(*cutoff_L > 1.0))
        throw InvalidParameterError("drift_apply: cutoff requires L > 1");

    parallel_for(n, [&](long i) {
        thread_local std::vector<double> c, r;
        c.resize(nm);
        r.resize(nm);
        field.gather_cell(i, c);
        if (cutoff_L)
            drift_cell_cutoff(c, grad_u.cell(i), *cutoff_L, basis, r);
        else
            drift_apply_local(c, grad_u.cell(i), basis, r);
        out.scatter_cell(i, r);
    });
    return out;
}

void fp_step(HermiteField& field, const VectorField& u, const ScalarField* trc_given,
             const FPConfig& cfg, const HermiteBasis& basis, SpectralWorkspace& ws) {
    cfg.validate();
    const TorusGrid2D& grid = ws.grid();
    const long n = grid.size();
    const int nm = field.n_modes();

    // Gamma(tr C), lagged: evaluated from the state entering the step.
    ScalarField trc;
    if (cfg.gamma_source == GammaSource::given_field) {
        if (!trc_given) throw InvalidParameterError("fp_step: given_field requires a trC field");
        require_same_shape(*trc_given, field.mode(0), "fp_step");
        trc = *trc_given;
    } else {
        trc = trace_field(conformation_from_psi(field, basis));
    }
    ScalarField gamma_coef(grid);
    for (long i = 0; i < n; ++i) {
        if (!(trc[i] >= 0.0))
            throw BlowupError("fp_step: tr C became negative", -1, i);
        gamma_coef[i] = big_gamma(cfg.gamma2, cfg.params.lambda, trc[i]);
    }

    Matrix2Field grad = ws.velocity_gradient(u);
    HermiteField drift = drift_apply(field, grad, cfg.cutoff_L, basis);

    // explicit advection + drift, then the two implicit diagonal solves
    for (int m = 0; m < nm; ++m) {
        ScalarField adv = ws.advect(u, field.mode(m));
        ScalarField& cm = field.mode(m);
        const ScalarField& dm = drift.mode(m);
        parallel_for(n, [&](long i) { cm[i] += cfg.dt * (dm[i] - adv[i]); });
    }
    ou_implicit_solve(field, gamma_coef, cfg.dt, basis);
    for (int m = 0; m < nm; ++m)
        field.mode(m) = ws.helmholtz_solve(field.mode(m), cfg.dt * cfg.params.eps);

    long bad_cell = -1;
    int bad_mode = -1;
    if (!field.all_finite(&bad_cell, &bad_mode))
        throw BlowupError("fp_step: non-finite coefficient in mode " +
                              std::to_string(bad_mode),
                          -1, bad_cell);
}

void fp_step_homogeneous(std::span<double> coeffs, const Mat2& grad_u,
                         const FPConfig& cfg, const HermiteBasis& basis) {
    cfg.validate();
    const int nm = basis.n_modes();
    const double trc = conformation_from_coeffs(coeffs, basis).trace();
    if (!(trc >= 0.0)) throw BlowupError("fp_step_homogeneous: tr C became negative");
    const double gamma_coef = big_gamma(cfg.gamma2, cfg.params.lambda, trc);
    if (!(gamma_coef > 0.0))
        throw BlowupError("fp_step_homogeneous: Gamma must be positive");

    std::vector<double> rate(nm);
    if (cfg.cutoff_L) {
        std::vector<double> in(coeffs.begin(), coeffs.end());
        drift_cell_cutoff(in, grad_u, *cfg.cutoff_L, basis, rate);
    } else {
        drift_apply_local(coeffs, grad_u, basis, rate);
    }
    for (int m = 0; m < nm; ++m) coeffs[m] += cfg.dt * rate[m];
    for (int m = 0; m < nm; ++m)
        coeffs[m] /= (1.0 + cfg.dt * gamma_coef * basis.ou_eigenvalue(m));
}

}  // namespace peterlin

#include "peterlin/moments.hpp"

#include <cmath>

#include "peterlin/conformation.hpp"
#include "peterlin/parallel.hpp"

namespace peterlin {

namespace {

// F(s) = s (log s - 1) + 1, the relative-entropy density; F(1) = 0.
inline double entropy_density(double s) { return s * (std::log(s) - 1.0) + 1.0; }

}  // namespace

SymMat2 conformation_from_coeffs(std::span<const double> coeffs, const HermiteBasis& basis) {
    if (basis.max_degree() < 2)
        throw InvalidParameterError("conformation: basis degree must be >= 2");
    const double a = basis.a();
    const double s2 = std::sqrt(2.0);
    const int i00 = basis.mode_index(0, 0);
    const int i20 = basis.mode_index(2, 0);
    const int i02 = basis.mode_index(0, 2);
    const int i11 = basis.mode_index(1, 1);
    return SymMat2{a * (coeffs[i00] + s2 * coeffs[i20]), a * coeffs[i11],
                   a * (coeffs[i00] + s2 * coeffs[i02])};
}

TensorField conformation_from_psi(const HermiteField& field, const HermiteBasis& basis) {
    if (basis.max_degree() < 2)
        throw InvalidParameterError("conformation: basis degree must be >= 2");
    const double a = basis.a();
    const double s2 = std::sqrt(2.0);
    const int i00 = basis.mode_index(0, 0);
    const int i20 = basis.mode_index(2, 0);
    const int i02 = basis.mode_index(0, 2);
    const int i11 = basis.mode_index(1, 1);
    const ScalarField& c00 = field.mode(i00);
    const ScalarField& c20 = field.mode(i20);
    const ScalarField& c02 = field.mode(i02);
    const ScalarField& c11 = field.mode(i11);

    TensorField out(TorusGrid2D{field.nx(), field.ny()});
    parallel_for(field.n_cells(), [&](long i) {
        out.xx[i] = a * (c00[i] + s2 * c20[i]);
        out.xy[i] = a * c11[i];
        out.yy[i] = a * (c00[i] + s2 * c02[i]);
    });
    return out;
}

ScalarField radial_moment(const HermiteField& field, int r, const HermiteBasis& basis) {
    if (r < 0 || r % 2 != 0) throw DomainError("radial_moment: order must be even and >= 0");
    if (r > 2 * basis.n_quad() - 2)
        throw DomainError("radial_moment: order exceeds quadrature exactness");

    // project M |R|^r onto the basis once: moment(x) = sum_m q_m c_m(x)
    const long nn = basis.n_nodes();
    const int nm = basis.n_modes();
    std::vector<double> q(nm, 0.0);
    for (long node = 0; node < nn; ++node) {
        const double r1 = basis.node_r1(node), r2 = basis.node_r2(node);
        const double radial = std::pow(r1 * r1 + r2 * r2, r / 2);
        const double wr = basis.weight(node) * radial;
        for (int m = 0; m < nm; ++m) q[m] += wr * basis.value(m, node);
    }

    ScalarField out(TorusGrid2D{field.nx(), field.ny()});
    parallel_for(field.n_cells(), [&](long i) {
        double s = 0.0;
        for (int m = 0; m < nm; ++m) s += q[m] * field.mode(m)[i];
        out[i] = s;
    });
    return out;
}

ScalarField relative_entropy(const HermiteField& field, const HermiteBasis& basis) {
    const long nn = basis.n_nodes();
    const int nm = basis.n_modes();
    ScalarField out(TorusGrid2D{field.nx(), field.ny()});
    parallel_for(field.n_cells(), [&](long i) {
        thread_local std::vector<double> c;
        c.resize(nm);
        field.gather_cell(i, c);
        double ent = 0.0;
        for (long q = 0; q < nn; ++q) {
            const double v = basis.eval_at_node(c, q);
            if (v > 0.0) ent += basis.weight(q) * entropy_density(v);
        }
        out[i] = ent;
    });
    return out;
}

ScalarField fisher_information(const HermiteField& field, const HermiteBasis& basis) {
    const long nn = basis.n_nodes();
    const int nm = basis.n_modes();
    ScalarField out(TorusGrid2D{field.nx(), field.ny()});
    parallel_for(field.n_cells(), [&](long i) {
        thread_local std::vector<double> c;
        c.resize(nm);
        field.gather_cell(i, c);
        double fisher = 0.0;
        for (long q = 0; q < nn; ++q) {
            const double v = basis.eval_at_node(c, q);
            if (v <= 0.0) continue;
            double g1 = 0.0, g2 = 0.0;
            for (int m = 0; m < nm; ++m) {
                g1 += c[m] * basis.deriv_r1(m, q);
                g2 += c[m] * basis.deriv_r2(m, q);
            }
            // 4 |grad sqrt(v)|^2 = |grad v|^2 / v
            fisher += basis.weight(q) * (g1 * g1 + g2 * g2) / v;
        }
        out[i] = fisher;
    });
    return out;
}

NodalStats reconstruction_stats(const HermiteField& field, const HermiteBasis& basis) {
    const long nn = basis.n_nodes();
    const int nm = basis.n_modes();
    const TorusGrid2D grid{field.nx(), field.ny()};
    NodalStats st{ScalarField(grid), ScalarField(grid)};
    parallel_for(field.n_cells(), [&](long i) {
        thread_local std::vector<double> c;
        c.resize(nm);
        field.gather_cell(i, c);
        double mn = basis.eval_at_node(c, 0);
        double neg = 0.0;
        for (long q = 0; q < nn; ++q) {
            const double v = basis.eval_at_node(c, q);
            if (v < mn) mn = v;
            if (v < 0.0) neg += basis.weight(q) * (-v);
        }
        st.min_psi[i] = mn;
        st.negativity_mass[i] = neg;
    });
    return st;
}

namespace {

double tensor_sq_norm(const TensorField& t) {
    // Frobenius with the off-diagonal counted twice, averaged over cells
    double s = 0.0;
    for (long i = 0; i < t.xx.size(); ++i)
        s += t.xx[i] * t.xx[i] + 2.0 * t.xy[i] * t.xy[i] + t.yy[i] * t.yy[i];
    return s / static_cast<double>(t.xx.size());
}

}  // namespace

ClosureResidualAccumulator::ClosureResidualAccumulator(const GammaSpec& gamma1,
                                                       const GammaSpec& gamma2,
                                                       const NondimParams& params, double dt)
    : gamma1_(gamma1), gamma2_(gamma2), params_(params), dt_(dt) {
    if (!(dt > 0.0)) throw InvalidParameterError("closure residual: dt must be positive");
}

void ClosureResidualAccumulator::push(const TensorField& c, const VectorField& u,
                                      SpectralWorkspace& ws) {
    if (has_prev_) {
        Matrix2Field grad = ws.velocity_gradient(prev_u_);
        TensorField adv = ws.advect(prev_u_, prev_c_);
        TensorField lap = ws.laplacian(prev_c_);
        TensorField res(ws.grid());
        for (long i = 0; i < res.xx.size(); ++i) {
            const SymMat2 rhs = conformation_local_rhs(prev_c_.cell(i), grad.cell(i),
                                                       gamma1_, gamma2_, params_);
            res.xx[i] = (c.xx[i] - prev_c_.xx[i]) / dt_ + adv.xx[i] - rhs.xx -
                        params_.eps * lap.xx[i];
            res.xy[i] = (c.xy[i] - prev_c_.xy[i]) / dt_ + adv.xy[i] - rhs.xy -
                        params_.eps * lap.xy[i];
            res.yy[i] = (c.yy[i] - prev_c_.yy[i]) / dt_ + adv.yy[i] - rhs.yy -
                        params_.eps * lap.yy[i];
        }
        num_ += dt_ * tensor_sq_norm(res);
        den_ += dt_ * tensor_sq_norm(prev_c_);
    }
    prev_c_ = c;
    prev_u_ = u;
    has_prev_ = true;
    ++count_;
}

double ClosureResidualAccumulator::value() const {
    if (den_ == 0.0) return 0.0;
    return std::sqrt(num_ / den_);
}

double closure_residual_homogeneous(const std::vector<SymMat2>& c_series, const Mat2& grad_u,
                                    const GammaSpec& gamma1, const GammaSpec& gamma2,
                                    const NondimParams& params, double dt) {
    if (c_series.size() < 2)
        throw ShapeError("closure_residual_homogeneous: need at least two C levels");
    if (!(dt > 0.0)) throw InvalidParameterError("closure residual: dt must be positive");
    auto sq = [](const SymMat2& m) {
        return m.xx * m.xx + 2.0 * m.xy * m.xy + m.yy * m.yy;
    };
    double num = 0.0, den = 0.0;
    for (size_t n = 0; n + 1 < c_series.size(); ++n) {
        const SymMat2& c = c_series[n];
        const SymMat2 rhs = conformation_local_rhs(c, grad_u, gamma1, gamma2, params);
        const SymMat2 res{(c_series[n + 1].xx - c.xx) / dt - rhs.xx,
                          (c_series[n + 1].xy - c.xy) / dt - rhs.xy,
                          (c_series[n + 1].yy - c.yy) / dt - rhs.yy};
        num += dt * sq(res);
        den += dt * sq(c);
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

double closure_residual(const std::vector<TensorField>& c_series,
                        const std::vector<VectorField>& u_series,
                        const GammaSpec& gamma1, const GammaSpec& gamma2,
                        const NondimParams& params, double dt, SpectralWorkspace& ws) {
    if (c_series.size() < 2) throw ShapeError("closure_residual: need at least two C levels");
    if (c_series.size() != u_series.size())
        throw ShapeError("closure_residual: C and u series lengths differ");
    ClosureResidualAccumulator acc(gamma1, gamma2, params, dt);
    for (size_t n = 0; n < c_series.size(); ++n) acc.push(c_series[n], u_series[n], ws);
    return acc.value();
}

}  // namespace peterlin

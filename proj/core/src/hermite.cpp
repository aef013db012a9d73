#include "peterlin/hermite.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace peterlin {

namespace {

// Normalized He_k(x)/sqrt(k!) for k = 0..n at a point, by the stable
// recurrence. Returns h_n and h_{n-1} and accumulates the Christoffel sum
// over k < n.
struct HermitePoint {
    double h_n;
    double h_nm1;
    double christoffel;  // sum_{k=0}^{n-1} h_k(x)^2
};

HermitePoint hermite_point(int n, double x) {
    double hm = 1.0, h = x;  // h_0, h_1
    double sum = 1.0;        // h_0^2
    if (n == 1) return {h, hm, sum};
    for (int k = 1; k < n; ++k) {
        sum += h * h;
        const double hp = (x * h - std::sqrt(double(k)) * hm) / std::sqrt(double(k + 1));
        hm = h;
        h = hp;
    }
    return {h, hm, sum};
}

}  // namespace

GaussHermite GaussHermite::compute(int n) {
    if (n < 1) throw InvalidParameterError("gauss-hermite: order must be >= 1");
    // Golub-Welsch eigenvalues of the Jacobi matrix give the nodes; a
    // Newton polish on He_n restores full relative accuracy, and the
    // weights come from the Christoffel function w_i = 1/sum h_k(x_i)^2,
    // which is far better conditioned than squared eigenvector entries
    // at the extreme nodes.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        J(k - 1, k) = std::sqrt(static_cast<double>(k));
        J(k, k - 1) = J(k - 1, k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("gauss-hermite: eigensolver failed");

    GaussHermite gh;
    gh.nodes.resize(n);
    gh.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        for (int it = 0; it < 4; ++it) {
            const HermitePoint p = hermite_point(n, x);
            const double deriv = std::sqrt(double(n)) * p.h_nm1;  // h_n'(x)
            if (deriv == 0.0) break;
            const double dx = p.h_n / deriv;
            x -= dx;
            if (std::abs(dx) <= 1e-15 * (1.0 + std::abs(x))) break;
        }
        gh.nodes[i] = x;
    }
    // Enforce the exact +/- symmetry of the rule.
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double x = 0.5 * (gh.nodes[j] - gh.nodes[i]);
        gh.nodes[i] = -x;
        gh.nodes[j] = x;
    }
    if (n % 2 == 1) gh.nodes[n / 2] = 0.0;
    for (int i = 0; i < n; ++i)
        gh.weights[i] = 1.0 / hermite_point(n, gh.nodes[i]).christoffel;
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double w = 0.5 * (gh.weights[i] + gh.weights[j]);
        gh.weights[i] = w;
        gh.weights[j] = w;
    }
    return gh;
}

std::vector<std::vector<double>> hermite_normalized_table(int nmax, std::span<const double> x) {
    std::vector<std::vector<double>> h(nmax + 1, std::vector<double>(x.size()));
    for (size_t i = 0; i < x.size(); ++i) h[0][i] = 1.0;
    if (nmax >= 1)
        for (size_t i = 0; i < x.size(); ++i) h[1][i] = x[i];
    for (int n = 1; n < nmax; ++n) {
        const double sn = std::sqrt(static_cast<double>(n));
        const double snp = std::sqrt(static_cast<double>(n + 1));
        for (size_t i = 0; i < x.size(); ++i)
            h[n + 1][i] = (x[i] * h[n][i] - sn * h[n - 1][i]) / snp;
    }
    return h;
}

HermiteBasis::HermiteBasis(double a, int max_degree)
    : HermiteBasis(a, max_degree, max_degree + 3) {}

HermiteBasis::HermiteBasis(double a, int max_degree, int n_quad)
    : a_(a), max_degree_(max_degree), n_quad_(n_quad) {
    if (!(a > 0.0)) throw InvalidParameterError("hermite basis: scale a must be positive");
    if (max_degree < 2) throw InvalidParameterError("hermite basis: max degree must be >= 2");
    if (n_quad < max_degree + 1)
        throw InvalidParameterError("hermite basis: quadrature order too low for the degree");

    gh_ = GaussHermite::compute(n_quad_);
    node_r_.resize(n_quad_);
    const double sqrt_a = std::sqrt(a_);
    for (int q = 0; q < n_quad_; ++q) node_r_[q] = sqrt_a * gh_.nodes[q];

    // lexicographic (k1,k2) mode order; this is also the snapshot order
    index_.assign(static_cast<size_t>(max_degree_ + 1) * (max_degree_ + 1), -1);
    for (int k1 = 0; k1 <= max_degree_; ++k1)
        for (int k2 = 0; k2 + k1 <= max_degree_; ++k2) {
            index_[static_cast<size_t>(k1) * (max_degree_ + 1) + k2] =
                static_cast<int>(modes_.size());
            modes_.push_back(HermiteMode{k1, k2});
        }

    const auto h = hermite_normalized_table(max_degree_, gh_.nodes);
    // d/dR [He_n(R/sqrt(a))/sqrt(n!)] = sqrt(n)/sqrt(a) * normalized He_{n-1}
    std::vector<std::vector<double>> dh(max_degree_ + 1, std::vector<double>(n_quad_, 0.0));
    for (int n = 1; n <= max_degree_; ++n) {
        const double c = std::sqrt(static_cast<double>(n)) / sqrt_a;
        for (int q = 0; q < n_quad_; ++q) dh[n][q] = c * h[n - 1][q];
    }

    const long nn = n_nodes();
    w2_.resize(nn);
    for (int q1 = 0; q1 < n_quad_; ++q1)
        for (int q2 = 0; q2 < n_quad_; ++q2)
            w2_[static_cast<long>(q1) * n_quad_ + q2] = gh_.weights[q1] * gh_.weights[q2];

    val_.assign(modes_.size(), std::vector<double>(nn));
    dr1_.assign(modes_.size(), std::vector<double>(nn));
    dr2_.assign(modes_.size(), std::vector<double>(nn));
    for (size_t m = 0; m < modes_.size(); ++m) {
        const int k1 = modes_[m].k1, k2 = modes_[m].k2;
        for (int q1 = 0; q1 < n_quad_; ++q1)
            for (int q2 = 0; q2 < n_quad_; ++q2) {
                const long q = static_cast<long>(q1) * n_quad_ + q2;
                val_[m][q] = h[k1][q1] * h[k2][q2];
                dr1_[m][q] = dh[k1][q1] * h[k2][q2];
                dr2_[m][q] = h[k1][q1] * dh[k2][q2];
            }
    }
}

int HermiteBasis::mode_index(int k1, int k2) const {
    if (k1 < 0 || k2 < 0 || k1 + k2 > max_degree_) return -1;
    return index_[static_cast<size_t>(k1) * (max_degree_ + 1) + k2];
}

double HermiteBasis::eval_at_node(std::span<const double> c, long q) const {
    double v = 0.0;
    for (size_t m = 0; m < val_.size(); ++m) v += c[m] * val_[m][q];
    return v;
}

HermiteField::HermiteField(const TorusGrid2D& grid, const HermiteBasis& basis) {
    modes_.reserve(basis.n_modes());
    for (int m = 0; m < basis.n_modes(); ++m) modes_.emplace_back(grid);
}

void HermiteField::gather_cell(long cell, std::span<double> out) const {
    for (size_t m = 0; m < modes_.size(); ++m) out[m] = modes_[m][cell];
}

void HermiteField::scatter_cell(long cell, std::span<const double> in) {
    for (size_t m = 0; m < modes_.size(); ++m) modes_[m][cell] = in[m];
}

void HermiteField::fill_uniform(std::span<const double> coeffs) {
    for (size_t m = 0; m < modes_.size(); ++m) modes_[m].fill(coeffs[m]);
}

bool HermiteField::all_finite(long* bad_cell, int* bad_mode) const {
    for (size_t m = 0; m < modes_.size(); ++m) {
        long cell = -1;
        if (!field_all_finite(modes_[m], &cell)) {
            if (bad_cell) *bad_cell = cell;
            if (bad_mode) *bad_mode = static_cast<int>(m);
            return false;
        }
    }
    return true;
}

}  // namespace peterlin

#include "peterlin/grid.hpp"

#include <cmath>

namespace peterlin {

double field_sum(const ScalarField& f) {
    double s = 0.0;
    for (long i = 0; i < f.size(); ++i) s += f[i];
    return s;
}

double field_mean(const ScalarField& f) { return field_sum(f) / static_cast<double>(f.size()); }

double field_min(const ScalarField& f) {
    double m = f[0];
    for (long i = 1; i < f.size(); ++i)
        if (f[i] < m) m = f[i];
    return m;
}

double field_max(const ScalarField& f) {
    double m = f[0];
    for (long i = 1; i < f.size(); ++i)
        if (f[i] > m) m = f[i];
    return m;
}

double field_max_abs(const ScalarField& f) {
    double m = 0.0;
    for (long i = 0; i < f.size(); ++i) {
        double v = std::abs(f[i]);
        if (v > m) m = v;
    }
    return m;
}

bool field_all_finite(const ScalarField& f, long* first_bad_cell) {
    for (long i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) {
            if (first_bad_cell) *first_bad_cell = i;
            return false;
        }
    }
    return true;
}

ScalarField trace_field(const TensorField& c) {
    ScalarField out = c.xx;
    for (long i = 0; i < out.size(); ++i) out[i] += c.yy[i];
    return out;
}

double min_conformation_eigenvalue(const TensorField& c) {
    double m = c.cell(0).min_eigenvalue();
    for (long i = 1; i < c.xx.size(); ++i) {
        double v = c.cell(i).min_eigenvalue();
        if (v < m) m = v;
    }
    return m;
}

}  // namespace peterlin

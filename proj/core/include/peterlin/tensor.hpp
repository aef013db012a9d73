#pragma once

#include <cmath>

namespace peterlin {

/// Symmetric 2x2 matrix value, stored as (xx, xy, yy).
struct SymMat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double trace() const { return xx + yy; }
    double det() const { return xx * yy - xy * xy; }

    /// Smaller eigenvalue of the symmetric matrix.
    double min_eigenvalue() const {
        double half_tr = 0.5 * (xx + yy);
        double disc = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
        return half_tr - disc;
    }
    double max_eigenvalue() const {
        double half_tr = 0.5 * (xx + yy);
        double disc = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
        return half_tr + disc;
    }
    bool is_spd() const { return min_eigenvalue() > 0.0; }
};

/// General 2x2 matrix value (e.g. a velocity gradient at one cell).
struct Mat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yx = 0.0;
    double yy = 0.0;

    double trace() const { return xx + yy; }
};

/// Symmetric part of G*C + C*G^T, assembled so the result is symmetric
/// by construction (single xy entry).
inline SymMat2 stretch(const Mat2& g, const SymMat2& c) {
    return SymMat2{
        2.0 * (g.xx * c.xx + g.xy * c.xy),
        g.xx * c.xy + g.xy * c.yy + c.xx * g.yx + c.xy * g.yy,
        2.0 * (g.yx * c.xy + g.yy * c.yy),
    };
}

}  // namespace peterlin

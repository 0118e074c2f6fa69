#pragma once

#include <cstdint>
#include <vector>

#include "oplab/linalg.hpp"

namespace oplab {

// Subspace of R (+)_1 R^d: first row is the scalar coordinate, the rest the
// l2 block. Columns span the subspace (linearly independent).
struct BanachFrame {
    int d = 0;          // l2 truncation dimension
    RealMatrix basis;   // (1+d) x m

    BanachFrame(int dim, RealMatrix b);
};

struct CInvariant {
    double c;                  // norm of the scalar projection on the subspace
    std::vector<double> maximizer;  // attaining unit vector (1+d coords)
};

CInvariant c_invariant(const BanachFrame& Y);

// t + sqrt((1-t)^2 + 1), strictly increasing on [0,1]
double phi_fn(double t);

// span[t (+) (1-t) e_1, 0 (+) e_2, ...] truncated to d l2 coordinates
BanachFrame make_Phi(double t, int d);

struct WeakSupCheck {
    double sup_norm;  // max_i || x + y_i ||_1 over the canonical block
    double phi_c;     // phi applied to the invariant
};

WeakSupCheck weak_sup_check(const BanachFrame& Y);

// the invariant decides isometry (and the bi-embeddability variants)
bool isometric(const BanachFrame& Y, const BanachFrame& Z, double tol = 1e-9);

// membership in U_t = { s (+) xi : |s| > t, ||xi|| < sqrt(1 - t^2) }
bool ut_member(const std::vector<double>& x, double t);

}  // namespace oplab

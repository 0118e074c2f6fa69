#include "oplab/banach.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace oplab {

namespace {

// null-space basis of a row vector r (m columns), m x (m - rank)
RealMatrix row_null_space(const Eigen::RowVectorXd& r) {
    Eigen::FullPivLU<RealMatrix> lu(r);
    return lu.kernel();
}

}  // namespace

BanachFrame::BanachFrame(int dim, RealMatrix b) : d(dim), basis(std::move(b)) {
    if (d < 1) throw InvalidInputError("BanachFrame: ambient dimension must be >= 1");
    if (basis.rows() != d + 1 || basis.cols() < 1)
        throw InvalidInputError("BanachFrame: basis must be (1+d) x m, m >= 1");
    if (!basis.allFinite()) throw InvalidInputError("BanachFrame: non-finite entries");
    Eigen::ColPivHouseholderQR<RealMatrix> qr(basis);
    if (qr.rank() < basis.cols())
        throw PreconditionError("BanachFrame: columns are linearly dependent");
}

CInvariant c_invariant(const BanachFrame& Y) {
    Eigen::RowVectorXd r = Y.basis.row(0);
    RealMatrix W = Y.basis.bottomRows(Y.d);
    double scale = Y.basis.norm();
    CInvariant out;
    if (r.norm() <= 1e-12 * std::max(1.0, scale)) {
        out.c = 0.0;
        Eigen::VectorXd xi = Y.basis.col(0).tail(Y.d);
        xi /= xi.norm();
        out.maximizer.assign(Y.d + 1, 0.0);
        for (int i = 0; i < Y.d; ++i) out.maximizer[i + 1] = xi(i);
        return out;
    }
    // minimize ||W z||_2 over the affine slice r z = 1
    Eigen::VectorXd z0 = r.transpose() / r.squaredNorm();
    RealMatrix N = row_null_space(r);
    Eigen::VectorXd z = z0;
    if (N.cols() > 0) {
        RealMatrix WN = W * N;
        Eigen::VectorXd y =
            WN.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(-W * z0);
        z = z0 + N * y;
    }
    Eigen::VectorXd xi = W * z;
    double m0 = xi.norm();
    out.c = 1.0 / (1.0 + m0);
    // attaining vector c (+) c * xi, of norm c (1 + m0) = 1
    out.maximizer.assign(Y.d + 1, 0.0);
    out.maximizer[0] = out.c;
    for (int i = 0; i < Y.d; ++i) out.maximizer[i + 1] = out.c * xi(i);
    return out;
}

double phi_fn(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw RangeError("phi_fn: argument outside [0,1]");
    return t + std::sqrt((1.0 - t) * (1.0 - t) + 1.0);
}

BanachFrame make_Phi(double t, int d) {
    if (!(t >= 0.0 && t <= 1.0)) throw RangeError("make_Phi: t outside [0,1]");
    if (d < 2) throw InvalidInputError("make_Phi: dimension must be >= 2");
    RealMatrix b = RealMatrix::Zero(d + 1, d);
    b(0, 0) = t;
    b(1, 0) = 1.0 - t;
    for (int j = 1; j < d; ++j) b(j + 1, j) = 1.0;
    return BanachFrame(d, b);
}

WeakSupCheck weak_sup_check(const BanachFrame& Y) {
    CInvariant ci = c_invariant(Y);
    Eigen::RowVectorXd r = Y.basis.row(0);
    RealMatrix W = Y.basis.bottomRows(Y.d);

    // l2 parts of Y intersected with {t = 0}
    RealMatrix Z;
    if (r.norm() <= 1e-12 * std::max(1.0, Y.basis.norm())) {
        Z = W;
    } else {
        RealMatrix N = row_null_space(r);
        if (N.cols() == 0)
            throw Error("weak_sup_check: the subspace has no block inside the l2 part");
        Z = W * N;
    }
    // attaining direction in l2
    Eigen::VectorXd xi0(Y.d);
    for (int i = 0; i < Y.d; ++i) xi0(i) = ci.maximizer[i + 1];
    double xin = xi0.norm();
    if (xin > 1e-14) xi0 /= xin;
    // orthonormal block orthogonal to xi0
    RealMatrix P = Z - xi0 * (xi0.transpose() * Z);
    Eigen::BDCSVD<RealMatrix> dec(P, Eigen::ComputeThinU);
    std::vector<Eigen::VectorXd> ys;
    for (Eigen::Index i = 0; i < dec.singularValues().size(); ++i)
        if (dec.singularValues()(i) > 1e-10) ys.push_back(dec.matrixU().col(i));
    if (ys.empty())
        throw Error("weak_sup_check: no orthonormal block orthogonal to the attaining "
                    "direction; the frame is too small to canonicalize");

    double sup = 0.0;
    Eigen::VectorXd x_l2(Y.d);
    for (int i = 0; i < Y.d; ++i) x_l2(i) = ci.maximizer[i + 1];
    for (const auto& y : ys)
        sup = std::max(sup, std::abs(ci.maximizer[0]) + (x_l2 + y).norm());
    return {sup, phi_fn(ci.c)};
}

bool isometric(const BanachFrame& Y, const BanachFrame& Z, double tol) {
    if (tol < 0.0) throw InvalidInputError("isometric: negative tolerance");
    return std::abs(c_invariant(Y).c - c_invariant(Z).c) <= tol;
}

bool ut_member(const std::vector<double>& x, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw RangeError("ut_member: t outside [0,1]");
    if (x.empty()) throw InvalidInputError("ut_member: empty vector");
    double s = x[0];
    double norm2 = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) norm2 += x[i] * x[i];
    return std::abs(s) > t && std::sqrt(norm2) < std::sqrt(1.0 - t * t);
}

}  // namespace oplab

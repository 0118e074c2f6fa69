#include "oplab/linalg.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace oplab {

namespace {

void require_nonempty(const ComplexMatrix& m, const char* who) {
    if (m.rows() == 0 || m.cols() == 0)
        throw InvalidInputError(std::string(who) + ": dimension-zero matrix");
    if (!m.allFinite())
        throw InvalidInputError(std::string(who) + ": non-finite entries");
}

}  // namespace

SvdResult svd(const ComplexMatrix& m) {
    require_nonempty(m, "svd");
    Eigen::JacobiSVD<ComplexMatrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out;
    out.left = dec.matrixU();
    out.right = dec.matrixV();
    const auto& s = dec.singularValues();
    out.spectrum.values.assign(s.data(), s.data() + s.size());
    return out;
}

MatrixNorms matrix_norms(const ComplexMatrix& m) {
    require_nonempty(m, "matrix_norms");
    Eigen::JacobiSVD<ComplexMatrix> dec(m);
    const auto& s = dec.singularValues();
    double op = s.size() > 0 ? s(0) : 0.0;
    double hs2 = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) hs2 += s(i) * s(i);
    return {op, std::sqrt(hs2)};
}

double op_norm(const ComplexMatrix& m) { return matrix_norms(m).op_norm; }

double hs_norm(const ComplexMatrix& m) { return matrix_norms(m).hs_norm; }

ComplexMatrix orthonormalize(const ComplexMatrix& frame) {
    require_nonempty(frame, "orthonormalize");
    constexpr double kTol = 1e-10;
    ComplexMatrix q = frame;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        // two MGS passes keep the Gram residual near machine precision
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index k = 0; k < j; ++k) {
                std::complex<double> proj = q.col(k).adjoint() * q.col(j);
                q.col(j) -= proj * q.col(k);
            }
        }
        double norm = q.col(j).norm();
        if (norm <= kTol * std::max(1.0, frame.col(j).norm()))
            throw RankDeficiencyError(static_cast<std::size_t>(j) + 1,
                                      "orthonormalize: column " + std::to_string(j + 1) +
                                          " is linearly dependent on its predecessors");
        q.col(j) /= norm;
    }
    return q;
}

}  // namespace oplab

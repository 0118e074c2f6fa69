#pragma once

#include <Eigen/Dense>
#include <vector>

#include "oplab/errors.hpp"

namespace oplab {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

// Nonnegative singular values in nonincreasing order.
struct SingularSpectrum {
    std::vector<double> values;

    double at(std::size_t k) const {  // 1-based, 0 beyond the stored range
        return k >= 1 && k <= values.size() ? values[k - 1] : 0.0;
    }
    std::size_t size() const { return values.size(); }
};

struct SvdResult {
    ComplexMatrix left;        // orthonormal columns
    SingularSpectrum spectrum;
    ComplexMatrix right;       // orthonormal columns; M = left * diag * right^*
};

// Thin SVD. Deterministic for fixed input bits.
SvdResult svd(const ComplexMatrix& m);

struct MatrixNorms {
    double op_norm;  // largest singular value
    double hs_norm;  // Hilbert-Schmidt (Frobenius)
};

MatrixNorms matrix_norms(const ComplexMatrix& m);

double op_norm(const ComplexMatrix& m);
double hs_norm(const ComplexMatrix& m);

// Modified Gram-Schmidt with re-orthogonalization. Throws RankDeficiencyError
// naming the offending column when the frame is not full rank at tol 1e-10.
ComplexMatrix orthonormalize(const ComplexMatrix& frame);

}  // namespace oplab

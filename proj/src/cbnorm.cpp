#include "oplab/cbnorm.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace oplab {

namespace {

struct KnapsackItem {
    std::size_t idx;
    double value;  // objective per unit weight
    double cost;   // budget per unit weight
};

// maximize sum value_i s_i subject to sum cost_i s_i <= 1, 0 <= s_i <= 1;
// classic fractional knapsack, ties broken by index for determinism
std::vector<double> fractional_knapsack(std::vector<KnapsackItem> items) {
    std::size_t n = items.size();
    std::vector<double> s(n, 0.0);
    std::vector<double> out(n, 0.0);
    double budget = 1.0;
    // free items first
    std::vector<KnapsackItem> paid;
    for (const auto& it : items) {
        if (it.value <= 0.0) continue;
        if (it.cost <= 0.0)
            out[it.idx] = 1.0;
        else
            paid.push_back(it);
    }
    std::stable_sort(paid.begin(), paid.end(), [](const KnapsackItem& a, const KnapsackItem& b) {
        double ra = a.value / a.cost, rb = b.value / b.cost;
        if (ra != rb) return ra > rb;
        return a.idx < b.idx;
    });
    for (const auto& it : paid) {
        if (budget <= 0.0) break;
        double take = std::min(1.0, budget / it.cost);
        out[it.idx] = take;
        budget -= take * it.cost;
    }
    return out;
}

double knapsack_objective(const std::vector<KnapsackItem>& items,
                          const std::vector<double>& s) {
    double v = 0.0;
    for (const auto& it : items) v += it.value * s[it.idx];
    return v;
}

ComplexMatrix hermitian(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

// feasible objective value from the eigenvectors of M - mu N
double primal_from_mu(const ComplexMatrix& M, const ComplexMatrix& N, double mu,
                      ComplexMatrix* best_v) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian(M - mu * N));
    const ComplexMatrix& X = es.eigenvectors();
    std::vector<KnapsackItem> items;
    for (Eigen::Index i = 0; i < X.cols(); ++i) {
        ComplexMatrix x = X.col(i);
        double val = std::real((x.adjoint() * M * x)(0, 0));
        double cost = std::real((x.adjoint() * N * x)(0, 0));
        items.push_back({static_cast<std::size_t>(i), val, std::max(0.0, cost)});
    }
    std::vector<double> s = fractional_knapsack(items);
    double obj = knapsack_objective(items, s);
    if (best_v) {
        ComplexMatrix v = ComplexMatrix::Zero(X.rows(), X.rows());
        for (Eigen::Index i = 0; i < X.cols(); ++i)
            v += s[static_cast<std::size_t>(i)] * X.col(i) * X.col(i).adjoint();
        *best_v = v;
    }
    return obj;
}

double dual_at_mu(const ComplexMatrix& M, const ComplexMatrix& N, double mu) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian(M - mu * N));
    double pos = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        pos += std::max(0.0, es.eigenvalues()(i));
    return mu + pos;
}

}  // namespace

CbNormResult cb_norm_diag_identity(const WeightSequence& alpha,
                                   const WeightSequence& beta, std::uint64_t depth) {
    if (depth == 0) throw InvalidInputError("cb_norm_diag_identity: empty truncation");
    std::vector<KnapsackItem> items;
    for (std::uint64_t i = 1; i <= depth; ++i) {
        double a = alpha.at(i), b = beta.at(i);
        items.push_back({static_cast<std::size_t>(i - 1), b * b, a * a});
    }
    std::vector<double> s = fractional_knapsack(items);
    double sup2 = knapsack_objective(items, s);
    CbNormResult r;
    r.value = std::sqrt(std::max(1.0, sup2));
    ComplexMatrix w = ComplexMatrix::Zero(static_cast<Eigen::Index>(depth),
                                          static_cast<Eigen::Index>(depth));
    for (std::uint64_t i = 0; i < depth; ++i) w(i, i) = std::sqrt(s[i]);
    r.witness = w;
    r.method = "exact-greedy";
    r.certified = true;
    r.upper_bound = r.value;
    return r;
}

CbNormResult cb_norm_general(const ComplexMatrix& A, const ComplexMatrix& B,
                             const ComplexMatrix& T, std::uint64_t seed) {
    if (A.rows() == 0 || B.rows() == 0 || T.rows() == 0 || T.cols() == 0)
        throw InvalidInputError("cb_norm_general: dimension-zero input");
    if (op_norm(A) > 1.0 + 1e-12 || op_norm(B) > 1.0 + 1e-12)
        throw PreconditionError("cb_norm_general: A and B must be contractions");
    if (A.cols() != T.cols() || B.cols() != T.rows())
        throw InvalidInputError("cb_norm_general: incompatible dimensions");

    ComplexMatrix M = hermitian(T.adjoint() * B.adjoint() * B * T);
    ComplexMatrix N = hermitian(A.adjoint() * A);

    // dual: min over mu >= 0 of mu + sum of positive eigenvalues of M - mu N
    double lo = 0.0, hi = std::max(1.0, dual_at_mu(M, N, 0.0));
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = dual_at_mu(M, N, c), fd = dual_at_mu(M, N, d);
    for (int it = 0; it < 200; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = dual_at_mu(M, N, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = dual_at_mu(M, N, d);
        }
    }
    double mu_star = (a + b) / 2.0;
    double dual2 = std::min({dual_at_mu(M, N, mu_star), fc, fd, dual_at_mu(M, N, 0.0)});

    // primal: knapsack over eigenvectors of M - mu N on a mu sweep
    double best = 0.0;
    ComplexMatrix best_v;
    std::vector<double> mus = {0.0, mu_star, mu_star / 2, mu_star * 2, (a + 3 * b) / 4,
                               (3 * a + b) / 4, hi};
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
    std::uniform_real_distribution<double> un(0.0, hi);
    for (int k = 0; k < 8; ++k) mus.push_back(un(rng));
    for (double mu : mus) {
        ComplexMatrix v;
        double obj = primal_from_mu(M, N, std::max(0.0, mu), &v);
        if (obj > best) {
            best = obj;
            best_v = v;
        }
    }

    CbNormResult r;
    double tnorm = op_norm(T);
    r.value = std::max(tnorm, std::sqrt(std::max(0.0, best)));
    r.upper_bound = std::max(tnorm, std::sqrt(std::max(dual2, 0.0)));
    r.method = "optimizer";
    r.certified = false;
    if (best_v.rows() > 0) {
        // u = V sqrt(weights) from the spectral form of v
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian(best_v));
        ComplexMatrix u = ComplexMatrix::Zero(best_v.rows(), best_v.cols());
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            double w = std::max(0.0, std::min(1.0, es.eigenvalues()(i)));
            u.col(i) = std::sqrt(w) * es.eigenvectors().col(i);
        }
        r.witness = u;
    }
    return r;
}

double amplified_lower_bound(std::uint64_t index_count, double w_src, double w_dst) {
    if (index_count < 1)
        throw InvalidInputError("amplified_lower_bound: index count must be >= 1");
    if (index_count > (std::uint64_t{1} << 50))
        throw OverflowError("amplified_lower_bound: index count beyond the exact range");
    if (w_src < 0.0 || w_src > 1.0 || w_dst < 0.0 || w_dst > 1.0)
        throw InvalidInputError("amplified_lower_bound: weights must lie in [0,1]");
    double n = static_cast<double>(index_count);
    double dst2 = std::max(1.0, n * w_dst * w_dst);
    double src2 = std::max(1.0, n * w_src * w_src);
    return std::sqrt(dst2 / src2);
}

SameBasisCheck same_basis_check(const WeightSequence& alpha, const WeightSequence& beta,
                                const ComplexMatrix& U, std::uint64_t depth) {
    if (depth == 0 || U.rows() != U.cols() ||
        U.rows() != static_cast<Eigen::Index>(depth))
        throw InvalidInputError("same_basis_check: U must be depth x depth");
    SvdResult dec = svd(U);
    double smin = dec.spectrum.at(depth);
    if (smin <= 1e-12 * dec.spectrum.at(1))
        throw PreconditionError("same_basis_check: U is singular on the truncation");
    // explicit inverse via the factorization
    ComplexMatrix sinv = ComplexMatrix::Zero(U.rows(), U.rows());
    for (std::uint64_t i = 1; i <= depth; ++i) sinv(i - 1, i - 1) = 1.0 / dec.spectrum.at(i);
    ComplexMatrix inv = dec.right * sinv * dec.left.adjoint();

    ComplexMatrix Ad = ComplexMatrix::Zero(U.rows(), U.rows());
    ComplexMatrix Bd = ComplexMatrix::Zero(U.rows(), U.rows());
    for (std::uint64_t i = 1; i <= depth; ++i) {
        Ad(i - 1, i - 1) = alpha.at(i);
        Bd(i - 1, i - 1) = beta.at(i);
    }
    double c1 = cb_norm_general(Ad, Bd, U).upper_bound;
    double c2 = cb_norm_general(Bd, Ad, inv).upper_bound;
    SameBasisCheck out;
    out.C = std::max(c1, c2);
    double fwd = cb_norm_diag_identity(alpha, beta, depth).value;
    double bwd = cb_norm_diag_identity(beta, alpha, depth).value;
    out.id_product = fwd * bwd;
    double c4 = out.C * out.C * out.C * out.C;
    out.bound_holds = out.id_product <= 16.0 * c4 + 1e-6;
    return out;
}

}  // namespace oplab

#include "oplab/subspaces.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

namespace oplab {

namespace {

ComplexMatrix random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
    return m;
}

double rayleigh(const ComplexMatrix& G, const ComplexMatrix& x) {
    return std::real((x.adjoint() * G * x)(0, 0));
}

// orthonormal basis of span(basis) intersected with the orthocomplement of
// the columns of excl; basis columns must be orthonormal, excl may point
// anywhere (the intersection is the kernel of excl^* basis in coordinates)
ComplexMatrix complement_within(const ComplexMatrix& basis, const ComplexMatrix& excl) {
    if (excl.cols() == 0) return basis;
    ComplexMatrix M = excl.adjoint() * basis;
    Eigen::JacobiSVD<ComplexMatrix> dec(M, Eigen::ComputeFullV);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < dec.singularValues().size(); ++i)
        if (dec.singularValues()(i) > 1e-10) ++rank;
    if (rank >= basis.cols()) return ComplexMatrix(basis.rows(), 0);
    return basis * dec.matrixV().rightCols(basis.cols() - rank);
}

}  // namespace

SubspaceFrame::SubspaceFrame(WeightSequence amb, std::uint64_t N, const ComplexMatrix& raw)
    : ambient(std::move(amb)), depth(N) {
    if (N == 0) throw InvalidInputError("SubspaceFrame: depth must be >= 1");
    if (raw.rows() != static_cast<Eigen::Index>(2 * N))
        throw InvalidInputError("SubspaceFrame: basis must have 2N rows");
    if (raw.cols() < 1) throw InvalidInputError("SubspaceFrame: empty basis");
    basis = orthonormalize(raw);
}

ComplexMatrix SubspaceFrame::ambient_op() const {
    Eigen::Index n = static_cast<Eigen::Index>(depth);
    ComplexMatrix A = ComplexMatrix::Zero(2 * n, 2 * n);
    for (std::uint64_t i = 1; i <= depth; ++i) A(i - 1, i - 1) = ambient.at(i);
    return A;
}

SingularSpectrum restricted_spectrum(const SubspaceFrame& Y) {
    SvdResult dec = svd(Y.ambient_op() * Y.basis);
    // interlacing with the ambient spectrum
    std::vector<double> amb = Y.ambient.materialize(Y.depth);
    std::sort(amb.begin(), amb.end(), std::greater<double>());
    for (std::size_t k = 1; k <= dec.spectrum.size(); ++k) {
        double so = k <= amb.size() ? amb[k - 1] : 0.0;
        if (dec.spectrum.at(k) > so + 1e-10)
            throw Error("restricted_spectrum: interlacing violated at index " +
                        std::to_string(k));
    }
    return dec.spectrum;
}

WielandtResult wielandt_check(const SubspaceFrame& Y,
                              const std::vector<std::size_t>& indices, int trials,
                              std::uint64_t seed) {
    if (indices.empty()) throw InvalidInputError("wielandt_check: no indices");
    for (std::size_t j = 1; j < indices.size(); ++j)
        if (indices[j] <= indices[j - 1])
            throw InvalidInputError("wielandt_check: indices must increase");
    const std::size_t d = Y.dim();
    if (indices.back() > d)
        throw RangeError("wielandt_check: index exceeds the subspace dimension");

    ComplexMatrix A = Y.ambient_op();
    // work in frame coordinates: G = (A basis)^* (A basis)
    ComplexMatrix AB = A * Y.basis;
    ComplexMatrix G = AB.adjoint() * AB;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((G + G.adjoint()) / 2.0);
    // eigenvalues ascending in Eigen; singular values descending
    std::vector<double> lam(es.eigenvalues().data(), es.eigenvalues().data() + d);
    double closed = 0.0;
    for (std::size_t idx : indices) closed += lam[d - idx];

    const std::size_t k = indices.size();
    std::mt19937_64 rng(seed);

    // chain value: minimize sum of Rayleigh quotients over flag-compatible
    // orthonormal tuples. Coordinate-wise reoptimization is inert here (each
    // x_j is pinned by the vectors after it), so the search perturbs a prefix
    // vector and greedily recompletes the suffix, shrinking the step size
    auto chain_value = [&](const std::vector<ComplexMatrix>& E) {
        auto pick_min = [&](const ComplexMatrix& W) {
            ComplexMatrix Gw = W.adjoint() * G * W;
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> ew((Gw + Gw.adjoint()) / 2.0);
            return ComplexMatrix(W * ew.eigenvectors().col(0));
        };
        // extend a feasible prefix to a full tuple, smallest eigenvector first
        auto complete = [&](std::vector<ComplexMatrix> xs) -> std::vector<ComplexMatrix> {
            ComplexMatrix picked(G.rows(), static_cast<Eigen::Index>(xs.size()));
            for (std::size_t i = 0; i < xs.size(); ++i)
                picked.col(static_cast<Eigen::Index>(i)) = xs[i];
            for (std::size_t j = xs.size(); j < k; ++j) {
                ComplexMatrix W = complement_within(E[j], picked);
                if (W.cols() == 0) return {};
                ComplexMatrix x = pick_min(W);
                xs.push_back(x);
                ComplexMatrix np(G.rows(), picked.cols() + 1);
                np << picked, x;
                picked = np;
            }
            return xs;
        };
        auto total_of = [&](const std::vector<ComplexMatrix>& xs) {
            double total = 0.0;
            for (const auto& x : xs) total += rayleigh(G, x);
            return total;
        };

        std::vector<ComplexMatrix> best;
        double best_total = std::numeric_limits<double>::infinity();
        auto offer = [&](std::vector<ComplexMatrix> xs) {
            if (xs.empty()) return;
            double t = total_of(xs);
            if (t < best_total) {
                best_total = t;
                best = std::move(xs);
            }
        };

        // greedy start plus a start seeded by the target eigenvectors
        offer(complete({}));
        {
            std::vector<ComplexMatrix> xs;
            ComplexMatrix picked(G.rows(), 0);
            for (std::size_t j = 0; j < k; ++j) {
                ComplexMatrix W = complement_within(E[j], picked);
                if (W.cols() == 0) break;
                ComplexMatrix u =
                    es.eigenvectors().col(static_cast<Eigen::Index>(d - indices[j]));
                ComplexMatrix x = W * (W.adjoint() * u);
                double nrm = x.norm();
                x = nrm < 1e-8 ? pick_min(W) : ComplexMatrix(x / nrm);
                xs.push_back(x);
                ComplexMatrix np(G.rows(), picked.cols() + 1);
                np << picked, x;
                picked = np;
            }
            if (xs.size() == k) offer(std::move(xs));
        }

        // the true chain minimum never exceeds the eigenvalue sum, so a
        // witness at or below it always exists; search until one is found
        const double target = closed + 1e-10;
        for (int t = 0; t < 32 && best_total > target; ++t) {
            std::vector<ComplexMatrix> xs;
            ComplexMatrix picked(G.rows(), 0);
            bool ok = true;
            for (std::size_t j = 0; j < k; ++j) {
                ComplexMatrix W = complement_within(E[j], picked);
                if (W.cols() == 0) {
                    ok = false;
                    break;
                }
                ComplexMatrix x = W * random_complex(W.cols(), 1, rng);
                x /= x.norm();
                xs.push_back(x);
                ComplexMatrix np(G.rows(), picked.cols() + 1);
                np << picked, x;
                picked = np;
            }
            if (ok) offer(std::move(xs));
        }

        double sigma = 0.5;
        while (sigma > 1e-8 && best_total > target) {
            bool improved = false;
            for (int it = 0; it < 12 * static_cast<int>(k); ++it) {
                std::size_t j = rng() % k;
                std::vector<ComplexMatrix> prefix(best.begin(),
                                                  best.begin() + static_cast<long>(j));
                ComplexMatrix picked(G.rows(), static_cast<Eigen::Index>(j));
                for (std::size_t i = 0; i < j; ++i)
                    picked.col(static_cast<Eigen::Index>(i)) = best[i];
                ComplexMatrix W = complement_within(E[j], picked);
                if (W.cols() == 0) continue;
                ComplexMatrix x =
                    W * (W.adjoint() * best[j]) + sigma * W * random_complex(W.cols(), 1, rng);
                double nrm = x.norm();
                if (nrm < 1e-12) continue;
                prefix.push_back(x / nrm);
                auto cand = complete(std::move(prefix));
                if (!cand.empty() && total_of(cand) < best_total - 1e-13) {
                    best_total = total_of(cand);
                    best = std::move(cand);
                    improved = true;
                }
            }
            if (!improved) sigma *= 0.5;
        }
        return best_total;
    };

    // the singular-vector chain: E_j spanned by the top i_j eigenvectors
    std::vector<ComplexMatrix> sv_chain;
    for (std::size_t idx : indices) {
        ComplexMatrix E(G.rows(), idx);
        for (std::size_t c = 0; c < idx; ++c) E.col(c) = es.eigenvectors().col(d - 1 - c);
        sv_chain.push_back(E);
    }
    double best_oracle = chain_value(sv_chain);

    for (int t = 0; t < trials; ++t) {
        std::vector<ComplexMatrix> chain;
        ComplexMatrix full = orthonormalize(random_complex(d, indices.back(), rng));
        for (std::size_t idx : indices) chain.push_back(full.leftCols(idx));
        best_oracle = std::max(best_oracle, chain_value(chain));
    }
    return {closed, best_oracle};
}

CanonicalBasis canonical_basis(const SubspaceFrame& Y) {
    ComplexMatrix A = Y.ambient_op();
    ComplexMatrix AB = A * Y.basis;
    const std::size_t d = Y.dim();
    std::vector<double> beta(d);
    for (std::size_t i = 0; i < d; ++i) beta[i] = AB.col(i).norm();

    ComplexMatrix G = AB.adjoint() * AB;
    CanonicalBasis out;
    out.T = ComplexMatrix::Identity(d, d);
    if (d <= 10) {
        // explicit average over all sign patterns
        ComplexMatrix avg = ComplexMatrix::Zero(d, d);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
            ComplexMatrix L = ComplexMatrix::Zero(d, d);
            for (std::size_t i = 0; i < d; ++i) L(i, i) = (mask >> i) & 1 ? -1.0 : 1.0;
            avg += L.adjoint() * G * L;
        }
        avg /= std::pow(2.0, static_cast<double>(d));
        ComplexMatrix B2 = ComplexMatrix::Zero(d, d);
        for (std::size_t i = 0; i < d; ++i) B2(i, i) = beta[i] * beta[i];
        out.averaging_residual = (avg - B2).cwiseAbs().maxCoeff();
        out.exact_average = true;
    } else {
        // the sign average is exactly the diagonal of the Gram matrix
        double res = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            res = std::max(res, std::abs(std::real(G(i, i)) - beta[i] * beta[i]));
        out.averaging_residual = res;
        out.exact_average = false;
    }
    for (double& b : beta) b = std::min(1.0, b);
    out.beta = WeightSequence::from_prefix(beta);
    return out;
}

WeightSequence SubbasisSchedule::weights() const {
    Tail t;
    t.kind = TailKind::Subbasis;
    t.a = a;
    t.growth = growth;
    return WeightSequence({}, t);
}

std::uint64_t SubbasisSchedule::cutpoint(std::uint64_t k) const {
    return weights().subbasis_cutpoint(k);
}

double SubbasisSchedule::level_weight(std::uint64_t k) const {
    return std::pow(a, -static_cast<double>(k));
}

SubbasisEmbedding subbasis_embed(const SubbasisSchedule& schedule,
                                 const SubspaceFrame& Y) {
    constexpr double kKernelTol = 1e-8;
    SingularSpectrum spec = restricted_spectrum(Y);
    const std::size_t d = Y.dim();
    WeightSequence sched = schedule.weights();

    SubbasisEmbedding out;
    out.pi.resize(d, 0);
    std::vector<double> src, dst;
    std::uint64_t next_odd = 1;
    std::size_t i = 1;
    std::uint64_t k = 0;
    std::uint64_t block_used = 0;
    for (; i <= d; ++i) {
        double b = spec.at(i);
        if (b <= kKernelTol) break;  // kernel part handled below
        // block k holds a^{1-k} >= b > a^{-k}; exact boundary goes down a block
        while (!(b > schedule.level_weight(k + 1)) ) {
            ++k;
            block_used = 0;
        }
        std::uint64_t Nk = schedule.cutpoint(k + 1), Nk1 = schedule.cutpoint(k + 2);
        if (block_used >= Nk1 - Nk)
            throw PreconditionError("subbasis_embed: block " + std::to_string(k) +
                                    " overflows the schedule");
        out.pi[i - 1] = 2 * (Nk + block_used);
        ++block_used;
        src.push_back(b);
        dst.push_back(schedule.level_weight(k + 1));
    }
    for (; i <= d; ++i) {
        out.pi[i - 1] = next_odd;
        next_odd += 2;
        src.push_back(0.0);
        dst.push_back(0.0);
    }
    // distortion of the diagonal identity between the two weight patterns
    WeightSequence from(src), to(dst);
    double fwd = cb_norm_diag_identity(from, to, d).value;
    double bwd = cb_norm_diag_identity(to, from, d).value;
    out.distortion = fwd * bwd;
    return out;
}

NoncomplementedBound noncomplemented_bound(const WeightSequence& alpha,
                                           const WeightSequence& beta,
                                           std::uint64_t K, std::uint64_t N) {
    if (N == 0) throw InvalidInputError("noncomplemented_bound: N must be >= 1");
    for (std::uint64_t i = K + 1; i < K + N; ++i)
        if (beta.at(i + 1) > beta.at(i) + 1e-12)
            throw PreconditionError("noncomplemented_bound: beta must be nonincreasing");
    double sum = 0.0;
    for (std::uint64_t i = K + 1; i <= K + N; ++i) {
        double g = alpha.at(i) * beta.at(i);
        sum += g * g;
    }
    NoncomplementedBound out;
    out.bound = std::sqrt(sum) / 2.0;

    // divergence of sum (alpha_i beta_i)^2, decided by the tail rules
    out.divergence_certified = false;
    const Tail& ta = alpha.tail();
    const Tail& tb = beta.tail();
    if (ta.kind == TailKind::Power && tb.kind == TailKind::Power)
        out.divergence_certified = 2.0 * (ta.power + tb.power) <= 1.0;
    else if (tb.kind == TailKind::Power && tb.power == 0.0 && tb.coeff > 0.0)
        out.divergence_certified = alpha.hs_sum_diverges().value_or(false);
    else if (ta.kind == TailKind::Power && ta.power == 0.0 && ta.coeff > 0.0)
        out.divergence_certified = beta.hs_sum_diverges().value_or(false);
    return out;
}

double subsequence_distortion(std::uint64_t n, SubsequenceCase kind) {
    if (n < 1) throw InvalidInputError("subsequence_distortion: n must be >= 1");
    if ((n + 1) * (n + 1) > 25)
        throw OverflowError("subsequence_distortion: block count beyond the exact range");
    // the pigeonhole block has 4^{n^2+2n} indices
    std::uint64_t count = std::uint64_t{1} << (2 * (n * n + 2 * n));
    double w_src, w_dst;
    if (kind == SubsequenceCase::Inside) {
        w_src = std::exp2(-static_cast<double>(n * n + n) / 2.0);
        w_dst = std::exp2(-static_cast<double>(n * n) / 2.0);
    } else {
        w_src = std::exp2(-static_cast<double>((n + 1) * (n + 1)) / 2.0);
        w_dst = std::exp2(-static_cast<double>(n * n + n) / 2.0);
    }
    return amplified_lower_bound(count, w_src, w_dst);
}

}  // namespace oplab

#include "oplab/xspace.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace oplab {

void MatElement::validate() const {
    if (n < 1) throw InvalidInputError("MatElement: matrix size must be >= 1");
    auto check = [&](const std::vector<std::pair<std::uint64_t, ComplexMatrix>>& cs,
                     const char* name) {
        std::set<std::uint64_t> seen;
        for (const auto& [i, m] : cs) {
            if (i == 0) throw InvalidInputError("MatElement: indices are 1-based");
            if (!seen.insert(i).second)
                throw InvalidInputError(std::string("MatElement: duplicate ") + name +
                                        " index " + std::to_string(i));
            if (m.rows() != n || m.cols() != n)
                throw InvalidInputError("MatElement: coefficient matrix is not n x n");
            if (!m.allFinite())
                throw InvalidInputError("MatElement: non-finite coefficient entries");
        }
    };
    check(e_coeffs, "e");
    check(f_coeffs, "f");
}

std::uint64_t MatElement::max_index() const {
    std::uint64_t m = 0;
    for (const auto& [i, _] : e_coeffs) m = std::max(m, i);
    for (const auto& [i, _] : f_coeffs) m = std::max(m, i);
    return m;
}

double xd_norm(const WeightSequence& alpha, const MatElement& x) {
    x.validate();
    const int n = x.n;
    ComplexMatrix row_gram = ComplexMatrix::Zero(n, n);   // sum a a* + sum b b*
    ComplexMatrix col_gram = ComplexMatrix::Zero(n, n);   // sum w^2 a* a
    for (const auto& [i, a] : x.e_coeffs) {
        double w = alpha.at(i);
        row_gram += a * a.adjoint();
        col_gram += (w * w) * (a.adjoint() * a);
    }
    for (const auto& [i, b] : x.f_coeffs) {
        alpha.at(i);  // range check only; f-vectors carry no weight
        row_gram += b * b.adjoint();
    }
    if (x.e_coeffs.empty() && x.f_coeffs.empty()) return 0.0;
    return std::sqrt(std::max(op_norm(row_gram), op_norm(col_gram)));
}

double concrete_rep_norm(const WeightSequence& alpha, const MatElement& x) {
    x.validate();
    const int n = x.n;
    const std::size_t me = x.e_coeffs.size(), mf = x.f_coeffs.size();
    if (me + mf == 0) return 0.0;
    // block row [a_1 ... b_1 ...] and block column stacking alpha_i a_i
    ComplexMatrix row(n, static_cast<Eigen::Index>(n * (me + mf)));
    Eigen::Index off = 0;
    for (const auto& [i, a] : x.e_coeffs) {
        alpha.at(i);
        row.block(0, off, n, n) = a;
        off += n;
    }
    for (const auto& [i, b] : x.f_coeffs) {
        alpha.at(i);
        row.block(0, off, n, n) = b;
        off += n;
    }
    double best = op_norm(row);
    if (me > 0) {
        ComplexMatrix col(static_cast<Eigen::Index>(n * me), n);
        off = 0;
        for (const auto& [i, a] : x.e_coeffs) {
            col.block(off, 0, n, n) = alpha.at(i) * a;
            off += n;
        }
        best = std::max(best, op_norm(col));
    }
    return best;
}

SplitBounds split_bounds(const WeightSequence& alpha, const MatElement& x,
                         const SpacePartition& part) {
    x.validate();
    std::set<std::uint64_t> covered;
    for (const auto& blk : part.blocks)
        for (std::uint64_t i : blk)
            if (!covered.insert(i).second)
                throw InvalidInputError("split_bounds: partition blocks overlap at index " +
                                        std::to_string(i));
    auto require_covered = [&](std::uint64_t i) {
        if (!covered.count(i))
            throw PreconditionError("split_bounds: index " + std::to_string(i) +
                                    " used by the element is not covered by the partition");
    };
    for (const auto& [i, _] : x.e_coeffs) require_covered(i);
    for (const auto& [i, _] : x.f_coeffs) require_covered(i);

    double lower = 0.0;
    for (const auto& blk : part.blocks) {
        std::set<std::uint64_t> in(blk.begin(), blk.end());
        MatElement piece;
        piece.n = x.n;
        for (const auto& c : x.e_coeffs)
            if (in.count(c.first)) piece.e_coeffs.push_back(c);
        for (const auto& c : x.f_coeffs)
            if (in.count(c.first)) piece.f_coeffs.push_back(c);
        if (piece.e_coeffs.empty() && piece.f_coeffs.empty()) continue;
        lower = std::max(lower, xd_norm(alpha, piece));
    }
    double m = static_cast<double>(part.blocks.size());
    return {lower, std::sqrt(std::max(1.0, m)) * lower, xd_norm(alpha, x)};
}

MatElement random_element(int max_n, int max_coeffs, std::uint64_t max_index,
                          std::uint64_t seed, bool with_f) {
    if (max_n < 1 || max_coeffs < 1 || max_index < 1)
        throw InvalidInputError("random_element: bounds must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_n(1, max_n);
    std::uniform_int_distribution<int> pick_m(1, max_coeffs);
    std::uniform_int_distribution<std::uint64_t> pick_i(1, max_index);
    std::normal_distribution<double> gauss(0.0, 1.0);

    MatElement x;
    x.n = pick_n(rng);
    auto fill = [&](std::vector<std::pair<std::uint64_t, ComplexMatrix>>& out, int count) {
        std::set<std::uint64_t> used;
        for (int c = 0; c < count; ++c) {
            std::uint64_t i = pick_i(rng);
            if (!used.insert(i).second) continue;
            ComplexMatrix m(x.n, x.n);
            for (int r = 0; r < x.n; ++r)
                for (int col = 0; col < x.n; ++col)
                    m(r, col) = std::complex<double>(gauss(rng), gauss(rng));
            out.emplace_back(i, m);
        }
    };
    fill(x.e_coeffs, pick_m(rng));
    if (with_f) fill(x.f_coeffs, pick_m(rng) / 2);
    if (x.e_coeffs.empty() && x.f_coeffs.empty()) {
        ComplexMatrix m = ComplexMatrix::Zero(x.n, x.n);
        m(0, 0) = 1.0;
        x.e_coeffs.emplace_back(1, m);
    }
    return x;
}

double scale_check(const WeightSequence& alpha, double lambda, int samples,
                   std::uint64_t seed) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw PreconditionError("scale_check: lambda must lie in (0,1]");
    if (samples < 1) throw InvalidInputError("scale_check: samples must be >= 1");
    // materialize lambda*alpha as an explicit prefix deep enough for the samples
    const std::uint64_t depth = 16;
    std::vector<double> scaled;
    for (std::uint64_t i = 1; i <= depth; ++i) scaled.push_back(lambda * alpha.at(i));
    WeightSequence beta(scaled);

    double max_ratio = 0.0;
    for (int t = 0; t < samples; ++t) {
        MatElement x = random_element(3, 4, depth, seed * 1000003ULL + t);
        double num = xd_norm(alpha, x);
        double den = xd_norm(beta, x);
        if (den <= 0.0) continue;
        max_ratio = std::max(max_ratio, num / den);
    }
    return max_ratio;
}

}  // namespace oplab

#pragma once

// Dense matrices over the max-plus semiring (max as addition, + as
// multiplication) and the small amount of tropical linear algebra the line
// construction needs: products, permanents-style determinants, and the
// rank-two membership test.

#include "troplin/point.hpp"
#include "troplin/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace troplin {

class Matrix {
public:
    Matrix(int rows, int cols, Rat fill = Rat(0))
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, std::move(fill)) {
        if (rows < 1 || cols < 1) throw std::invalid_argument("Matrix: empty shape");
    }

    /// Row-major construction, mostly for literals in tests and parsed files.
    Matrix(int rows, int cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (rows < 1 || cols < 1) throw std::invalid_argument("Matrix: empty shape");
        if (a_.size() != static_cast<std::size_t>(rows) * cols)
            throw std::invalid_argument("Matrix: entry count does not match shape");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rat& at(int r, int c) { return a_[idx(r, c)]; }
    const Rat& at(int r, int c) const { return a_[idx(r, c)]; }

    std::vector<Rat> column(int c) const {
        std::vector<Rat> out;
        out.reserve(rows_);
        for (int r = 0; r < rows_; ++r) out.push_back(at(r, c));
        return out;
    }

    const std::vector<Rat>& entries() const { return a_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t idx(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("Matrix index out of range");
        return static_cast<std::size_t>(r) * cols_ + c;
    }

    int rows_, cols_;
    std::vector<Rat> a_;
};

/// Max-plus product: (A*B)_{ij} = max_k (a_ik + b_kj).
inline Matrix trop_multiply(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows())
        throw std::invalid_argument("trop_multiply: inner dimensions disagree");
    Matrix C(A.rows(), B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j) {
            Rat best = A.at(i, 0) + B.at(0, j);
            for (int k = 1; k < A.cols(); ++k) {
                Rat v = A.at(i, k) + B.at(k, j);
                if (v > best) best = std::move(v);
            }
            C.at(i, j) = std::move(best);
        }
    return C;
}

struct TropicalDet {
    Rat value;                    // max over permutations of the diagonal sum
    std::uint64_t attain_count;   // how many permutations reach it
    bool singular() const { return attain_count >= 2; }
};

/// Tropical determinant by explicit permutation enumeration.  The matrices
/// this library feeds it are 2x2 and 3x3 minors, so n! is never a concern;
/// the cost is documented rather than capped.
inline TropicalDet trop_det(const Matrix& M) {
    if (!M.square()) throw std::invalid_argument("trop_det: matrix not square");
    const int n = M.rows();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    TropicalDet out{Rat(0), 0};
    bool first = true;
    do {
        Rat sum = 0;
        for (int i = 0; i < n; ++i) sum += M.at(i, perm[i]);
        if (first || sum > out.value) {
            out.value = std::move(sum);
            out.attain_count = 1;
            first = false;
        } else if (sum == out.value) {
            ++out.attain_count;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace detail {

/// Singularity of the 3x3 minor of [p q x] on rows (r1, r2, r3), written out
/// as the six permutation sums so the hot loop below allocates nothing.
inline bool minor3_singular(const ProjectivePoint& p, const ProjectivePoint& q,
                            const ProjectivePoint& x, int r1, int r2, int r3) {
    const Rat terms[6] = {
        p[r1] + q[r2] + x[r3], p[r1] + q[r3] + x[r2], p[r2] + q[r1] + x[r3],
        p[r2] + q[r3] + x[r1], p[r3] + q[r1] + x[r2], p[r3] + q[r2] + x[r1],
    };
    int best = 0;
    for (int t = 1; t < 6; ++t)
        if (terms[t] > terms[best]) best = t;
    for (int t = 0; t < 6; ++t)
        if (t != best && terms[t] == terms[best]) return true;
    return false;
}

}  // namespace detail

/// Does x lie on the stable tropical line through p and q?  True exactly when
/// every 3x3 tropical minor of the n x 3 matrix [p q x] is singular (its
/// maximum permutation sum is attained at least twice).  Requires n >= 3 and
/// p distinct from q as classes.
inline bool rank2_membership(const ProjectivePoint& p, const ProjectivePoint& q,
                             const ProjectivePoint& x) {
    const int n = p.dim();
    if (q.dim() != n || x.dim() != n)
        throw std::invalid_argument("rank2_membership: dimension mismatch");
    if (n < 3) throw std::invalid_argument("rank2_membership: needs dimension >= 3");
    if (p == q) throw domain_error("rank2_membership: the two base points coincide");
    for (int r1 = 0; r1 < n; ++r1)
        for (int r2 = r1 + 1; r2 < n; ++r2)
            for (int r3 = r2 + 1; r3 < n; ++r3)
                if (!detail::minor3_singular(p, q, x, r1, r2, r3)) return false;
    return true;
}

}  // namespace troplin

#pragma once

// Normal idempotent (NI) matrices over the max-plus semiring.
//
// A square matrix is normal when its diagonal is zero and every off-diagonal
// entry is <= 0.  It is NI when additionally a_ik + a_kj <= a_ij for every
// index triple with at least two distinct members; equivalently, it is normal
// and equals its own max-plus square.  Columns of an NI matrix are the point
// configurations whose pairwise stable tropical lines this library computes.
//
// Indices in the API are 0-based; diagnostic strings print 1-based indices to
// match the CLI documents.

#include "troplin/matrix.hpp"
#include "troplin/rational.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace troplin {

struct NiViolation {
    enum class Kind { diagonal, sign, triangle };
    Kind kind;
    int i, j, k;  // triangle uses all three; diagonal/sign use i, j only (k = -1)
    Rat lhs, rhs;

    std::string describe() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::diagonal:
                os << "diagonal entry (" << i + 1 << "," << i + 1 << ") is " << rat_to_string(lhs)
                   << ", must be 0";
                break;
            case Kind::sign:
                os << "entry (" << i + 1 << "," << j + 1 << ") is " << rat_to_string(lhs)
                   << ", must be <= 0";
                break;
            case Kind::triangle:
                os << "a(" << i + 1 << "," << k + 1 << ") + a(" << k + 1 << "," << j + 1 << ") = "
                   << rat_to_string(lhs) << " exceeds a(" << i + 1 << "," << j + 1 << ") = "
                   << rat_to_string(rhs);
                break;
        }
        return os.str();
    }
};

struct NiReport {
    bool ok = true;
    std::vector<NiViolation> violations;

    std::string describe(std::size_t max_items = 8) const {
        if (ok) return "normal idempotent";
        std::ostringstream os;
        os << violations.size() << " violation(s)";
        for (std::size_t v = 0; v < violations.size() && v < max_items; ++v)
            os << "\n  " << violations[v].describe();
        if (violations.size() > max_items)
            os << "\n  ... " << (violations.size() - max_items) << " more";
        return os.str();
    }
};

/// Checks only normality (zero diagonal, non-positive off-diagonal).
inline NiReport validate_normal(const Matrix& A) {
    if (!A.square()) throw std::invalid_argument("validate_normal: matrix not square");
    NiReport rep;
    const int n = A.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j && A.at(i, i) != 0)
                rep.violations.push_back({NiViolation::Kind::diagonal, i, i, -1, A.at(i, i), Rat(0)});
            if (i != j && A.at(i, j) > 0)
                rep.violations.push_back({NiViolation::Kind::sign, i, j, -1, A.at(i, j), Rat(0)});
        }
    rep.ok = rep.violations.empty();
    return rep;
}

/// Full NI check.  Reports every violated condition: bad diagonal entries,
/// positive off-diagonal entries, and every index triple (i, j, k) with at
/// least two distinct members where a_ik + a_kj > a_ij.
inline NiReport validate_ni(const Matrix& A) {
    if (!A.square()) throw std::invalid_argument("validate_ni: matrix not square");
    NiReport rep = validate_normal(A);
    const int n = A.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i == j && j == k) continue;
                Rat lhs = A.at(i, k) + A.at(k, j);
                if (lhs > A.at(i, j))
                    rep.violations.push_back({NiViolation::Kind::triangle, i, j, k, std::move(lhs),
                                              A.at(i, j)});
            }
    rep.ok = rep.violations.empty();
    return rep;
}

/// A matrix certified NI at construction.  Holding one of these is the
/// library's way of saying "the triangle inequalities were all checked".
class NiMatrix {
public:
    static NiMatrix certify(Matrix A) {
        NiReport rep = validate_ni(A);
        if (!rep.ok) throw domain_error("matrix is not normal idempotent: " + rep.describe());
        return NiMatrix(std::move(A));
    }

    const Matrix& matrix() const { return m_; }
    int order() const { return m_.rows(); }
    const Rat& at(int r, int c) const { return m_.at(r, c); }
    operator const Matrix&() const { return m_; }

    bool operator==(const NiMatrix&) const = default;

private:
    explicit NiMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

/// Kleene closure of a normal matrix: A to the max-plus power n-1, computed
/// by repeated squaring (powers of a normal matrix only grow, and they
/// stabilize by n-1).  The result is certified NI, and idempotency is
/// re-checked explicitly because it is cheap and the property is load-bearing.
inline NiMatrix closure(const Matrix& A) {
    NiReport normal = validate_normal(A);
    if (!normal.ok) throw domain_error("closure needs a normal matrix: " + normal.describe());
    const int n = A.rows();
    Matrix B = A;
    for (int covered = 1; covered < n - 1; covered *= 2) B = trop_multiply(B, B);
    detail::require(trop_multiply(B, B) == B, "closure: power of normal matrix not idempotent");
    return NiMatrix::certify(std::move(B));
}

namespace detail {

/// Unbiased integer draw from [lo, hi] using rejection sampling on raw 64-bit
/// outputs.  std::uniform_int_distribution is implementation-defined, which
/// would break the documented promise that a seed pins the exact output.
inline long long uniform_int(std::mt19937_64& rng, long long lo, long long hi) {
    require(lo <= hi, "uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    const std::uint64_t reject_below = (0 - span) % span;  // 2^64 mod span
    std::uint64_t x = rng();
    while (x < reject_below) x = rng();
    return lo + static_cast<long long>(x % span);
}

}  // namespace detail

/// Seeded random NI matrix: off-diagonal entries drawn as uniform integers in
/// [low, high] (row-major order, diagonal skipped), then closed.  The closure
/// may raise entries above `high`, but never above 0.  Deterministic for a
/// given (n, low, high, seed): the engine is std::mt19937_64 seeded directly
/// with `seed`, and the draw order and rejection rule are part of the CLI's
/// reproducibility contract.
inline NiMatrix random_ni(int n, long long low, long long high, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_ni: need n >= 2");
    if (!(low <= high && high <= 0))
        throw std::invalid_argument("random_ni: need low <= high <= 0");
    std::mt19937_64 rng(seed);
    Matrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) A.at(i, j) = detail::uniform_int(rng, low, high);
    return closure(A);
}

/// Completes two prescribed columns to a full NI matrix, preserving them
/// exactly.  Validates first that the prescribed entries themselves satisfy
/// every NI inequality that mentions only prescribed entries; then samples
/// the free entries like random_ni and closes, retrying with fresh draws (up
/// to 64 attempts) whenever the closure disturbs a prescribed column.  Throws
/// domain_error if the inputs are inconsistent or no completion is found.
inline NiMatrix complete_two_columns(const std::vector<Rat>& col_i, const std::vector<Rat>& col_j,
                                     int i, int j, long long low, long long high,
                                     std::uint64_t seed) {
    const int n = static_cast<int>(col_i.size());
    if (static_cast<int>(col_j.size()) != n)
        throw std::invalid_argument("complete_two_columns: columns differ in length");
    if (n < 2) throw std::invalid_argument("complete_two_columns: need n >= 2");
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw std::invalid_argument("complete_two_columns: bad column positions");
    if (!(low <= high && high <= 0))
        throw std::invalid_argument("complete_two_columns: need low <= high <= 0");

    auto fail = [](const std::string& what) { throw domain_error("inconsistent columns: " + what); };
    auto cell = [](int r, int c) {
        return "(" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
    };

    if (col_i[i] != 0) fail("diagonal entry " + cell(i, i) + " must be 0");
    if (col_j[j] != 0) fail("diagonal entry " + cell(j, j) + " must be 0");
    for (int r = 0; r < n; ++r) {
        if (col_i[r] > 0) fail("entry " + cell(r, i) + " must be <= 0");
        if (col_j[r] > 0) fail("entry " + cell(r, j) + " must be <= 0");
    }
    const Rat& a_ij = col_j[i];
    const Rat& a_ji = col_i[j];
    for (int r = 0; r < n; ++r) {
        // the two inequality families whose terms are all prescribed
        if (col_i[r] + a_ij > col_j[r])
            fail("a" + cell(r, i) + " + a" + cell(i, j) + " exceeds a" + cell(r, j));
        if (col_j[r] + a_ji > col_i[r])
            fail("a" + cell(r, j) + " + a" + cell(j, i) + " exceeds a" + cell(r, i));
    }

    std::mt19937_64 rng(seed);
    constexpr int max_attempts = 64;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Matrix A(n, n);
        for (int r = 0; r < n; ++r) {
            A.at(r, i) = col_i[r];
            A.at(r, j) = col_j[r];
        }
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (c != i && c != j && r != c) A.at(r, c) = detail::uniform_int(rng, low, high);
        NiMatrix closed = closure(A);
        if (closed.matrix().column(i) == col_i && closed.matrix().column(j) == col_j) return closed;
    }
    throw domain_error("complete_two_columns: no completion preserved the given columns after " +
                       std::to_string(max_attempts) + " attempts; widen [low, high]");
}

}  // namespace troplin

#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ts;

namespace {

// Test-local determinant oracle: first-row expansion, counting how many
// permutations attain the maximum.  Written independently of the library's
// permutation scan on purpose.
struct DetOracle {
    Rat value;
    std::uint64_t count;
};

DetOracle det_oracle(const Matrix& M, std::vector<int> rows, std::vector<int> cols) {
    if (rows.size() == 1) return {M.at(rows[0], cols[0]), 1};
    DetOracle best{0, 0};
    for (std::size_t pick = 0; pick < cols.size(); ++pick) {
        std::vector<int> rest_rows(rows.begin() + 1, rows.end());
        std::vector<int> rest_cols = cols;
        rest_cols.erase(rest_cols.begin() + static_cast<long>(pick));
        const DetOracle sub = det_oracle(M, rest_rows, rest_cols);
        const Rat cand = M.at(rows[0], cols[pick]) + sub.value;
        if (best.count == 0 || cand > best.value) {
            best = {cand, sub.count};
        } else if (cand == best.value) {
            best.count += sub.count;
        }
    }
    return best;
}

DetOracle det_oracle(const Matrix& M) {
    std::vector<int> idx(M.rows());
    for (int k = 0; k < M.rows(); ++k) idx[k] = k;
    return det_oracle(M, idx, idx);
}

Matrix random_square(std::mt19937_64& rng, int n, long long lo, long long hi) {
    std::uniform_int_distribution<long long> coord(lo, hi);
    std::vector<Rat> cells(static_cast<std::size_t>(n) * n);
    for (auto& x : cells) x = coord(rng);
    return Matrix(n, n, std::move(cells));
}

}  // namespace

TEST_CASE("tropical product: hand-checked 2x2") {
    Matrix A(2, 2, std::vector<Rat>{0, -3, -1, 0});
    Matrix B(2, 2, std::vector<Rat>{0, -2, -4, 0});
    // (A*B)_12 = max(0 + -2, -3 + 0) = -2;  (A*B)_21 = max(-1, -4) = -1
    Matrix P = trop_multiply(A, B);
    CHECK(P.at(0, 0) == 0);
    CHECK(P.at(0, 1) == -2);
    CHECK(P.at(1, 0) == -1);
    CHECK(P.at(1, 1) == 0);
}

TEST_CASE("tropical determinant: hand-checked values and attain counts") {
    // max(a+d, b+c): 0+0 vs -3+-1
    CHECK(trop_det(Matrix(2, 2, std::vector<Rat>{0, -3, -1, 0})).value == 0);
    CHECK(trop_det(Matrix(2, 2, std::vector<Rat>{0, -3, -1, 0})).attain_count == 1);

    // tie: a+d = b+c = 0
    TropicalDet tied = trop_det(Matrix(2, 2, std::vector<Rat>{0, 2, -2, 0}));
    CHECK(tied.value == 0);
    CHECK(tied.attain_count == 2);
    CHECK(tied.singular());

    // identity-like 3x3: only the diagonal wins
    TropicalDet d3 = trop_det(Matrix(3, 3, std::vector<Rat>{0, -1, -1, -1, 0, -1, -1, -1, 0}));
    CHECK(d3.value == 0);
    CHECK(d3.attain_count == 1);

    // all-zero 3x3: every permutation attains
    TropicalDet z3 = trop_det(Matrix(3, 3, Rat(0)));
    CHECK(z3.value == 0);
    CHECK(z3.attain_count == 6);
}

TEST_CASE("tropical determinant matches an independent expansion oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const Matrix M = random_square(rng, n, -4, 4);  // narrow range forces many ties
        const TropicalDet lib = trop_det(M);
        const DetOracle ora = det_oracle(M);
        CHECK(lib.value == ora.value);
        CHECK(lib.attain_count == ora.count);
    }
}

TEST_CASE("membership test accepts segment points and rejects perturbations") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long long> coord(-40, 40);
    int rejected = 0, trials = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 5);
        std::vector<Rat> pr(n), qr(n);
        for (int k = 0; k < n; ++k) {
            pr[k] = coord(rng);
            qr[k] = coord(rng);
        }
        ProjectivePoint p(pr), q(qr);
        if (p == q) continue;
        const TropicalSegment seg = tconv(p, q);
        for (const auto& bend : seg.breakpoints()) CHECK(rank2_membership(p, q, bend));
        CHECK(rank2_membership(p, q, seg.point_at(seg.length() / 3)));

        // a generic point far off the segment should fail for n >= 3
        std::vector<Rat> xr(n);
        for (int k = 0; k < n; ++k) xr[k] = coord(rng) + (k % 2 ? 1000 : -1000) * (k + 1);
        ++trials;
        if (!rank2_membership(p, q, ProjectivePoint(xr))) ++rejected;
    }
    CHECK(rejected == trials);  // the blown-up points are never collinear
}

TEST_CASE("membership agrees with raw determinants of row triples") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<long long> coord(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 3);
        std::vector<Rat> pr(n), qr(n), xr(n);
        for (int k = 0; k < n; ++k) {
            pr[k] = coord(rng);
            qr[k] = coord(rng);
            xr[k] = coord(rng);
        }
        ProjectivePoint p(pr), q(qr), x(xr);
        if (p == q) continue;

        bool all_singular = true;
        for (int a = 0; a < n && all_singular; ++a)
            for (int b = a + 1; b < n && all_singular; ++b)
                for (int c = b + 1; c < n && all_singular; ++c) {
                    const Matrix M(3, 3,
                                   std::vector<Rat>{p[a], q[a], x[a], p[b], q[b], x[b], p[c],
                                                    q[c], x[c]});
                    if (!trop_det(M).singular()) all_singular = false;
                }
        CHECK(rank2_membership(p, q, x) == all_singular);
    }
}

TEST_CASE("membership requires distinct spanning points") {
    const ProjectivePoint p = pt({0, 1, 2});
    CHECK_THROWS_AS(rank2_membership(p, p, pt({5, 5, 0})), domain_error);
}

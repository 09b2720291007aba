#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace ts;

TEST_CASE("four-leaf example: pairing data and type") {
    // minors are computed on canonical representatives p = (15,5,4,0) and
    // q = (1,13,-1,0), a uniform shift of +28 against the raw columns; every
    // consumer of the m's (sums, differences, vertex coordinates) is
    // shift-invariant
    const ProjectivePoint p(ex4_col1()), q(ex4_col2());
    const PlueckerData d = pluecker(p, q);
    CHECK(d.m12 == 28);
    CHECK(d.m13 == 14);
    CHECK(d.m14 == 15);
    CHECK(d.m23 == 17);
    CHECK(d.m24 == 13);
    CHECK(d.m34 == 4);
    // sums 32, 27, 32: the middle pairing stays strictly below
    CHECK(d.max_sum == 32);
    CHECK(d.attains[0]);
    CHECK(!d.attains[1]);
    CHECK(d.attains[2]);
    CHECK(classify_from_pluecker(d) == LineType4::t13_24);

    const DifferenceMatrix F = DifferenceMatrix::build(ex4_matrix(), 0, 1);
    CHECK(classify_type4(F) == LineType4::t13_24);
    CHECK(to_string(LineType4::t13_24) == "{13,24}");
}

TEST_CASE("four-leaf example: closed-form vertices and distances") {
    const ProjectivePoint p(ex4_col1()), q(ex4_col2());
    const Vertices4 v = vertices4(p, q, LineType4::t13_24);
    CHECK(v.pq == pt({15, 13, 4, 0}));
    CHECK(v.qp == pt({10, 13, -1, 0}));
    CHECK(v.d_p_pq == 8);
    CHECK(v.d_pq_qp == 5);
    CHECK(v.d_qp_q == 9);
}

TEST_CASE("four-leaf example: the staged recursion reproduces the closed form") {
    const NiMatrix A = ex4_matrix();
    const MetricTree t = build_tree(A, 0, 1);
    CHECK(t.n == 4);
    CHECK(t.total == 22);
    REQUIRE(t.spine.size() == 2);
    CHECK(t.p_offset() == 8);
    CHECK(t.edge_length(0) == 5);
    CHECK(t.q_offset() == 9);
    CHECK(t.pq().coord == pt({15, 13, 4, 0}));
    CHECK(t.qp().coord == pt({10, 13, -1, 0}));
    CHECK(t.pq().leaves == std::vector<int>{3});  // leaf 4 hangs by p's vertex
    CHECK(t.qp().leaves == std::vector<int>{2});  // leaf 3 by q's
    CHECK(t.trivalent());

    const VerificationReport rep = cross_check_n4(A);
    INFO(rep.describe());
    CHECK(rep.ok());
}

TEST_CASE("star tree: zero spare entry collapses both vertices") {
    // Columns chosen so the two spare labels tie: the single inner vertex
    // carries both of them.
    const std::vector<Rat> c1{Rat(0), Rat(-10), Rat(-11), Rat(-12)};
    const std::vector<Rat> c2{Rat(-12), Rat(0), Rat(-14), Rat(-15)};
    const NiMatrix A = complete_two_columns(c1, c2, 0, 1, -20, -10, 2);
    const DifferenceMatrix F = DifferenceMatrix::build(A, 0, 1);
    CHECK(F.at(2, 3) == 0);
    CHECK(classify_type4(F) == LineType4::t1234);

    const MetricTree t = build_tree(A, 0, 1);
    REQUIRE(t.spine.size() == 1);
    CHECK(t.spine[0].leaves == std::vector<int>{2, 3});
    CHECK(t.total == 22);
    CHECK(t.p_offset() == 13);
    CHECK(t.q_offset() == 9);
    CHECK(t.spine[0].coord == pt({12, 15, 1, 0}));
    CHECK(!t.trivalent());

    const ProjectivePoint p(c1), q(c2);
    const Vertices4 v = vertices4(p, q, LineType4::t1234);
    CHECK(v.pq == t.spine[0].coord);
    CHECK(v.qp == t.spine[0].coord);
    CHECK(v.d_pq_qp == 0);
    CHECK(v.d_p_pq == 13);
    CHECK(v.d_qp_q == 9);

    const VerificationReport rep = cross_check_n4(A);
    INFO(rep.describe());
    CHECK(rep.ok());
}

TEST_CASE("marked pair in another slot: type in global labels") {
    // Build a matrix whose marked columns sit at positions 1 and 3; the two
    // spare labels are then 2 and 4, and the pairing must never join 1 with 3.
    std::mt19937_64 rng(12);
    int seen_12_34 = 0, seen_14_23 = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const NiMatrix A = random_ni(4, -12, -1, rng());
        const DifferenceMatrix F = DifferenceMatrix::build(A, 0, 2);
        if (F.distance() == 0) continue;
        const LineType4 by_sign = classify_type4(F);
        CHECK(by_sign != LineType4::t13_24);  // that pairing would join the marks
        const ProjectivePoint p(A.matrix().column(0));
        const ProjectivePoint q(A.matrix().column(2));
        CHECK(by_sign == classify_from_pluecker(pluecker(p, q)));
        if (by_sign == LineType4::t12_34) ++seen_12_34;
        if (by_sign == LineType4::t14_23) ++seen_14_23;
    }
    CHECK(seen_12_34 > 0);
    CHECK(seen_14_23 > 0);
}

TEST_CASE("every column pair: sign classification agrees with the pairing sums") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 150; ++trial) {
        const NiMatrix A = random_ni(4, -15, -1, rng());
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                const DifferenceMatrix F = DifferenceMatrix::build(A, i, j);
                if (F.distance() == 0) continue;
                const ProjectivePoint p(A.matrix().column(i));
                const ProjectivePoint q(A.matrix().column(j));
                CHECK(classify_type4(F) == classify_from_pluecker(pluecker(p, q)));
            }
    }
}

TEST_CASE("closed-form vertices match the recursion on other column pairs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        const NiMatrix A = random_ni(4, -9, -1, rng());
        for (const auto& [i, j] : {std::pair{0, 2}, std::pair{1, 3}, std::pair{2, 0}}) {
            const DifferenceMatrix F = DifferenceMatrix::build(A, i, j);
            if (F.distance() == 0) continue;
            const ProjectivePoint p(A.matrix().column(i));
            const ProjectivePoint q(A.matrix().column(j));
            const Vertices4 v = vertices4(p, q, classify_type4(F));
            const MetricTree t = build_tree(A, i, j);
            CHECK(t.pq().coord == v.pq);
            CHECK(t.qp().coord == v.qp);
            CHECK(t.p_offset() == v.d_p_pq);
            CHECK(t.qp().offset - t.pq().offset == v.d_pq_qp);
            CHECK(t.q_offset() == v.d_qp_q);
        }
    }
}

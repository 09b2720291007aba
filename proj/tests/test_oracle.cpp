#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <utility>

using namespace ts;

TEST_CASE("both worked examples verify cleanly") {
    {
        const NiMatrix A = ex4_matrix();
        const VerificationReport rep = verify_tree(A, 0, 1, build_tree(A, 0, 1));
        INFO(rep.describe());
        CHECK(rep.ok());
        CHECK(cross_check_n4(A).ok());
    }
    {
        const NiMatrix A = ex7_matrix();
        const MetricTree t = build_tree(A, 0, 1);
        const VerificationReport rep = verify_tree(A, 0, 1, t);
        INFO(rep.describe());
        CHECK(rep.ok());
        CHECK(verify_balancing(t));
    }
}

TEST_CASE("random instances verify, marked pair anywhere") {
    std::mt19937_64 rng(2718);
    for (int n = 3; n <= 8; ++n) {
        for (int rep = 0; rep < 8; ++rep) {
            const NiMatrix A = random_ni(n, -3 * n - 2, -1, rng());
            for (int k = 0; k < 3; ++k) {
                const int i = static_cast<int>(rng() % n);
                const int j = (i + 1 + static_cast<int>(rng() % (n - 1))) % n;
                const MetricTree t = build_tree(A, i, j);
                const VerificationReport report = verify_tree(A, i, j, t);
                INFO("n=" << n << " i=" << i << " j=" << j << "\n" << report.describe());
                REQUIRE(report.ok());
            }
        }
    }
}

TEST_CASE("four-point cross-check holds on random matrices") {
    std::mt19937_64 rng(5772);
    for (int trial = 0; trial < 200; ++trial) {
        const NiMatrix A = random_ni(4, -14, -1, rng());
        const VerificationReport rep = cross_check_n4(A);
        INFO(rep.describe());
        REQUIRE(rep.ok());
    }
}

TEST_CASE("a star tree (all sums tied) still verifies") {
    const std::vector<Rat> c1{0, -10, -11, -12};
    const std::vector<Rat> c2{-12, 0, -14, -15};
    const NiMatrix A = complete_two_columns(c1, c2, 0, 1, -20, -10, 2);
    const MetricTree t = build_tree(A, 0, 1);
    REQUIRE(t.spine.size() == 1);
    const VerificationReport rep = verify_tree(A, 0, 1, t);
    INFO(rep.describe());
    CHECK(rep.ok());
}

TEST_CASE("fault injection pinpoints the broken invariant") {
    const NiMatrix A = ex7_matrix();
    const MetricTree good = build_tree(A, 0, 1);
    REQUIRE(verify_tree(A, 0, 1, good).ok());

    SECTION("a nudged vertex offset leaves the segment parameterization") {
        MetricTree t = good;
        t.spine[2].offset += Rat(1, 2);  // stays strictly between its neighbors
        const VerificationReport rep = verify_tree(A, 0, 1, t);
        CHECK(!rep.ok());
        REQUIRE(rep.find("structure") != nullptr);
        CHECK(rep.find("structure")->pass);
        REQUIRE(rep.find("vertices on segment") != nullptr);
        CHECK(!rep.find("vertices on segment")->pass);
        CHECK(!rep.find("vertices on segment")->witness.empty());
        // the coordinate itself is still on the line
        CHECK(rep.find("vertex membership")->pass);
    }

    SECTION("swapped leaves break balancing and nothing metric") {
        MetricTree t = good;
        std::swap(t.spine[1].leaves, t.spine[3].leaves);
        const VerificationReport rep = verify_tree(A, 0, 1, t);
        CHECK(!rep.ok());
        CHECK(rep.find("structure")->pass);
        CHECK(rep.find("vertices on segment")->pass);
        REQUIRE(rep.find("balancing") != nullptr);
        CHECK(!rep.find("balancing")->pass);
        CHECK(!verify_balancing(t));
    }

    SECTION("a corrupted coordinate fails the rank-two membership test") {
        MetricTree t = good;
        t.spine[1].coord = t.spine[1].coord.translated({0}, Rat(1));
        const VerificationReport rep = verify_tree(A, 0, 1, t);
        CHECK(!rep.ok());
        REQUIRE(rep.find("vertex membership") != nullptr);
        CHECK(!rep.find("vertex membership")->pass);
        CHECK(!rep.find("vertices on segment")->pass);
    }

    SECTION("a wrong total stops at the endpoint check") {
        MetricTree t = good;
        t.total += 1;
        const VerificationReport rep = verify_tree(A, 0, 1, t);
        CHECK(!rep.ok());
        REQUIRE(rep.find("endpoints") != nullptr);
        CHECK(!rep.find("endpoints")->pass);
        // early return: the deeper checks never ran
        CHECK(rep.checks.size() == 2);
        CHECK(rep.find("vertex membership") == nullptr);
    }

    SECTION("a duplicated leaf label is a structural failure") {
        MetricTree t = good;
        t.spine[1].leaves.push_back(t.spine[1].leaves.front());
        const VerificationReport rep = verify_tree(A, 0, 1, t);
        CHECK(!rep.ok());
        CHECK(!rep.find("structure")->pass);
        CHECK(rep.checks.size() == 1);
    }

    SECTION("verifying against the wrong column pair is caught immediately") {
        const VerificationReport rep = verify_tree(A, 0, 2, good);
        CHECK(!rep.ok());
        CHECK(!rep.find("structure")->pass);
    }
}

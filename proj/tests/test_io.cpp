#include "test_support.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <string>

using namespace ts;

TEST_CASE("matrix documents: JSON and bare text, round-trip byte-stable") {
    const NiMatrix A = ex4_matrix();
    const std::string doc = matrix_to_json(A.matrix());

    const Matrix back = parse_matrix_document(doc);
    CHECK(back == A.matrix());
    CHECK(matrix_to_json(back) == doc);

    SECTION("bare text is autodetected and mixed cells parse") {
        const Matrix two = parse_matrix_document("  0 -1\n -3/2 0\n");
        REQUIRE(two.rows() == 2);
        CHECK(two.at(1, 0) == R("-3/2"));

        const Matrix mixed = parse_matrix_document(
            R"({"n": 2, "entries": [[0, "-1/2"], ["-1", 0]]})");
        CHECK(mixed.at(0, 1) == R("-1/2"));
        CHECK(mixed.at(1, 1) == 0);
    }

    SECTION("rejected inputs") {
        CHECK_THROWS_AS(parse_matrix_document(""), parse_error);
        CHECK_THROWS_AS(parse_matrix_document("   \n"), parse_error);
        CHECK_THROWS_AS(parse_matrix_document("1 2 3"), parse_error);  // not square
        CHECK_THROWS_AS(parse_matrix_document("{]"), parse_error);
        CHECK_THROWS_AS(parse_matrix_document(R"({"entries": [[0]]})"), parse_error);
        CHECK_THROWS_AS(parse_matrix_document(R"({"n": 2, "entries": [[0, 0]]})"), parse_error);
        CHECK_THROWS_AS(parse_matrix_document(R"({"n": 1, "entries": [[0, 0]]})"), parse_error);
        // floats are ambiguous on purpose
        CHECK_THROWS_AS(parse_matrix_document(R"({"n": 2, "entries": [[0, -0.5], [-1, 0]]})"),
                        parse_error);
        CHECK_THROWS_AS(parse_matrix_document("0 -1 nan 0"), parse_error);
    }
}

TEST_CASE("two-column documents") {
    const Matrix cols = parse_two_column_document("0 -12\n-10 0\n-11 -14\n-15 -13\n");
    REQUIRE(cols.rows() == 4);
    REQUIRE(cols.cols() == 2);
    CHECK(cols.column(0) == ex4_col1());
    CHECK(cols.column(1) == ex4_col2());

    const Matrix viaJson = parse_two_column_document(
        R"({"n": 4, "entries": [[0, -12], [-10, 0], [-11, -14], [-15, -13]]})");
    CHECK(viaJson == cols);

    CHECK_THROWS_AS(parse_two_column_document("0 -1 -2"), parse_error);   // odd count
    CHECK_THROWS_AS(parse_two_column_document("0 -1"), parse_error);      // single row
    CHECK_THROWS_AS(parse_two_column_document(R"({"n": 2, "entries": [[0, 1, 2], [0, 1, 2]]})"),
                    parse_error);
}

TEST_CASE("four-leaf tree document, byte for byte") {
    const MetricTree t = build_tree(ex4_matrix(), 0, 1);
    const std::string want = R"({
  "n": 4,
  "cols": [
    1,
    2
  ],
  "p": [
    "15",
    "5",
    "4",
    "0"
  ],
  "q": [
    "1",
    "13",
    "-1",
    "0"
  ],
  "total": "22",
  "p_offset": "8",
  "q_offset": "9",
  "spine": [
    {
      "offset": "8",
      "leaves": [
        4
      ],
      "coord": [
        "15",
        "13",
        "4",
        "0"
      ]
    },
    {
      "offset": "13",
      "leaves": [
        3
      ],
      "coord": [
        "10",
        "13",
        "-1",
        "0"
      ]
    }
  ],
  "edges": [
    {
      "length": "5",
      "p_side": [
        2,
        4
      ],
      "q_side": [
        1,
        3
      ]
    }
  ]
}
)";
    CHECK(tree_to_json(t) == want);
}

TEST_CASE("tree JSON round-trips exactly") {
    for (const MetricTree& t : {build_tree(ex4_matrix(), 0, 1), build_tree(ex7_matrix(), 0, 1)}) {
        const std::string doc = tree_to_json(t);
        const MetricTree back = tree_from_json(doc);
        CHECK(back == t);
        CHECK(tree_to_json(back) == doc);
    }
}

TEST_CASE("tree documents that do not describe a tree are refused") {
    const std::string good = tree_to_json(build_tree(ex4_matrix(), 0, 1));

    auto corrupt = [&](const std::string& from, const std::string& to) {
        std::string s = good;
        const auto at = s.find(from);
        REQUIRE(at != std::string::npos);
        s.replace(at, from.size(), to);
        return s;
    };

    CHECK_THROWS_AS(tree_from_json("[1, 2]"), parse_error);
    CHECK_THROWS_AS(tree_from_json("{"), parse_error);
    CHECK_THROWS_AS(tree_from_json(corrupt("\"n\": 4", "\"n\": 2")), parse_error);
    CHECK_THROWS_AS(tree_from_json(corrupt("\"cols\": [\n    1,\n    2\n  ]",
                                           "\"cols\": [\n    1,\n    9\n  ]")),
                    parse_error);
    CHECK_THROWS_AS(tree_from_json(corrupt("\"total\": \"22\"", "\"total\": 22")), parse_error);
    CHECK_THROWS_AS(tree_from_json(corrupt("\"leaves\": [\n        4\n      ]",
                                           "\"leaves\": [\n        0\n      ]")),
                    parse_error);
    CHECK_THROWS_AS(tree_from_json(corrupt("\"offset\": \"8\"", "\"offset\": 8")), parse_error);
}

TEST_CASE("newick: golden strings for both examples") {
    CHECK(to_newick(build_tree(ex4_matrix(), 0, 1)) ==
          "(2,4,(3,1):5)[cols=1,2 p_offset=8 q_offset=9 total=22];\n");
    CHECK(to_newick(build_tree(ex7_matrix(), 0, 1)) ==
          "(2,7,(3,(4,(6,(5,1):2):1):1):9)[cols=1,2 p_offset=3 q_offset=18 total=34];\n");
}

TEST_CASE("newick round-trips to the same skeleton") {
    const std::vector<Rat> c1{0, -10, -11, -12};
    const std::vector<Rat> c2{-12, 0, -14, -15};
    const MetricTree star = build_tree(complete_two_columns(c1, c2, 0, 1, -20, -10, 2), 0, 1);

    for (const MetricTree& t :
         {build_tree(ex4_matrix(), 0, 1), build_tree(ex7_matrix(), 0, 1), star}) {
        const NewickSkeleton s = parse_newick(to_newick(t));
        CHECK(s == skeleton_of(t));
    }
}

TEST_CASE("newick oddities are refused") {
    // no trailing comment block
    CHECK_THROWS_AS(parse_newick("(2,4,(3,1):5);"), parse_error);
    // two nested groups cannot be a single spine
    CHECK_THROWS_AS(
        parse_newick("((1,2):3,(3,4):5)[cols=1,2 p_offset=1 q_offset=1 total=10];"),
        parse_error);
    // a repeated label
    CHECK_THROWS_AS(parse_newick("(2,2,(3,1):5)[cols=1,2 p_offset=8 q_offset=9 total=22];"),
                    parse_error);
    // mark labels disagreeing with the comment
    CHECK_THROWS_AS(parse_newick("(3,4,(2,1):5)[cols=1,2 p_offset=8 q_offset=9 total=22];"),
                    parse_error);
    // a zero label
    CHECK_THROWS_AS(parse_newick("(2,4,(3,0):5)[cols=1,2 p_offset=8 q_offset=9 total=22];"),
                    parse_error);
    // truncated input
    CHECK_THROWS_AS(parse_newick("(2,4,(3,1):5"), parse_error);
    CHECK_THROWS_AS(parse_newick(""), parse_error);
}

TEST_CASE("segment documents carry the whole part structure") {
    const NiMatrix A = ex7_matrix();
    const TropicalSegment seg =
        tconv(ProjectivePoint(A.matrix().column(0)), ProjectivePoint(A.matrix().column(1)));
    const std::string doc = segment_to_json(seg);

    const auto parsed = nlohmann::ordered_json::parse(doc);
    CHECK(parsed["length"] == "34");
    REQUIRE(parsed["parts"].is_array());
    REQUIRE(!parsed["parts"].empty());
    CHECK(parsed["breakpoints"].size() == parsed["parts"].size() + 1);

    Rat sum = 0;
    for (const auto& part : parsed["parts"]) {
        sum += parse_rational(part["length"].get<std::string>());
        REQUIRE(part["slope"].is_array());
        CHECK(!part["slope"].empty());
    }
    CHECK(sum == seg.length());
}

#pragma once

// Reading and writing the documents the command line trades in: matrices as
// JSON or bare whitespace-separated text, trees and segments as JSON, and
// trees additionally as a Newick dialect with exact rational branch lengths.
//
// Numbers in emitted JSON are always canonical rational strings ("3", "-7/2")
// so that output is byte-stable across runs and nothing ever rounds.  On
// input, JSON integers are accepted as a convenience; JSON floats are
// rejected because a binary double does not say which rational was meant.
// Labels and column indices are 1-based in documents, 0-based in the API.

#include "troplin/matrix.hpp"
#include "troplin/point.hpp"
#include "troplin/rational.hpp"
#include "troplin/segment.hpp"
#include "troplin/tree.hpp"

#include <json.hpp>

#include <cctype>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace troplin {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline Rat rat_from_json(const ordered_json& cell, const char* where) {
    if (cell.is_number_integer()) return Rat(cell.get<long long>());
    if (cell.is_number_unsigned()) return Rat(Int(cell.get<unsigned long long>()));
    if (cell.is_string()) return parse_rational(cell.get<std::string>());
    if (cell.is_number_float())
        throw parse_error(std::string(where) +
                          ": floating-point JSON numbers are ambiguous; write the exact "
                          "value as a string like \"-7/2\"");
    throw parse_error(std::string(where) + ": expected a number or a rational string");
}

inline std::vector<Rat> rat_vector_from_json(const ordered_json& arr, const char* where) {
    if (!arr.is_array() || arr.empty())
        throw parse_error(std::string(where) + ": expected a non-empty array");
    std::vector<Rat> out;
    out.reserve(arr.size());
    for (const auto& cell : arr) out.push_back(rat_from_json(cell, where));
    return out;
}

inline ordered_json point_to_json(const ProjectivePoint& pt) {
    ordered_json arr = ordered_json::array();
    for (int k = 0; k < pt.dim(); ++k) arr.push_back(rat_to_string(pt[k]));
    return arr;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// matrices

/// Parse a matrix from either of the accepted document forms.
///
///  * JSON: an object {"n": 4, "entries": [[...], ...]} with n rows of n
///    cells each; a cell is a JSON integer or a rational string.
///  * Bare text: whitespace-separated rationals, row-major; the token count
///    must be a perfect square, which fixes n.
///
/// The choice is made by the first non-space byte: '{' means JSON.
inline Matrix parse_matrix_document(const std::string& text) {
    std::size_t at = 0;
    while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
    if (at == text.size()) throw parse_error("matrix document is empty");

    if (text[at] == '{') {
        ordered_json doc;
        try {
            doc = ordered_json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("matrix document is not valid JSON: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries"))
            throw parse_error("matrix document must be an object with \"n\" and \"entries\"");
        if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
            throw parse_error("matrix document: \"n\" must be a positive integer");
        const int n = static_cast<int>(doc["n"].get<long long>());
        const auto& rows = doc["entries"];
        if (!rows.is_array() || static_cast<int>(rows.size()) != n)
            throw parse_error("matrix document: \"entries\" must hold exactly n rows");
        std::vector<Rat> cells;
        cells.reserve(static_cast<std::size_t>(n) * n);
        for (const auto& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                throw parse_error("matrix document: every row must hold exactly n cells");
            for (const auto& cell : row)
                cells.push_back(detail::rat_from_json(cell, "matrix entry"));
        }
        return Matrix(n, n, std::move(cells));
    }

    std::istringstream in(text);
    std::vector<Rat> cells;
    std::string token;
    while (in >> token) cells.push_back(parse_rational(token));
    std::size_t n = 0;
    while (n * n < cells.size()) ++n;
    if (n * n != cells.size())
        throw parse_error("bare matrix text holds " + std::to_string(cells.size()) +
                          " numbers, which is not a perfect square");
    return Matrix(static_cast<int>(n), static_cast<int>(n), std::move(cells));
}

/// Parse a two-column document: the prescribed p and q columns for matrix
/// completion.  JSON form {"n": 4, "entries": [[p_1, q_1], ...]} with n rows
/// of two cells, or bare text with an even token count read row-major as
/// (p_k, q_k) pairs.
inline Matrix parse_two_column_document(const std::string& text) {
    std::size_t at = 0;
    while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
    if (at == text.size()) throw parse_error("column document is empty");

    if (text[at] == '{') {
        ordered_json doc;
        try {
            doc = ordered_json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(std::string("column document is not valid JSON: ") + e.what());
        }
        if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries"))
            throw parse_error("column document must be an object with \"n\" and \"entries\"");
        if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 2)
            throw parse_error("column document: \"n\" must be an integer of at least 2");
        const int n = static_cast<int>(doc["n"].get<long long>());
        const auto& rows = doc["entries"];
        if (!rows.is_array() || static_cast<int>(rows.size()) != n)
            throw parse_error("column document: \"entries\" must hold exactly n rows");
        std::vector<Rat> cells;
        cells.reserve(static_cast<std::size_t>(n) * 2);
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != 2)
                throw parse_error("column document: every row must hold exactly two cells");
            for (const auto& cell : row)
                cells.push_back(detail::rat_from_json(cell, "column entry"));
        }
        return Matrix(n, 2, std::move(cells));
    }

    std::istringstream in(text);
    std::vector<Rat> cells;
    std::string token;
    while (in >> token) cells.push_back(parse_rational(token));
    if (cells.size() < 4 || cells.size() % 2 != 0)
        throw parse_error("bare column text must hold an even number of values, two per row");
    const int n = static_cast<int>(cells.size() / 2);
    return Matrix(n, 2, std::move(cells));
}

inline std::string matrix_to_json(const Matrix& A) {
    ordered_json doc;
    doc["n"] = A.rows();
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < A.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < A.cols(); ++c) row.push_back(rat_to_string(A.at(r, c)));
        rows.push_back(std::move(row));
    }
    doc["entries"] = std::move(rows);
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// trees as JSON

inline std::string tree_to_json(const MetricTree& t) {
    ordered_json doc;
    doc["n"] = t.n;
    doc["cols"] = {t.col_i + 1, t.col_j + 1};
    doc["p"] = detail::point_to_json(t.p);
    doc["q"] = detail::point_to_json(t.q);
    doc["total"] = rat_to_string(t.total);
    doc["p_offset"] = rat_to_string(t.p_offset());
    doc["q_offset"] = rat_to_string(t.q_offset());

    ordered_json spine = ordered_json::array();
    for (const auto& v : t.spine) {
        ordered_json vx;
        vx["offset"] = rat_to_string(v.offset);
        ordered_json leaves = ordered_json::array();
        for (int leaf : v.leaves) leaves.push_back(leaf + 1);
        vx["leaves"] = std::move(leaves);
        vx["coord"] = detail::point_to_json(v.coord);
        spine.push_back(std::move(vx));
    }
    doc["spine"] = std::move(spine);

    ordered_json edges = ordered_json::array();
    for (int e = 0; e < t.edge_count(); ++e) {
        Bipartition b = t.bipartition(e);
        ordered_json ed;
        ed["length"] = rat_to_string(t.edge_length(e));
        ordered_json ps = ordered_json::array(), qs = ordered_json::array();
        for (int x : b.p_side) ps.push_back(x + 1);
        for (int x : b.q_side) qs.push_back(x + 1);
        ed["p_side"] = std::move(ps);
        ed["q_side"] = std::move(qs);
        edges.push_back(std::move(ed));
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

inline MetricTree tree_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("tree document is not valid JSON: ") + e.what());
    }
    auto need = [&](const char* key) -> const ordered_json& {
        if (!doc.is_object() || !doc.contains(key))
            throw parse_error(std::string("tree document is missing \"") + key + "\"");
        return doc[key];
    };
    if (!need("n").is_number_integer() || doc["n"].get<long long>() < 3)
        throw parse_error("tree document: \"n\" must be an integer of at least 3");
    const int n = static_cast<int>(doc["n"].get<long long>());

    const auto& cols = need("cols");
    if (!cols.is_array() || cols.size() != 2 || !cols[0].is_number_integer() ||
        !cols[1].is_number_integer())
        throw parse_error("tree document: \"cols\" must be a pair of 1-based indices");
    const int col_i = static_cast<int>(cols[0].get<long long>()) - 1;
    const int col_j = static_cast<int>(cols[1].get<long long>()) - 1;
    if (col_i < 0 || col_j < 0 || col_i >= n || col_j >= n || col_i == col_j)
        throw parse_error("tree document: \"cols\" out of range");

    ProjectivePoint p(detail::rat_vector_from_json(need("p"), "tree point p"));
    ProjectivePoint q(detail::rat_vector_from_json(need("q"), "tree point q"));
    if (p.dim() != n || q.dim() != n)
        throw parse_error("tree document: p and q must have n coordinates");
    if (!need("total").is_string())
        throw parse_error("tree document: \"total\" must be a rational string");
    Rat total = parse_rational(doc["total"].get<std::string>());

    const auto& spine = need("spine");
    if (!spine.is_array() || spine.empty())
        throw parse_error("tree document: \"spine\" must be a non-empty array");
    std::vector<SpineVertex> verts;
    for (const auto& vx : spine) {
        if (!vx.is_object() || !vx.contains("offset") || !vx.contains("leaves") ||
            !vx.contains("coord"))
            throw parse_error("tree document: spine vertex needs offset, leaves, coord");
        if (!vx["offset"].is_string())
            throw parse_error("tree document: vertex offset must be a rational string");
        Rat offset = parse_rational(vx["offset"].get<std::string>());
        if (!vx["leaves"].is_array() || vx["leaves"].empty())
            throw parse_error("tree document: vertex leaves must be a non-empty array");
        std::vector<int> leaves;
        for (const auto& leaf : vx["leaves"]) {
            if (!leaf.is_number_integer())
                throw parse_error("tree document: leaf labels must be integers");
            const long long raw = leaf.get<long long>();
            if (raw < 1 || raw > n)
                throw parse_error("tree document: leaf label out of range");
            leaves.push_back(static_cast<int>(raw) - 1);
        }
        ProjectivePoint coord(detail::rat_vector_from_json(vx["coord"], "vertex coord"));
        if (coord.dim() != n)
            throw parse_error("tree document: vertex coordinate must have n entries");
        verts.push_back(SpineVertex{std::move(offset), std::move(leaves), std::move(coord)});
    }
    return MetricTree{n,      col_i,            col_j, std::move(p),
                      std::move(q), std::move(total), std::move(verts)};
}

// ---------------------------------------------------------------------------
// trees as Newick

/// The combinatorial content of a Newick tree document: spine leaf blocks
/// from the p end to the q end, inner edge lengths, the marked columns, and
/// the three lengths that do not live on inner edges.  Coordinates are not
/// part of the Newick form.
struct NewickSkeleton {
    int n = 0;
    int col_i = -1;             // 0-based, like the API
    int col_j = -1;
    Rat p_offset, q_offset, total;
    std::vector<std::vector<int>> leaf_blocks;  // per spine vertex, 0-based
    std::vector<Rat> edge_lengths;              // between consecutive vertices

    bool operator==(const NewickSkeleton&) const = default;
};

inline NewickSkeleton skeleton_of(const MetricTree& t) {
    NewickSkeleton s;
    s.n = t.n;
    s.col_i = t.col_i;
    s.col_j = t.col_j;
    s.p_offset = t.p_offset();
    s.q_offset = t.q_offset();
    s.total = t.total;
    for (const auto& v : t.spine) s.leaf_blocks.push_back(v.leaves);
    for (int e = 0; e < t.edge_count(); ++e) s.edge_lengths.push_back(t.edge_length(e));
    return s;
}

/// Newick text for the tree, rooted at the vertex nearest p.  Leaves are bare
/// 1-based labels; the leaf carrying the p mark comes first in the outer
/// group and the leaf carrying the q mark comes last in the innermost group.
/// Inner edges carry exact rational lengths after ':'.  The distances from
/// the marks to their nearest vertices ride in a trailing comment, since they
/// lie on rays rather than on tree edges.
inline std::string to_newick(const MetricTree& t) {
    auto block = [&](const SpineVertex& v) {
        std::string s;
        for (int leaf : v.leaves) {
            if (!s.empty()) s += ',';
            s += std::to_string(leaf + 1);
        }
        return s;
    };
    const std::size_t last = t.spine.size() - 1;
    std::string acc = "(" + block(t.spine[last]) + "," + std::to_string(t.col_i + 1) + ")";
    for (std::size_t v = last; v-- > 0;) {
        acc = "(" + block(t.spine[v]) + "," + acc + ":" +
              rat_to_string(t.spine[v + 1].offset - t.spine[v].offset) + ")";
    }
    // stitch the p mark's leaf label into the outermost group
    acc.insert(1, std::to_string(t.col_j + 1) + ",");
    acc += "[cols=" + std::to_string(t.col_i + 1) + "," + std::to_string(t.col_j + 1) +
           " p_offset=" + rat_to_string(t.p_offset()) +
           " q_offset=" + rat_to_string(t.q_offset()) + " total=" + rat_to_string(t.total) +
           "];\n";
    return acc;
}

namespace detail {

struct NewickCursor {
    const std::string& text;
    std::size_t at = 0;

    void skip_space() {
        while (at < text.size() && std::isspace(static_cast<unsigned char>(text[at]))) ++at;
    }
    char peek() {
        skip_space();
        if (at >= text.size()) throw parse_error("newick: unexpected end of input");
        return text[at];
    }
    char take() {
        char c = peek();
        ++at;
        return c;
    }
    void expect(char c) {
        if (take() != c)
            throw parse_error(std::string("newick: expected '") + c + "' at byte " +
                              std::to_string(at - 1));
    }
    bool try_take(char c) {
        skip_space();
        if (at < text.size() && text[at] == c) {
            ++at;
            return true;
        }
        return false;
    }
    std::string number_token() {
        skip_space();
        std::size_t start = at;
        while (at < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[at])) || text[at] == '-' ||
                text[at] == '/' || text[at] == '.'))
            ++at;
        if (at == start) throw parse_error("newick: expected a number at byte " +
                                           std::to_string(at));
        return text.substr(start, at - start);
    }
};

struct NewickRawNode {
    std::vector<int> labels;                 // bare leaves, in order
    std::unique_ptr<NewickRawNode> child;    // at most one nested group
    Rat child_length;
};

inline NewickRawNode parse_newick_group(NewickCursor& cur) {
    NewickRawNode node;
    cur.expect('(');
    while (true) {
        if (cur.peek() == '(') {
            if (node.child)
                throw parse_error("newick: a vertex has two nested groups; a line tree "
                                  "has a single spine");
            node.child = std::make_unique<NewickRawNode>(parse_newick_group(cur));
            cur.expect(':');
            node.child_length = parse_rational(cur.number_token());
        } else {
            const std::string tok = cur.number_token();
            const Rat label = parse_rational(tok);
            if (denominator(label) != 1 || label < 1)
                throw parse_error("newick: leaf label '" + tok +
                                  "' is not a positive integer");
            node.labels.push_back(static_cast<int>(numerator(label).convert_to<long long>()));
        }
        if (cur.try_take(',')) continue;
        cur.expect(')');
        return node;
    }
}

}  // namespace detail

/// Parse the Newick dialect written by to_newick back into its skeleton.
/// Strict by design: the comment block is required, labels must cover
/// 1..n exactly once, and the nesting must be a single spine.
inline NewickSkeleton parse_newick(const std::string& text) {
    detail::NewickCursor cur{text};
    detail::NewickRawNode root = detail::parse_newick_group(cur);

    NewickSkeleton s;
    cur.expect('[');
    auto keyval = [&](const std::string& want) -> std::string {
        cur.skip_space();
        for (char c : want) {
            cur.expect(c);
        }
        cur.expect('=');
        return cur.number_token();
    };
    {
        const std::string i_str = keyval("cols");
        cur.expect(',');
        const std::string j_str = cur.number_token();
        s.col_i = static_cast<int>(parse_rational(i_str).convert_to<long long>()) - 1;
        s.col_j = static_cast<int>(parse_rational(j_str).convert_to<long long>()) - 1;
        s.p_offset = parse_rational(keyval("p_offset"));
        s.q_offset = parse_rational(keyval("q_offset"));
        s.total = parse_rational(keyval("total"));
    }
    cur.expect(']');
    cur.expect(';');

    // flatten the single-spine nesting, peeling the two mark labels
    std::vector<detail::NewickRawNode*> chain;
    for (detail::NewickRawNode* at = &root; at; at = at->child.get()) chain.push_back(at);
    if (chain.front()->labels.empty() || chain.back()->labels.empty())
        throw parse_error("newick: the outer and inner groups must carry the mark labels");

    const int pj = chain.front()->labels.front();  // leaf carrying the p mark
    const int qi = chain.back()->labels.back();    // leaf carrying the q mark
    if (pj - 1 != s.col_j || qi - 1 != s.col_i)
        throw parse_error("newick: mark labels disagree with the cols comment");

    std::vector<int> seen;
    for (std::size_t v = 0; v < chain.size(); ++v) {
        std::vector<int> labels = chain[v]->labels;
        if (v == 0) labels.erase(labels.begin());
        if (v + 1 == chain.size()) {
            if (labels.empty())
                throw parse_error("newick: the innermost group lost its mark label");
            labels.pop_back();
        }
        if (labels.empty())
            throw parse_error("newick: a spine vertex has no leaf of its own");
        std::vector<int> block;
        for (int raw : labels) {
            seen.push_back(raw);
            block.push_back(raw - 1);
        }
        s.leaf_blocks.push_back(std::move(block));
        if (v + 1 < chain.size()) s.edge_lengths.push_back(chain[v]->child_length);
    }
    seen.push_back(pj);
    seen.push_back(qi);
    std::sort(seen.begin(), seen.end());
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (seen[k] != static_cast<int>(k) + 1)
            throw parse_error("newick: leaf labels must cover 1..n exactly once");
    s.n = static_cast<int>(seen.size());
    if (s.col_i >= s.n || s.col_j >= s.n || s.col_i < 0 || s.col_j < 0)
        throw parse_error("newick: cols comment out of range");
    return s;
}

// ---------------------------------------------------------------------------
// segments

inline std::string segment_to_json(const TropicalSegment& seg) {
    ordered_json doc;
    doc["p"] = detail::point_to_json(seg.source());
    doc["q"] = detail::point_to_json(seg.target());
    doc["length"] = rat_to_string(seg.length());
    ordered_json bends = ordered_json::array();
    for (const auto& bp : seg.breakpoints()) bends.push_back(detail::point_to_json(bp));
    doc["breakpoints"] = std::move(bends);
    ordered_json parts = ordered_json::array();
    for (const auto& part : seg.parts()) {
        ordered_json pj;
        ordered_json slope = ordered_json::array();
        for (int x : part.slope) slope.push_back(x + 1);
        pj["slope"] = std::move(slope);
        pj["length"] = rat_to_string(part.length);
        parts.push_back(std::move(pj));
    }
    doc["parts"] = std::move(parts);
    return doc.dump(2) + "\n";
}

}  // namespace troplin

#pragma once

// Independent verification of a metric tree against the matrix it claims to
// describe.  Nothing here reuses the builder's bookkeeping: coordinates are
// re-derived from the segment's lambda parameterization, membership goes
// through the rank-two minor test, and the combinatorics are re-checked from
// the raw spine data.  A report of named pass/fail checks comes back instead
// of an exception, so a deliberately corrupted tree can be examined.

#include "troplin/diff_matrix.hpp"
#include "troplin/matrix.hpp"
#include "troplin/ni_matrix.hpp"
#include "troplin/point.hpp"
#include "troplin/rational.hpp"
#include "troplin/segment.hpp"
#include "troplin/tree.hpp"
#include "troplin/tree_builder.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace troplin {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string witness;  // what failed, empty on pass
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckResult& c) { return c.pass; });
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::string describe() const {
        std::ostringstream os;
        for (const auto& c : checks) {
            os << (c.pass ? "  ok   " : "  FAIL ") << c.name;
            if (!c.pass && !c.witness.empty()) os << ": " << c.witness;
            os << '\n';
        }
        return os.str();
    }
};

namespace detail {

/// Primitive lattice direction from a toward b, as a 0/1 indicator vector
/// (class representative).  Fails (nullopt) when the displacement is not a
/// multiple of some e_S, which no genuine tree edge can be.
inline std::optional<std::vector<Rat>> primitive_direction(const ProjectivePoint& a,
                                                           const ProjectivePoint& b) {
    const int n = a.dim();
    Rat hi, lo;
    bool first = true;
    std::vector<Rat> delta(n);
    for (int t = 0; t < n; ++t) {
        delta[t] = b[t] - a[t];
        if (first) {
            hi = lo = delta[t];
            first = false;
        } else {
            if (delta[t] > hi) hi = delta[t];
            if (delta[t] < lo) lo = delta[t];
        }
    }
    if (hi == lo) return std::nullopt;  // a and b coincide as classes
    std::vector<Rat> dir(n, Rat(0));
    for (int t = 0; t < n; ++t) {
        if (delta[t] != hi && delta[t] != lo) return std::nullopt;  // bent displacement
        if (delta[t] == hi) dir[t] = 1;
    }
    return dir;
}

inline bool is_constant_vector(const std::vector<Rat>& v) {
    for (const Rat& x : v)
        if (x != v.front()) return false;
    return true;
}

}  // namespace detail

/// Balancing condition at every inner vertex: the primitive directions of all
/// incident rays and edges sum to a constant vector (the zero class).  Leaf
/// rays point in -e_label; the p and q marks ride the rays of leaf col_j and
/// leaf col_i, attached to the first and last spine vertex.
inline bool verify_balancing(const MetricTree& t) {
    if (t.spine.empty()) return false;
    const int n = t.n;
    for (std::size_t v = 0; v < t.spine.size(); ++v) {
        std::vector<Rat> sum(n, Rat(0));
        std::vector<int> rays = t.spine[v].leaves;
        if (v == 0) rays.push_back(t.leaf_of_p());
        if (v + 1 == t.spine.size()) rays.push_back(t.leaf_of_q());
        for (int leaf : rays) {
            if (leaf < 0 || leaf >= n) return false;
            sum[leaf] -= 1;
        }
        std::vector<const ProjectivePoint*> neighbors;
        if (v > 0) neighbors.push_back(&t.spine[v - 1].coord);
        if (v + 1 < t.spine.size()) neighbors.push_back(&t.spine[v + 1].coord);
        for (const ProjectivePoint* nb : neighbors) {
            auto dir = detail::primitive_direction(t.spine[v].coord, *nb);
            if (!dir) return false;
            for (int x = 0; x < n; ++x) sum[x] += (*dir)[x];
        }
        if (!detail::is_constant_vector(sum)) return false;
    }
    return true;
}

/// Full verification of a tree against the matrix and column pair it claims
/// to describe.  Checks, in order: structural sanity, the two marked
/// endpoints, rank-two membership of every vertex, vertex coordinates against
/// the segment parameterization, length bookkeeping against the column
/// difference, balancing, the caterpillar shape, separation of the two marked
/// leaves by every inner edge, and membership of sampled edge-interior
/// points.
inline VerificationReport verify_tree(const NiMatrix& A, int i, int j, const MetricTree& t) {
    VerificationReport rep;
    auto add = [&](std::string name, bool pass, std::string witness = "") {
        rep.checks.push_back({std::move(name), pass, std::move(witness)});
    };
    const int n = A.order();

    // structure: labels, offsets and dimensions are coherent enough that the
    // remaining checks can run at all
    {
        std::string w;
        if (t.n != n) w = "tree order disagrees with the matrix";
        else if (i < 0 || j < 0 || i >= n || j >= n || i == j) w = "bad column pair";
        else if (t.col_i != i || t.col_j != j) w = "tree was built for a different column pair";
        else if (t.spine.empty()) w = "empty spine";
        else if (t.p.dim() != n || t.q.dim() != n) w = "marked point dimension mismatch";
        else {
            std::vector<int> seen;
            for (const auto& v : t.spine) {
                if (v.coord.dim() != n) { w = "vertex coordinate dimension mismatch"; break; }
                if (v.leaves.empty()) { w = "spine vertex with no leaf"; break; }
                seen.insert(seen.end(), v.leaves.begin(), v.leaves.end());
            }
            if (w.empty()) {
                std::sort(seen.begin(), seen.end());
                std::vector<int> want;
                for (int x = 0; x < n; ++x)
                    if (x != i && x != j) want.push_back(x);
                if (seen != want) w = "spine leaves are not exactly the labels other than i, j";
            }
            if (w.empty())
                for (std::size_t v = 0; v + 1 < t.spine.size(); ++v)
                    if (!(t.spine[v].offset < t.spine[v + 1].offset)) {
                        w = "offsets not strictly increasing (uncontracted or corrupt)";
                        break;
                    }
            if (w.empty() && (t.spine.front().offset < 0 || t.spine.back().offset > t.total))
                w = "offsets escape [0, total]";
        }
        add("structure", w.empty(), w);
        if (!w.empty()) return rep;  // everything below would dereference junk
    }

    const ProjectivePoint p(A.matrix().column(i));
    const ProjectivePoint q(A.matrix().column(j));
    const Rat dist = abs(A.at(i, j) + A.at(j, i));  // |f(i,j)| straight from A

    {
        std::string w;
        if (t.p != p) w = "stored p is not column i";
        else if (t.q != q) w = "stored q is not column j";
        else if (p == q) w = "columns coincide; no line tree exists";
        else if (t.total != dist) w = "stored total differs from |a_ij + a_ji|";
        else if (trop_distance(p, q) != dist) w = "column distance disagrees with |a_ij + a_ji|";
        add("endpoints", w.empty(), w);
        if (!w.empty()) return rep;
    }

    {
        std::string w;
        for (std::size_t v = 0; v < t.spine.size() && w.empty(); ++v)
            if (!rank2_membership(p, q, t.spine[v].coord))
                w = "vertex " + std::to_string(v) + " fails the rank-two minor test";
        add("vertex membership", w.empty(), w);
    }

    const TropicalSegment seg = tconv(p, q);
    {
        std::string w;
        for (std::size_t v = 0; v < t.spine.size() && w.empty(); ++v) {
            const Rat& off = t.spine[v].offset;
            if (off < 0 || off > seg.length())
                w = "vertex " + std::to_string(v) + " offset escapes the segment";
            else if (!(seg.point_at(off) == t.spine[v].coord))
                w = "vertex " + std::to_string(v) + " is not on the segment at its offset";
        }
        add("vertices on segment", w.empty(), w);
    }

    {
        Rat sum = 0;
        for (const Rat& piece : t.arc_lengths()) sum += piece;
        bool pass = (sum == dist) && t.p_offset() >= 0 && t.q_offset() >= 0;
        add("lengths add up", pass,
            pass ? "" : "offsets plus edges give " + rat_to_string(sum) + ", want " +
                            rat_to_string(dist));
    }

    add("balancing", verify_balancing(t), "some vertex's directions do not cancel");

    {
        // caterpillar shape, from raw data: the inner vertices form a path
        // (spine order) and every leaf hangs off exactly one of them.  With
        // the partition already verified, what remains is that consecutive
        // vertices are genuinely adjacent: displacement a single primitive
        // direction.
        std::string w;
        for (std::size_t v = 0; v + 1 < t.spine.size() && w.empty(); ++v)
            if (!detail::primitive_direction(t.spine[v].coord, t.spine[v + 1].coord))
                w = "edge " + std::to_string(v) + " is not a straight lattice segment";
        add("caterpillar", w.empty(), w);
    }

    {
        std::string w;
        for (int e = 0; e < t.edge_count() && w.empty(); ++e) {
            Bipartition b = t.bipartition(e);
            bool p_ok = std::binary_search(b.p_side.begin(), b.p_side.end(), t.leaf_of_p());
            bool q_ok = std::binary_search(b.q_side.begin(), b.q_side.end(), t.leaf_of_q());
            if (!p_ok || !q_ok)
                w = "edge " + std::to_string(e) + " does not separate the marked leaves";
        }
        add("leaf separation", w.empty(), w);
    }

    {
        std::string w;
        const Rat quarters[3] = {Rat(1, 4), Rat(1, 2), Rat(3, 4)};
        for (int e = 0; e < t.edge_count() && w.empty(); ++e) {
            const Rat lo = t.spine[e].offset;
            const Rat len = t.edge_length(e);
            for (const Rat& frac : quarters) {
                if (!rank2_membership(p, q, seg.point_at(lo + frac * len))) {
                    w = "interior of edge " + std::to_string(e) + " leaves the line";
                    break;
                }
            }
        }
        add("edge samples", w.empty(), w);
    }

    return rep;
}

/// Four-point consistency: the sign-based type must agree with the Pluecker
/// classification, and the closed-form vertices must reproduce what the
/// staged recursion builds for columns (0, 1), distances included.
inline VerificationReport cross_check_n4(const NiMatrix& A) {
    if (A.order() != 4) throw std::invalid_argument("cross_check_n4: order four required");
    VerificationReport rep;
    auto add = [&](std::string name, bool pass, std::string witness = "") {
        rep.checks.push_back({std::move(name), pass, std::move(witness)});
    };

    const DifferenceMatrix F = DifferenceMatrix::build(A, 0, 1);
    if (F.distance() == 0) {
        add("columns distinct", false, "columns 1 and 2 coincide; nothing to cross-check");
        return rep;
    }
    const ProjectivePoint p(A.matrix().column(0));
    const ProjectivePoint q(A.matrix().column(1));

    const LineType4 by_sign = classify_type4(F);
    const LineType4 by_pluecker = classify_from_pluecker(pluecker(p, q));
    add("type agreement", by_sign == by_pluecker,
        to_string(by_sign) + " by sign vs " + to_string(by_pluecker) + " by Pluecker");

    const Vertices4 closed = vertices4(p, q, by_sign);
    const MetricTree t = build_tree(A, 0, 1);
    add("pq vertex", t.pq().coord == closed.pq, "closed form disagrees with the recursion");
    add("qp vertex", t.qp().coord == closed.qp, "closed form disagrees with the recursion");
    add("d(p, pq)", t.p_offset() == closed.d_p_pq, "distance to the near vertex disagrees");
    add("d(pq, qp)", t.qp().offset - t.pq().offset == closed.d_pq_qp,
        "inter-vertex distance disagrees");
    add("d(qp, q)", t.q_offset() == closed.d_qp_q, "distance from the far vertex disagrees");

    std::vector<int> want_pq, want_qp;
    switch (by_sign) {
        case LineType4::t13_24: want_pq = {3}; want_qp = {2}; break;
        case LineType4::t14_23: want_pq = {2}; want_qp = {3}; break;
        default:                want_pq = want_qp = {2, 3}; break;
    }
    add("sprout labels", t.pq().leaves == want_pq && t.qp().leaves == want_qp,
        "spine leaf labels do not match the type");
    return rep;
}

}  // namespace troplin

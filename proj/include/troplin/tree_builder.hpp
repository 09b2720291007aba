#pragma once

// Construction of the stable tropical line L(p, q) through two columns of an
// NI matrix, as a metric caterpillar tree.
//
// The staged recursion: start from the bare segment between p and q (stage
// 2).  At stage s the next leaf label joins; its node must sit at offset
// off(c) = |f(j, c)| from p, the active entry measuring the piece of the path
// containing that offset fractures into the two entries (near, c) and
// (c, far), and conservation |f(victim)| = |part| + |part| holds exactly.
// After all stages the nodes, read off by increasing offset, are the spine of
// a caterpillar; coincident offsets merge (degenerate inputs).  Vertex
// coordinates come from walking the segment from p: between consecutive
// nodes the direction is e_S for S = {j} plus every label already passed,
// and the walk must land exactly on q, which is asserted.
//
// For four points there are also closed forms via the 2x2 minors
// m_kl = max(p_k + q_l, p_l + q_k); those live in pluecker / classify_type4 /
// vertices4 and serve as an independent route the oracle compares against.

#include "troplin/diff_matrix.hpp"
#include "troplin/matrix.hpp"
#include "troplin/ni_matrix.hpp"
#include "troplin/point.hpp"
#include "troplin/rational.hpp"
#include "troplin/tree.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace troplin {

// ---------------------------------------------------------------------------
// Four-point closed forms

/// The six 2x2 tropical minors of [p q] and the three pairings of the
/// tropical Pluecker relation.  The relation (the maximum pairing value is
/// attained at least twice) holds for every pair of points and is asserted.
struct PlueckerData {
    Rat m12, m13, m14, m23, m24, m34;
    Rat max_sum;                   // max of the three pairing sums
    std::array<bool, 3> attains;   // {12|34, 13|24, 14|23} reach max_sum?

    Rat sum(int which) const {
        switch (which) {
            case 0: return m12 + m34;
            case 1: return m13 + m24;
            default: return m14 + m23;
        }
    }
};

inline PlueckerData pluecker(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p.dim() != 4 || q.dim() != 4)
        throw std::invalid_argument("pluecker: four coordinates required");
    auto m = [&](int k, int l) { return std::max(p[k] + q[l], p[l] + q[k]); };
    PlueckerData d{m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3), Rat(0), {}};
    d.max_sum = std::max({d.sum(0), d.sum(1), d.sum(2)});
    int count = 0;
    for (int w = 0; w < 3; ++w) {
        d.attains[w] = (d.sum(w) == d.max_sum);
        count += d.attains[w];
    }
    detail::require(count >= 2, "pluecker: tropical Pluecker relation violated");
    return d;
}

/// Combinatorial type of a four-point line, named by the pair of leaves whose
/// pairing sum stays strictly below the maximum ({1234} when all three tie).
enum class LineType4 { t12_34, t13_24, t14_23, t1234 };

inline std::string to_string(LineType4 t) {
    switch (t) {
        case LineType4::t12_34: return "{12,34}";
        case LineType4::t13_24: return "{13,24}";
        case LineType4::t14_23: return "{14,23}";
        default: return "{1234}";
    }
}

inline LineType4 classify_from_pluecker(const PlueckerData& d) {
    if (d.attains[0] && d.attains[1] && d.attains[2]) return LineType4::t1234;
    if (!d.attains[0]) return LineType4::t12_34;
    if (!d.attains[1]) return LineType4::t13_24;
    return LineType4::t14_23;
}

/// Type from the difference matrix alone: the sign of the entry at the two
/// labels other than the marked pair decides how the four leaves pair up.
/// Positive pairs col_i with the smaller spare label, negative with the
/// larger, zero collapses both vertices into one.  The result is named in
/// global labels, so it can be compared with the Pluecker route directly; the
/// pairing never puts col_i and col_j together.
inline LineType4 classify_type4(const DifferenceMatrix& F) {
    if (F.order() != 4) throw std::invalid_argument("classify_type4: order four required");
    std::vector<int> rest;
    for (int x = 0; x < 4; ++x)
        if (x != F.col_i() && x != F.col_j()) rest.push_back(x);
    const Rat& f = F.at(rest[0], rest[1]);
    if (f == 0) return LineType4::t1234;
    const int with_i = (f > 0) ? rest[0] : rest[1];
    const int with_j = (f > 0) ? rest[1] : rest[0];
    int partner_of_0;  // the leaf that label 0 pairs with names the type
    if (F.col_i() == 0) partner_of_0 = with_i;
    else if (F.col_j() == 0) partner_of_0 = with_j;
    else if (with_i == 0) partner_of_0 = F.col_i();
    else partner_of_0 = F.col_j();
    switch (partner_of_0) {
        case 1: return LineType4::t12_34;
        case 2: return LineType4::t13_24;
        default: return LineType4::t14_23;
    }
}

/// The two vertices of a four-point line, closed form.  `pq` is the vertex
/// the marked point p hangs from, `qp` the one for q; for type {1234} they
/// coincide.  Which of the two closed-form vertices is nearest p depends on
/// which ray carries p, so the orientation is fixed by distance additivity
/// along the path p, pq, qp, q rather than by the type alone.
struct Vertices4 {
    LineType4 type;
    ProjectivePoint pq, qp;
    Rat d_p_pq, d_pq_qp, d_qp_q;
};

inline Vertices4 vertices4(const ProjectivePoint& p, const ProjectivePoint& q, LineType4 type) {
    const PlueckerData d = pluecker(p, q);
    auto mk = [](Rat a, Rat b, Rat c, Rat e) {
        return ProjectivePoint(std::vector<Rat>{std::move(a), std::move(b), std::move(c),
                                                std::move(e)});
    };
    ProjectivePoint pq = mk(Rat(0), Rat(0), Rat(0), Rat(0)), qp = pq;
    switch (type) {
        case LineType4::t13_24:
            pq = mk(-d.m24, -d.m14, d.m34 - d.m24 - d.m14, -d.m12);  // rays 2 and 4
            qp = mk(-d.m23, -d.m13, -d.m12, d.m14 - d.m13 - d.m12);  // rays 1 and 3
            break;
        case LineType4::t14_23:
            pq = mk(-d.m23, -d.m13, -d.m12, d.m34 - d.m13 - d.m23);  // rays 2 and 3
            qp = mk(-d.m24, -d.m14, d.m13 - d.m12 - d.m14, -d.m12);  // rays 1 and 4
            break;
        case LineType4::t12_34:
            pq = mk(d.m13 - d.m23 - d.m34, -d.m34, -d.m24, -d.m23);  // rays 3 and 4
            qp = mk(-d.m24, -d.m14, d.m13 - d.m12 - d.m14, -d.m12);  // rays 1 and 2
            break;
        case LineType4::t1234:
            pq = qp = mk(-d.m24, -d.m14, d.m23 - d.m24 - d.m12, -d.m12);
            break;
    }
    const Rat whole = trop_distance(p, q);
    auto additive = [&](const ProjectivePoint& a, const ProjectivePoint& b) {
        return trop_distance(p, a) + trop_distance(a, b) + trop_distance(b, q) == whole;
    };
    if (!additive(pq, qp)) {
        std::swap(pq, qp);
        detail::require(additive(pq, qp), "vertices4: neither vertex order is additive");
    }
    return {type, pq, qp, trop_distance(p, pq), trop_distance(pq, qp), trop_distance(qp, q)};
}

// ---------------------------------------------------------------------------
// The staged construction for any n >= 3

struct BuildDetails {
    MetricTree tree;
    DifferenceMatrix F;
    ActiveSet active;                      // final ledger: one arc per path piece
    std::vector<FractureRecord> fractures; // one per stage, in order
    bool generic = true;                   // no ties, zero parts, or collapses
    std::vector<std::string> notes;        // what was degenerate, if anything
};

namespace detail {

/// Cramer vertex of the line through two points of Q^2 (three coordinates):
/// [-m_23, -m_13, -m_12].  Used as a cross-check on the three-point stage.
inline ProjectivePoint cramer3(const ProjectivePoint& p, const ProjectivePoint& q) {
    auto m = [&](int k, int l) { return std::max(p[k] + q[l], p[l] + q[k]); };
    return ProjectivePoint(std::vector<Rat>{-m(1, 2), -m(0, 2), -m(0, 1)});
}

}  // namespace detail

inline BuildDetails build_tree_detailed(const NiMatrix& A, int i, int j) {
    const int n = A.order();
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw std::invalid_argument("build_tree: bad column pair");
    if (n < 3)
        throw domain_error("build_tree: a line tree needs n >= 3 (n = 2 has no inner vertex)");

    DifferenceMatrix F = DifferenceMatrix::build(A, i, j);
    if (F.distance() == 0)
        throw domain_error("build_tree: columns " + std::to_string(i + 1) + " and " +
                           std::to_string(j + 1) + " are equal as classes");

    BuildDetails out{MetricTree{n, i, j, ProjectivePoint(A.matrix().column(i)),
                                ProjectivePoint(A.matrix().column(j)), F.distance(), {}},
                     F,
                     initial_active(F),
                     {},
                     true,
                     {}};

    for (int stage = 3; stage <= n; ++stage) {
        FractureRecord rec = find_fracture(F, out.active, stage);
        apply_fracture(out.active, F, rec);
        if (rec.minimizer_tie) {
            out.generic = false;
            std::ostringstream os;
            os << "stage " << stage << ": nearest-node tie for leaf " << rec.new_label + 1
               << " (rows";
            for (int r : rec.tie_rows) os << ' ' << r + 1;
            os << ")";
            out.notes.push_back(os.str());
        }
        if (rec.zero_part) {
            out.generic = false;
            out.notes.push_back("stage " + std::to_string(stage) + ": leaf " +
                                std::to_string(rec.new_label + 1) +
                                "'s node lands on an existing node");
        }
        out.fractures.push_back(std::move(rec));
    }

    // Nodes in path order; coincident offsets merge into one spine vertex.
    std::vector<std::pair<Rat, int>> nodes;  // (offset, label)
    for (int c = 0; c < n; ++c)
        if (c != i && c != j) nodes.emplace_back(F.offset_of(c), c);
    std::sort(nodes.begin(), nodes.end());

    const ProjectivePoint& p = out.tree.p;
    std::vector<int> dir{j};  // direction set S of the walk, kept sorted
    ProjectivePoint cursor = p;
    Rat walked = 0;
    for (std::size_t k = 0; k < nodes.size();) {
        std::size_t k2 = k;
        while (k2 < nodes.size() && nodes[k2].first == nodes[k].first) ++k2;
        cursor = cursor.translated(dir, nodes[k].first - walked);
        walked = nodes[k].first;
        SpineVertex v{walked, {}, cursor};
        for (std::size_t t = k; t < k2; ++t) {
            v.leaves.push_back(nodes[t].second);
            dir.push_back(nodes[t].second);
        }
        std::sort(dir.begin(), dir.end());
        out.tree.spine.push_back(std::move(v));
        k = k2;
    }
    if (out.tree.spine.front().offset == 0) {
        out.notes.push_back("p coincides with the vertex pq (zero p offset)");
        out.generic = false;
    }
    if (out.tree.spine.back().offset == out.tree.total) {
        out.notes.push_back("q coincides with the vertex qp (zero q offset)");
        out.generic = false;
    }
    if (!out.tree.trivalent()) out.generic = false;

    // Two-sided closure of the walk: finishing the last piece must reach q
    // exactly, with every label except i in the direction set.
    detail::require(static_cast<int>(dir.size()) == n - 1,
                    "build_tree: walk direction set incomplete");
    detail::require(cursor.translated(dir, out.tree.total - walked) == out.tree.q,
                    "build_tree: walk from p does not land on q");

    if (n == 3)
        detail::require(out.tree.spine.front().coord == detail::cramer3(out.tree.p, out.tree.q),
                        "build_tree: three-point vertex disagrees with Cramer's rule");

    return out;
}

inline MetricTree build_tree(const NiMatrix& A, int i, int j) {
    return build_tree_detailed(A, i, j).tree;
}

/// Merges spine vertices at equal offsets (their coordinates must already
/// agree) so that all remaining edges have positive length.  Trees straight
/// out of build_tree are already contracted; this is for trees assembled by
/// other means.  Zero p/q offsets are not a structural degeneracy (the mark
/// just sits on the end vertex) and are left alone.
inline MetricTree contract_degeneracies(const MetricTree& t) {
    if (t.spine.empty()) throw std::invalid_argument("contract_degeneracies: empty spine");
    MetricTree out = t;
    out.spine.clear();
    for (const auto& v : t.spine) {
        if (!out.spine.empty() && out.spine.back().offset == v.offset) {
            detail::require(out.spine.back().coord == v.coord,
                            "contract_degeneracies: equal offsets, different coordinates");
            auto& into = out.spine.back().leaves;
            into.insert(into.end(), v.leaves.begin(), v.leaves.end());
            std::sort(into.begin(), into.end());
        } else {
            out.spine.push_back(v);
        }
    }
    return out;
}

}  // namespace troplin

#pragma once

// The metric caterpillar tree of a stable tropical line through two columns
// of an NI matrix.
//
// The structure is a spine of inner vertices listed from the p end to the q
// end, each sitting at a known offset along the p-to-q segment and sprouting
// one leaf ray per label (several labels after degeneracies collapse).  Two
// more rays close the picture: leaf col_j's ray at the first spine vertex
// carries the marked point p, and leaf col_i's ray at the last one carries q.
// Leaf rays have primitive directions -e_label (equivalently +e_complement
// for the last coordinate's label).
//
// MetricTree is deliberately plain data.  The builder only ever returns
// instances satisfying the invariants; the oracle checks any instance from
// scratch, which is also how tests inject faults.

#include "troplin/point.hpp"
#include "troplin/rational.hpp"

#include <algorithm>
#include <vector>

namespace troplin {

struct SpineVertex {
    Rat offset;               // position along the p-to-q segment, from p
    std::vector<int> leaves;  // sorted 0-based leaf labels sprouting here
    ProjectivePoint coord;

    bool operator==(const SpineVertex&) const = default;
};

/// One inner edge's split of the leaf set, both sides sorted, 0-based.
struct Bipartition {
    std::vector<int> p_side, q_side;

    bool operator==(const Bipartition&) const = default;
};

struct MetricTree {
    int n = 0;
    int col_i = 0, col_j = 1;  // p is column col_i, q is column col_j
    ProjectivePoint p, q;
    Rat total;  // tropical distance from p to q
    std::vector<SpineVertex> spine;

    bool operator==(const MetricTree&) const = default;

    /// Leaf whose ray carries the marked point p (resp. q).
    int leaf_of_p() const { return col_j; }
    int leaf_of_q() const { return col_i; }

    const SpineVertex& pq() const { return spine.front(); }  // vertex nearest p
    const SpineVertex& qp() const { return spine.back(); }   // vertex nearest q

    Rat p_offset() const { return spine.front().offset; }          // d(p, pq)
    Rat q_offset() const { return total - spine.back().offset; }   // d(qp, q)

    int edge_count() const { return static_cast<int>(spine.size()) - 1; }
    Rat edge_length(int e) const { return spine[e + 1].offset - spine[e].offset; }

    /// All pieces of the p-to-q path in order: d(p, pq), the spine edges,
    /// d(qp, q).  Sums to total.
    std::vector<Rat> arc_lengths() const {
        std::vector<Rat> out;
        out.push_back(p_offset());
        for (int e = 0; e < edge_count(); ++e) out.push_back(edge_length(e));
        out.push_back(q_offset());
        return out;
    }

    /// Split induced by inner edge e (between spine[e] and spine[e+1]):
    /// p side holds leaf col_j plus everything sprouted up to spine[e].
    Bipartition bipartition(int e) const {
        Bipartition b;
        b.p_side.push_back(col_j);
        for (int v = 0; v <= e; ++v)
            b.p_side.insert(b.p_side.end(), spine[v].leaves.begin(), spine[v].leaves.end());
        std::sort(b.p_side.begin(), b.p_side.end());
        for (int x = 0; x < n; ++x)
            if (!std::binary_search(b.p_side.begin(), b.p_side.end(), x)) b.q_side.push_back(x);
        return b;
    }

    std::vector<Bipartition> bipartitions() const {
        std::vector<Bipartition> out;
        for (int e = 0; e < edge_count(); ++e) out.push_back(bipartition(e));
        return out;
    }

    /// Degree three everywhere: each spine vertex sprouts exactly one leaf.
    /// (End vertices get their third neighbor from the col_i/col_j rays, the
    /// single-vertex tree from both.)
    bool trivalent() const {
        for (const auto& v : spine)
            if (v.leaves.size() != 1) return false;
        return true;
    }
};

}  // namespace troplin

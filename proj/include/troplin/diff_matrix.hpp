#pragma once

// The difference matrix of two chosen columns of an NI matrix, and the
// fracture bookkeeping that drives the staged tree construction.
//
// For columns i, j of an NI matrix A, set
//     f(k, l) = a_ki + a_lj - a_kj - a_li.
// This is antisymmetric and additive (f(k,l) + f(l,r) = f(k,r)), so the
// quantity off(x) = -f(j, x) behaves like a coordinate: off(j) = 0,
// off(i) = f(i, j) = the tropical distance between the two columns, and
// |f(k, l)| = |off(k) - off(l)| for every pair.  Geometrically, off(x) is the
// position of the tree node carrying leaf x along the segment from p
// (column i) to q (column j), which is why the fracture recursion below can
// run entirely on these numbers.
//
// Treating (i, j) as the distinguished pair here is the same thing as
// relabeling the indices so that the pair comes first; nothing needs to be
// permuted explicitly.

#include "troplin/matrix.hpp"
#include "troplin/ni_matrix.hpp"
#include "troplin/rational.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace troplin {

/// The 2x2 difference a + d - b - c; the scalar every f(k, l) is an instance of.
inline Rat difference(const Matrix& M) {
    if (M.rows() != 2 || M.cols() != 2)
        throw std::invalid_argument("difference: expected a 2x2 matrix");
    return M.at(0, 0) + M.at(1, 1) - M.at(0, 1) - M.at(1, 0);
}

class DifferenceMatrix {
public:
    /// Builds F for columns i < j is not required; any i != j works.  Verifies
    /// additivity and the sign/maximum invariants before returning; a failure
    /// there means the certified input was corrupted, hence internal_error.
    static DifferenceMatrix build(const NiMatrix& A, int i, int j) {
        const int n = A.order();
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw std::invalid_argument("DifferenceMatrix: bad column pair");
        DifferenceMatrix F;
        F.n_ = n;
        F.i_ = i;
        F.j_ = j;
        F.f_.assign(static_cast<std::size_t>(n) * n, Rat(0));
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l) {
                Rat v = A.at(k, i) + A.at(l, j) - A.at(k, j) - A.at(l, i);
                F.f_[F.pos(l, k)] = -v;
                F.f_[F.pos(k, l)] = std::move(v);
            }

        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l)
                for (int r = l + 1; r < n; ++r)
                    detail::require(F.at(k, l) + F.at(l, r) == F.at(k, r),
                                    "DifferenceMatrix: additivity failed");
        const Rat top = abs(F.at(i, j));
        for (int k = 0; k < n; ++k) {
            if (k != i)
                detail::require(F.at(i, k) >= 0, "DifferenceMatrix: row-i sign invariant failed");
            if (k != j)
                detail::require(F.at(j, k) <= 0, "DifferenceMatrix: row-j sign invariant failed");
            for (int l = k + 1; l < n; ++l)
                detail::require(abs(F.at(k, l)) <= top,
                                "DifferenceMatrix: pair entry exceeds |f(i,j)|");
        }
        return F;
    }

    int order() const { return n_; }
    int col_i() const { return i_; }
    int col_j() const { return j_; }

    /// Signed entry, defined for any k != l; at(l, k) == -at(k, l).
    const Rat& at(int k, int l) const {
        if (k == l || k < 0 || l < 0 || k >= n_ || l >= n_)
            throw std::invalid_argument("DifferenceMatrix: bad index pair");
        return f_[pos(k, l)];
    }

    /// Distance between the two chosen columns, |f(i, j)|.
    Rat distance() const { return abs(at(i_, j_)); }

    /// Position of leaf x's node along the segment from p = column i:
    /// off(j) = 0, off(i) = distance(), and 0 <= off(x) <= distance() always.
    Rat offset_of(int x) const {
        if (x == j_) return Rat(0);
        return -at(j_, x);
    }

private:
    DifferenceMatrix() = default;
    std::size_t pos(int k, int l) const { return static_cast<std::size_t>(k) * n_ + l; }

    int n_ = 0, i_ = 0, j_ = 1;
    std::vector<Rat> f_;  // full antisymmetric table, diagonal unused
};

/// One active entry of the recursion: the pair (near, far) whose f-value
/// currently measures the piece of the p-to-q path between offsets lo and hi.
/// `near` is the label of the node closer to p (label j for the first arc),
/// `far` the one closer to q (label i for the last arc).
struct ActiveArc {
    int near, far;
    Rat lo, hi;

    Rat length() const { return hi - lo; }
};

/// The bookkeeping carried between stages: which entries of F are active and
/// which piece of the path each one measures.  Arcs are kept in order from p,
/// so they tile [0, total] exactly.
struct ActiveSet {
    int stage = 2;  // number of leaf labels placed so far
    Rat total;      // |f(i, j)|
    std::vector<ActiveArc> arcs;

    /// Human-readable role of an arc in the finished tree: the p-side offset,
    /// the q-side offset, or an inner edge.
    std::string role(std::size_t idx) const {
        const ActiveArc& a = arcs[idx];
        if (idx == 0 && idx + 1 == arcs.size()) return "whole segment";
        if (idx == 0) return "offset d(p, pq)";
        if (idx + 1 == arcs.size()) return "offset d(qp, q)";
        return "edge between the nodes of leaves " + std::to_string(a.near + 1) + " and " +
               std::to_string(a.far + 1);
    }

    std::set<int> labels() const {
        std::set<int> out;
        for (const auto& a : arcs) {
            out.insert(a.near);
            out.insert(a.far);
        }
        return out;
    }
};

inline ActiveSet initial_active(const DifferenceMatrix& F) {
    ActiveSet as;
    as.stage = 2;
    as.total = F.distance();
    as.arcs.push_back({F.col_j(), F.col_i(), Rat(0), as.total});
    return as;
}

/// Everything find_fracture learns when leaf `new_label` enters: which active
/// entry breaks, the two entries replacing it, and whether the instance was
/// degenerate (tied minimizing rows, or a zero-length part).
struct FractureRecord {
    int stage;      // the stage this fracture completes (3-based count)
    int new_label;  // leaf joining at this stage
    Rat offset;     // its node's position, measured from p

    int victim_near, victim_far;  // fractured arc, |f| = sum of the parts
    int part_p_near, part_p_far;  // entry measuring [victim.lo, offset]
    int part_q_near, part_q_far;  // entry measuring [offset, victim.hi]

    bool minimizer_tie = false;
    std::vector<int> tie_rows;  // all rows minimizing |f(row, new_label)|, if tied
    bool zero_part = false;     // new node landed on an existing node
};

namespace detail {

/// Rank of a label in the frame where the chosen pair comes first; used only
/// to orient entries the way the staged invariants are stated.
inline int pair_rank(const DifferenceMatrix& F, int label) {
    if (label == F.col_i()) return 0;
    if (label == F.col_j()) return 1;
    int r = 2;
    for (int x = 0; x < label; ++x)
        if (x != F.col_i() && x != F.col_j()) ++r;
    return r;
}

/// Signed value of an arc's entry read in pair-first order (smaller rank
/// first); this is the sign the stage invariants talk about.
inline Rat oriented_value(const DifferenceMatrix& F, const ActiveArc& a) {
    return pair_rank(F, a.near) < pair_rank(F, a.far) ? F.at(a.near, a.far)
                                                      : F.at(a.far, a.near);
}

}  // namespace detail

/// Locates the fracture for stage `stage`: the smallest label not yet placed
/// joins, its node offset is read off F, and the arc containing that offset
/// is the victim.  Conservation |f(victim)| = |f(part)| + |f(part)| is exact
/// by additivity and is asserted.  Degeneracies (tied nearest rows, zero
/// parts) are reported in the record, not treated as errors; the tree builder
/// decides what to do with them.
inline FractureRecord find_fracture(const DifferenceMatrix& F, const ActiveSet& active,
                                    int stage) {
    if (stage != active.stage + 1)
        throw std::invalid_argument("find_fracture: stages must advance one at a time");
    if (stage < 3 || stage > F.order())
        throw std::invalid_argument("find_fracture: stage outside [3, n]");

    const std::set<int> placed = active.labels();
    int c = -1;
    for (int x = 0; x < F.order(); ++x)
        if (!placed.count(x)) {
            c = x;
            break;
        }
    detail::require(c >= 0, "find_fracture: no label left to place");

    FractureRecord rec;
    rec.stage = stage;
    rec.new_label = c;
    rec.offset = F.offset_of(c);
    detail::require(rec.offset >= 0 && rec.offset <= active.total,
                    "find_fracture: offset escapes the segment");

    Rat best;
    bool first = true;
    for (int row : placed) {
        Rat d = abs(F.at(row, c));
        if (first || d < best) {
            best = std::move(d);
            rec.tie_rows.assign(1, row);
            first = false;
        } else if (d == best) {
            rec.tie_rows.push_back(row);
        }
    }
    rec.minimizer_tie = rec.tie_rows.size() > 1;

    const ActiveArc* victim = nullptr;
    for (const auto& a : active.arcs)
        if (a.lo <= rec.offset && rec.offset <= a.hi) {
            victim = &a;
            break;
        }
    detail::require(victim != nullptr, "find_fracture: no arc contains the new offset");

    detail::require(abs(F.at(victim->near, c)) == rec.offset - victim->lo,
                    "find_fracture: p-side part does not match the offset");
    detail::require(abs(F.at(victim->far, c)) == victim->hi - rec.offset,
                    "find_fracture: q-side part does not match the offset");
    bool nearest_is_endpoint = false;
    for (int row : rec.tie_rows)
        nearest_is_endpoint |= (row == victim->near || row == victim->far);
    detail::require(nearest_is_endpoint, "find_fracture: nearest row not on the victim arc");

    rec.victim_near = victim->near;
    rec.victim_far = victim->far;
    rec.part_p_near = victim->near;
    rec.part_p_far = c;
    rec.part_q_near = c;
    rec.part_q_far = victim->far;
    rec.zero_part = (rec.offset == victim->lo || rec.offset == victim->hi);
    if (!rec.minimizer_tie) rec.tie_rows.clear();
    return rec;
}

/// Splits the victim arc in two and advances the stage, then re-asserts the
/// four properties the recursion maintains:
///   1. every placed label sits on some arc endpoint,
///   2. the new label sits on exactly two arcs,
///   3. oriented entry values include both signs (zeros count for either),
///   4. the arc lengths tile [0, total] exactly.
inline void apply_fracture(ActiveSet& active, const DifferenceMatrix& F,
                           const FractureRecord& rec) {
    auto it = std::find_if(active.arcs.begin(), active.arcs.end(), [&](const ActiveArc& a) {
        return a.near == rec.victim_near && a.far == rec.victim_far;
    });
    detail::require(it != active.arcs.end(), "apply_fracture: victim arc vanished");

    const ActiveArc old = *it;
    it = active.arcs.erase(it);
    it = active.arcs.insert(it, {rec.new_label, old.far, rec.offset, old.hi});
    active.arcs.insert(it, {old.near, rec.new_label, old.lo, rec.offset});
    active.stage += 1;

    const std::set<int> placed = active.labels();
    detail::require(static_cast<int>(placed.size()) == active.stage,
                    "stage invariant 1: some placed label lost its arc");
    int touching_new = 0;
    for (const auto& a : active.arcs)
        touching_new += (a.near == rec.new_label) + (a.far == rec.new_label);
    detail::require(touching_new == 2, "stage invariant 2: new label must sit on two arcs");
    bool has_nonneg = false, has_nonpos = false;
    Rat tiled = 0;
    Rat cursor = 0;
    for (const auto& a : active.arcs) {
        Rat v = detail::oriented_value(F, a);
        has_nonneg |= (v >= 0);
        has_nonpos |= (v <= 0);
        detail::require(a.lo == cursor && a.hi >= a.lo, "stage invariant 4: arcs out of order");
        cursor = a.hi;
        tiled += a.length();
    }
    detail::require(has_nonneg && has_nonpos, "stage invariant 3: entries all one sign");
    detail::require(tiled == active.total && cursor == active.total,
                    "stage invariant 4: arcs do not tile the segment");
}

}  // namespace troplin

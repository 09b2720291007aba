#pragma once

// Tropical segments: tconv(p, q), the unique geodesic-like path that the
// stable line through p and q contains between them.
//
// Parameterize by lambda: f(lambda) = class of max(lambda + p, q), taken
// coordinatewise on canonical representatives.  As lambda sweeps from
// max_i(q_i - p_i) down to min_i(q_i - p_i), f walks from p to q.  The path
// is piecewise linear; it bends exactly where lambda passes one of the values
// q_i - p_i, and between bends it moves with primitive direction e_S for the
// set S of coordinates where lambda + p is still winning.  Those direction
// sets are nested along the walk, and the lambda decrement of a piece equals
// its integer (lattice) length.

#include "troplin/point.hpp"
#include "troplin/rational.hpp"

#include <algorithm>
#include <vector>

namespace troplin {

struct SegmentPart {
    std::vector<int> slope;  // 0-based coordinate set S; direction is e_S
    Rat length;              // integer length of this piece, always > 0
};

class TropicalSegment {
public:
    const ProjectivePoint& source() const { return breakpoints_.front(); }
    const ProjectivePoint& target() const { return breakpoints_.back(); }

    /// Bend points from p to q inclusive; parts()[k] joins breakpoint k to k+1.
    const std::vector<ProjectivePoint>& breakpoints() const { return breakpoints_; }
    const std::vector<SegmentPart>& parts() const { return parts_; }

    /// Total integer length; equals trop_distance(source, target).
    const Rat& length() const { return total_; }

    /// The point at a given integer-length offset from the source, 0 at p and
    /// length() at q.
    ProjectivePoint point_at(const Rat& offset) const {
        if (offset < 0 || offset > total_)
            throw std::invalid_argument("point_at: offset outside [0, length]");
        const Rat lam = lambda_max_ - offset;
        const auto& p = breakpoints_.front().coords();
        const auto& q = breakpoints_.back().coords();
        std::vector<Rat> raw(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) raw[i] = std::max(Rat(lam + p[i]), q[i]);
        return ProjectivePoint(std::move(raw));
    }

private:
    friend TropicalSegment tconv(const ProjectivePoint&, const ProjectivePoint&);
    TropicalSegment() = default;

    std::vector<ProjectivePoint> breakpoints_;
    std::vector<SegmentPart> parts_;
    Rat total_;
    Rat lambda_max_;
};

/// Tropical convex hull of two distinct classes, oriented from p to q.
/// Coincident bend values collapse, so no part ever has zero length and the
/// part count is at most dim - 1.
inline TropicalSegment tconv(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p.dim() != q.dim()) throw std::invalid_argument("tconv: dimension mismatch");
    if (p == q) throw domain_error("tconv: endpoints coincide, segment is degenerate");
    const int n = p.dim();

    std::vector<Rat> lambda(n);
    for (int i = 0; i < n; ++i) lambda[i] = q[i] - p[i];

    std::vector<Rat> levels = lambda;
    std::sort(levels.begin(), levels.end(), std::greater<Rat>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    TropicalSegment seg;
    seg.lambda_max_ = levels.front();
    seg.total_ = levels.front() - levels.back();

    auto point_for = [&](const Rat& lam) {
        std::vector<Rat> raw(n);
        for (int i = 0; i < n; ++i) raw[i] = std::max(Rat(lam + p[i]), q[i]);
        return ProjectivePoint(std::move(raw));
    };

    for (std::size_t k = 0; k < levels.size(); ++k) {
        seg.breakpoints_.push_back(point_for(levels[k]));
        if (k + 1 < levels.size()) {
            SegmentPart part;
            for (int i = 0; i < n; ++i)
                if (lambda[i] >= levels[k]) part.slope.push_back(i);
            part.length = levels[k] - levels[k + 1];
            seg.parts_.push_back(std::move(part));
        }
    }
    return seg;
}

/// Sum of the part lengths (the lattice length of the whole segment).
inline Rat integer_length(const TropicalSegment& seg) {
    Rat sum = 0;
    for (const auto& part : seg.parts()) sum += part.length;
    return sum;
}

}  // namespace troplin

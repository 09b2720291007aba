#pragma once

// Points of the tropical projective torus: R^n modulo constant vectors.
//
// Each class is stored by its canonical representative, the one whose last
// coordinate is zero.  All geometry below (distance, segments, lines) is
// well defined on classes, so normalizing once at construction lets the rest
// of the library compare coordinates directly.

#include "troplin/rational.hpp"

#include <cstddef>
#include <vector>

namespace troplin {

class ProjectivePoint {
public:
    /// Canonicalizes: subtracts the last coordinate from every coordinate.
    explicit ProjectivePoint(std::vector<Rat> raw) : c_(std::move(raw)) {
        if (c_.size() < 2)
            throw std::invalid_argument("ProjectivePoint needs dimension >= 2");
        const Rat last = c_.back();
        if (last != 0)
            for (Rat& x : c_) x -= last;
    }

    int dim() const { return static_cast<int>(c_.size()); }
    const std::vector<Rat>& coords() const { return c_; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }

    bool operator==(const ProjectivePoint&) const = default;

    /// The point reached by moving t in direction e_S (indicator vector of the
    /// 0-based index set S).  In the quotient, e_S and -e_{complement of S}
    /// are the same direction; canonicalization resolves the representative.
    ProjectivePoint translated(const std::vector<int>& S, const Rat& t) const {
        std::vector<Rat> raw = c_;
        for (int i : S) raw[static_cast<std::size_t>(i)] += t;
        return ProjectivePoint(std::move(raw));
    }

private:
    std::vector<Rat> c_;
};

/// Class of a raw coordinate vector (same thing as the constructor; exists so
/// call sites can say what they are doing).
inline ProjectivePoint canonicalize(std::vector<Rat> raw) {
    return ProjectivePoint(std::move(raw));
}

/// Tropical distance between two classes:
///   max over i, j of |p_i - q_i| and |p_i - q_i - p_j + q_j|
/// evaluated on canonical representatives.  Symmetric, zero iff p = q, and
/// equal to the integer length of the tropical segment from p to q.
inline Rat trop_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p.dim() != q.dim())
        throw std::invalid_argument("trop_distance: dimension mismatch");
    const int n = p.dim();
    Rat best = 0;
    for (int i = 0; i < n; ++i) {
        Rat di = p[i] - q[i];
        if (abs(di) > best) best = abs(di);
        for (int j = 0; j < n; ++j) {
            Rat dij = di - (p[j] - q[j]);
            if (abs(dij) > best) best = abs(dij);
        }
    }
    return best;
}

}  // namespace troplin

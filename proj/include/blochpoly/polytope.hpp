#pragma once

#include "blochpoly/laurent.hpp"
#include "blochpoly/period.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <vector>

namespace blochpoly {

struct Pt {
    long long x = 0;
    long long y = 0;
    auto operator<=>(const Pt &) const = default;
};

// Convex lattice polygon. Vertices are counterclockwise, strictly convex (no
// three collinear stored), starting from the lexicographically smallest
// point. Hulls of fewer than three extreme points are kept as one or two
// vertices and flagged degenerate.
class LatticePolygon {
  public:
    static LatticePolygon hull(std::vector<Pt> points); // throws on empty input

    const std::vector<Pt> &vertices() const { return v_; }
    bool degenerate() const { return v_.size() < 3; }

    long long area2() const; // twice the area (shoelace); 0 when degenerate

    friend bool operator==(const LatticePolygon &a, const LatticePolygon &b) {
        return a.v_ == b.v_;
    }

  private:
    explicit LatticePolygon(std::vector<Pt> v) : v_(std::move(v)) {}
    std::vector<Pt> v_;
};

// Raised when mixed_volume receives a polygon contained in a single line.
struct DegeneratePolygonError : std::domain_error {
    DegeneratePolygonError()
        : std::domain_error("mixed volume requires two-dimensional polygons") {}
};

// Exact Minkowski sum. Non-degenerate pairs use a linear counterclockwise
// edge merge; degenerate inputs fall back to pairwise sums plus a hull.
LatticePolygon minkowski_sum(const LatticePolygon &p, const LatticePolygon &r);

// (area2(p+r) - area2(p) - area2(r)) / 2, exact. Throws
// DegeneratePolygonError when either polygon is one-dimensional or a point.
long long mixed_volume(const LatticePolygon &p, const LatticePolygon &r);

// Hull of a polynomial's exponent set.
LatticePolygon newton_polytope(const std::vector<Exp> &support);

// The diamond with vertices (+-q2, 0), (0, +-q1) that carries the support of
// every characteristic polynomial with this period.
LatticePolygon exponent_diamond(const Period &p);

// The four closed-form level-set cardinality bounds.
struct BoundsReport {
    long long bkk = 0;             // 4*q1*q2
    long long bezout_improved = 0; // 9*q1*q2 - 3
    long long bezout_appendix = 0; // (2*a+b)(2*a+b-1), (a,b) = descending (q1,q2)
    long long bezout_original = 0; // 4*(q1+q2)^2
    // mixed_volume(N, N) of an actual support hull, when one was supplied;
    // always equal to bkk (asserted).
    std::optional<long long> bkk_geometric;
};

BoundsReport bounds_report(const Period &p); // rejects non-coprime periods
BoundsReport bounds_report(const Period &p, const LatticePolygon &newton);

} // namespace blochpoly

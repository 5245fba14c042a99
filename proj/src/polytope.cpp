#include "blochpoly/polytope.hpp"

#include <algorithm>
#include <stdexcept>

namespace blochpoly {

namespace {

long long cross(Pt o, Pt a, Pt b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

long long cross(Pt a, Pt b) { return a.x * b.y - a.y * b.x; }

// Half-plane class of an edge direction: 0 for angles in [0, pi), 1 for
// [pi, 2*pi). Lets edge angles be compared across the wraparound.
int angle_half(Pt d) { return (d.y > 0 || (d.y == 0 && d.x > 0)) ? 0 : 1; }

bool angle_less(Pt a, Pt b) {
    int ha = angle_half(a), hb = angle_half(b);
    if (ha != hb)
        return ha < hb;
    return cross(a, b) > 0;
}

// Rotate the counterclockwise vertex cycle to start at the bottommost (then
// leftmost) vertex, so edge angles increase through [0, 2*pi).
std::vector<Pt> start_bottommost(const std::vector<Pt> &v) {
    size_t best = 0;
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i].y < v[best].y || (v[i].y == v[best].y && v[i].x < v[best].x))
            best = i;
    std::vector<Pt> r(v.begin() + best, v.end());
    r.insert(r.end(), v.begin(), v.begin() + best);
    return r;
}

} // namespace

LatticePolygon LatticePolygon::hull(std::vector<Pt> points) {
    if (points.empty())
        throw std::invalid_argument("convex hull of an empty point set");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    size_t n = points.size();
    if (n <= 2)
        return LatticePolygon(std::move(points));

    std::vector<Pt> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) { // lower hull
        while (k >= 2 && cross(h[k - 2], h[k - 1], points[i]) <= 0)
            --k;
        h[k++] = points[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) { // upper hull
        while (k >= lower && cross(h[k - 2], h[k - 1], points[i]) <= 0)
            --k;
        h[k++] = points[i];
    }
    h.resize(k - 1); // last point repeats the first
    return LatticePolygon(std::move(h));
}

long long LatticePolygon::area2() const {
    if (degenerate())
        return 0;
    long long a = 0;
    for (size_t i = 0; i < v_.size(); ++i) {
        const Pt &p = v_[i];
        const Pt &q = v_[(i + 1) % v_.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return a;
}

LatticePolygon minkowski_sum(const LatticePolygon &p, const LatticePolygon &r) {
    const auto &pv = p.vertices();
    const auto &rv = r.vertices();
    if (p.degenerate() || r.degenerate()) {
        std::vector<Pt> sums;
        sums.reserve(pv.size() * rv.size());
        for (const Pt &a : pv)
            for (const Pt &b : rv)
                sums.push_back({a.x + b.x, a.y + b.y});
        return LatticePolygon::hull(std::move(sums));
    }

    std::vector<Pt> a = start_bottommost(pv);
    std::vector<Pt> b = start_bottommost(rv);
    auto edge = [](const std::vector<Pt> &v, size_t i) {
        Pt s = v[i], t = v[(i + 1) % v.size()];
        return Pt{t.x - s.x, t.y - s.y};
    };

    std::vector<Pt> out;
    out.reserve(a.size() + b.size());
    Pt cur{a[0].x + b[0].x, a[0].y + b[0].y};
    out.push_back(cur);
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        Pt e;
        if (j == b.size())
            e = edge(a, i++);
        else if (i == a.size())
            e = edge(b, j++);
        else {
            Pt ea = edge(a, i), eb = edge(b, j);
            if (angle_less(ea, eb))
                e = edge(a, i++);
            else if (angle_less(eb, ea))
                e = edge(b, j++);
            else { // parallel edges fuse
                e = Pt{ea.x + eb.x, ea.y + eb.y};
                ++i;
                ++j;
            }
        }
        cur = Pt{cur.x + e.x, cur.y + e.y};
        out.push_back(cur);
    }
    // The walk closes on the start point; hull() canonicalizes the cycle.
    return LatticePolygon::hull(std::move(out));
}

long long mixed_volume(const LatticePolygon &p, const LatticePolygon &r) {
    if (p.degenerate() || r.degenerate())
        throw DegeneratePolygonError();
    long long s = minkowski_sum(p, r).area2() - p.area2() - r.area2();
    if (s % 2 != 0)
        throw std::logic_error("mixed volume came out non-integral");
    return s / 2;
}

LatticePolygon newton_polytope(const std::vector<Exp> &support) {
    if (support.empty())
        throw std::invalid_argument("newton polytope of an empty support");
    std::vector<Pt> pts;
    pts.reserve(support.size());
    for (const Exp &e : support)
        pts.push_back({e.e1, e.e2});
    return LatticePolygon::hull(std::move(pts));
}

LatticePolygon exponent_diamond(const Period &p) {
    return LatticePolygon::hull(
        {{p.q2, 0}, {0, p.q1}, {-p.q2, 0}, {0, -p.q1}});
}

BoundsReport bounds_report(const Period &p) {
    if (!p.coprime())
        throw std::invalid_argument(
            "the cardinality bounds require the coprimality hypothesis gcd(q1, q2) = 1");
    long long q1 = p.q1, q2 = p.q2;
    long long a = std::max(q1, q2), b = std::min(q1, q2);
    BoundsReport r;
    r.bkk = 4 * q1 * q2;
    r.bezout_improved = 9 * q1 * q2 - 3;
    r.bezout_appendix = (2 * a + b) * (2 * a + b - 1);
    r.bezout_original = 4 * (q1 + q2) * (q1 + q2);
    return r;
}

BoundsReport bounds_report(const Period &p, const LatticePolygon &newton) {
    BoundsReport r = bounds_report(p);
    long long mv = mixed_volume(newton, newton);
    if (mv != r.bkk)
        throw std::logic_error("support hull mixed volume disagrees with 4*q1*q2");
    r.bkk_geometric = mv;
    return r;
}

} // namespace blochpoly

#include "conjlab/map.hpp"

#include <algorithm>

#include "conjlab/errors.hpp"

namespace conjlab {

std::vector<Rational> PLUnimodalMap::interior_kinks() const {
    std::vector<Rational> ks;
    for (size_t i = 1; i + 1 < verts_.size(); ++i) ks.push_back(verts_[i].x);
    return ks;
}

bool operator==(const PLUnimodalMap& a, const PLUnimodalMap& b) {
    return a.vertices() == b.vertices();
}

PLUnimodalMap make_map(std::vector<Vertex> vertices) {
    if (vertices.size() < 3) throw MalformedMap("fewer than 3 vertices");
    for (const auto& vt : vertices)
        if (vt.x < 0 || vt.x > 1 || vt.y < 0 || vt.y > 1)
            throw MalformedMap("vertex coordinates outside [0,1]");
    for (size_t i = 1; i < vertices.size(); ++i)
        if (!(vertices[i - 1].x < vertices[i].x))
            throw MalformedMap("x-coordinates not strictly increasing");
    if (!(vertices.front().x == 0 && vertices.front().y == 0))
        throw MalformedMap("first vertex must be (0,0)");
    if (!(vertices.back().x == 1 && vertices.back().y == 0))
        throw MalformedMap("last vertex must be (1,0)");

    // Merge vertices collinear with their neighbors; canonical representation.
    std::vector<Vertex> m;
    for (const auto& vt : vertices) {
        while (m.size() >= 2) {
            const Vertex& a = m[m.size() - 2];
            const Vertex& b = m.back();
            if ((b.y - a.y) * (vt.x - b.x) == (vt.y - b.y) * (b.x - a.x))
                m.pop_back();
            else
                break;
        }
        m.push_back(vt);
    }
    if (m.size() < 3) throw MalformedMap("degenerate after collinear merge");

    size_t imax = m.size();
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].y == 1) {
            if (imax != m.size()) throw MalformedMap("maximum value 1 attained more than once");
            imax = i;
        }
    }
    if (imax == m.size()) throw MalformedMap("no vertex attains the maximum value 1");

    for (size_t i = 1; i <= imax; ++i)
        if (!(m[i - 1].y < m[i].y))
            throw MalformedMap("ordinates not strictly increasing left of the maximum");
    for (size_t i = imax + 1; i < m.size(); ++i)
        if (!(m[i - 1].y > m[i].y))
            throw MalformedMap("ordinates not strictly decreasing right of the maximum");

    PLUnimodalMap map;
    map.v_ = m[imax].x;
    map.verts_ = std::move(m);
    return map;
}

PLUnimodalMap make_skew_tent(const Rational& v) {
    if (!(0 < v && v < 1)) throw DomainError("skew tent parameter must lie in (0,1)");
    return make_map({{Rational(0), Rational(0)}, {v, Rational(1)}, {Rational(1), Rational(0)}});
}

PLUnimodalMap tent_map() { return make_skew_tent(Rational(1, 2)); }

PLUnimodalMap thm5_map() {
    return make_map({{Rational(0), Rational(0)},
                     {Rational(1, 5), Rational(1, 2)},
                     {Rational(1, 2), Rational(1)},
                     {Rational(1), Rational(0)}});
}

namespace {

// Index of the segment [verts[i], verts[i+1]] containing x.
size_t segment_of(const std::vector<Vertex>& verts, const Rational& x) {
    size_t lo = 0, hi = verts.size() - 1;
    while (hi - lo > 1) {
        size_t mid = (lo + hi) / 2;
        if (verts[mid].x <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Rational affine_y(const Vertex& a, const Vertex& b, const Rational& x) {
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

Rational affine_x(const Vertex& a, const Vertex& b, const Rational& y) {
    return a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y);
}

}  // namespace

Rational eval(const PLUnimodalMap& map, const Rational& x) {
    if (x < 0 || x > 1) throw DomainError("eval argument outside [0,1]");
    const auto& vs = map.vertices();
    const size_t i = segment_of(vs, x);
    return affine_y(vs[i], vs[i + 1], x);
}

Rational monotone_inverse(const PLUnimodalMap& map, const Rational& lo, const Rational& hi,
                          const Rational& y) {
    if (!(0 <= lo && lo < hi && hi <= 1))
        throw DomainError("inverse interval must satisfy 0 <= lo < hi <= 1");
    const Rational& v = map.turning_point();
    if (lo < v && v < hi) throw NotMonotone("interval straddles the turning point");

    const Rational ylo = eval(map, lo), yhi = eval(map, hi);
    if (!((ylo <= y && y <= yhi) || (yhi <= y && y <= ylo)))
        throw OutOfRange("target value outside the interval image");

    // Breakpoints restricted to [lo,hi]; the restriction is strictly monotone.
    std::vector<Rational> xs{lo};
    for (const auto& vt : map.vertices())
        if (lo < vt.x && vt.x < hi) xs.push_back(vt.x);
    xs.push_back(hi);
    Rational y0 = ylo;
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        const Rational y1 = eval(map, xs[i + 1]);
        if ((y0 <= y && y <= y1) || (y1 <= y && y <= y0)) {
            Vertex a{xs[i], y0}, b{xs[i + 1], y1};
            return affine_x(a, b, y);
        }
        y0 = y1;
    }
    throw InternalInvariantViolated("bracketing segment not found");
}

std::vector<Rational> preimage_points(const PLUnimodalMap& map, const Rational& y) {
    if (y < 0 || y > 1) throw DomainError("preimage target outside [0,1]");
    if (y == 1) return {map.turning_point()};
    if (y == 0) return {Rational(0), Rational(1)};
    return {monotone_inverse(map, Rational(0), map.turning_point(), y),
            monotone_inverse(map, map.turning_point(), Rational(1), y)};
}

std::pair<Rational, Rational> interval_image(const PLUnimodalMap& map, const Rational& lo,
                                             const Rational& hi) {
    if (!(0 <= lo && lo <= hi && hi <= 1))
        throw DomainError("image interval must satisfy 0 <= lo <= hi <= 1");
    const Rational ylo = eval(map, lo), yhi = eval(map, hi);
    Rational mn = std::min(ylo, yhi), mx = std::max(ylo, yhi);
    if (lo < map.turning_point() && map.turning_point() < hi) mx = 1;
    return {mn, mx};
}

std::vector<Rational> preimage_set(const PLUnimodalMap& map, const std::vector<Rational>& points) {
    std::vector<Rational> out;
    out.reserve(points.size() * 2);
    for (const auto& y : points)
        for (auto& p : preimage_points(map, y)) out.push_back(std::move(p));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<CarcassInfo> carcass_info(const PLUnimodalMap& map, int n_max) {
    if (n_max < 1) throw DomainError("carcass search depth must be positive");
    const std::vector<Rational> kinks = map.interior_kinks();
    std::vector<Rational> pts{Rational(0), Rational(1)};  // level 1
    for (int n = 1; n <= n_max; ++n) {
        const bool all = std::all_of(kinks.begin(), kinks.end(), [&](const Rational& k) {
            return std::binary_search(pts.begin(), pts.end(), k);
        });
        if (all) return CarcassInfo{n, kinks};
        if (n < n_max) pts = preimage_set(map, pts);
    }
    return std::nullopt;
}

}  // namespace conjlab

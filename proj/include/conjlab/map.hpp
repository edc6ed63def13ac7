#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "conjlab/rational.hpp"

namespace conjlab {

struct Vertex {
    Rational x, y;
};

inline bool operator==(const Vertex& a, const Vertex& b) { return a.x == b.x && a.y == b.y; }

// Piecewise-linear unimodal map on [0,1]: vertices run from (0,0) to (1,0),
// ordinates strictly increase up to the unique maximum (v,1) and strictly
// decrease after it. Collinear input vertices are merged on construction;
// instances are immutable afterwards.
class PLUnimodalMap {
public:
    const std::vector<Vertex>& vertices() const { return verts_; }
    const Rational& turning_point() const { return v_; }

    // Interior breakpoint abscissas; endpoints 0 and 1 are not kinks.
    std::vector<Rational> interior_kinks() const;

    friend PLUnimodalMap make_map(std::vector<Vertex> vertices);

private:
    std::vector<Vertex> verts_;
    Rational v_;
};

bool operator==(const PLUnimodalMap& a, const PLUnimodalMap& b);

PLUnimodalMap make_map(std::vector<Vertex> vertices);
PLUnimodalMap make_skew_tent(const Rational& v);
PLUnimodalMap tent_map();
// The 4-vertex carcass map (0,0)-(1/5,1/2)-(1/2,1)-(1,0) used by the
// non-differentiability demo.
PLUnimodalMap thm5_map();

Rational eval(const PLUnimodalMap& map, const Rational& x);

// Unique x in [lo,hi] with eval(x) == y; requires the map monotone on
// [lo,hi] (no turning point interior) and y inside the segment image.
Rational monotone_inverse(const PLUnimodalMap& map, const Rational& lo, const Rational& hi,
                          const Rational& y);

// Sorted solutions of eval == y: two points for y in (0,1), {v} for y = 1,
// {0,1} for y = 0.
std::vector<Rational> preimage_points(const PLUnimodalMap& map, const Rational& y);

// Exact image interval [min,max] of [lo,hi].
std::pair<Rational, Rational> interval_image(const PLUnimodalMap& map, const Rational& lo,
                                             const Rational& hi);

// One inverse step applied to a sorted set: sorted union of preimage_points.
std::vector<Rational> preimage_set(const PLUnimodalMap& map, const std::vector<Rational>& points);

struct CarcassInfo {
    int n0 = 0;
    std::vector<Rational> kinks;
};

inline constexpr int kDefaultCarcassCap = 12;

// Minimal n0 <= n_max with all interior kinks inside g^{-n0}(0);
// nullopt when the map is not a carcass within n_max levels.
std::optional<CarcassInfo> carcass_info(const PLUnimodalMap& map, int n_max = kDefaultCarcassCap);

}  // namespace conjlab

#pragma once

#include <utility>
#include <vector>

#include "conjlab/map.hpp"

namespace conjlab {

inline constexpr int kDefaultPathCap = 200;

// Depth-lazy nested-interval tracker. After n steps [a,b] is the closure of
// the level-(n+1) interval I_{n+1,k}; forward_images[i] = (g^i(a), g^i(b))
// for i = 0..n, the last entry always (0,1) up to orientation. The tracker
// never inspects any tracked point, so it can be advanced blindly by a bit
// stream produced elsewhere.
struct IntervalTracker {
    PLUnimodalMap map;
    int n = 0;
    std::vector<int> bits;
    Integer k;
    Rational a, b;
    std::vector<std::pair<Rational, Rational>> forward_images;
};

IntervalTracker tracker_init(const PLUnimodalMap& map);

// The unique z in (a,b) with g^{n+1}(z) = 1, i.e. the new lattice point of
// level n+2 interior to [a,b], found by pulling 1 back through the exact
// forward images.
Rational tracker_split(const IntervalTracker& tr);

IntervalTracker tracker_apply(const IntervalTracker& tr, int bit);

// Bit choice when x equals the split point: Right takes bit 1 (maximal-k
// convention, the spec default), Left takes bit 0 (used for left flanks).
enum class TieRule { Right, Left };

struct PathState {
    Rational x;
    IntervalTracker tr;

    int depth() const { return tr.n; }
    const Rational& a() const { return tr.a; }
    const Rational& b() const { return tr.b; }
    const Integer& k() const { return tr.k; }
    const std::vector<int>& bits() const { return tr.bits; }
};

PathState path_init(const PLUnimodalMap& map, const Rational& x);
Rational split_point(const PathState& state);
std::pair<int, PathState> path_step(const PathState& state, TieRule rule = TieRule::Right);

struct ExpansionBits {
    std::vector<int> bits;
    bool finite = false;  // x became a left endpoint: x in g^{-m}(0), bits eventually 0
};

ExpansionBits expansion(const PLUnimodalMap& map, const Rational& x, int N,
                        int cap = kDefaultPathCap);

// Endpoints (mu_{n+1,k_n-1}, x) of the interval immediately left of x at
// level n+1; x must be a lattice point of level <= n+1, x > 0.
std::pair<Rational, Rational> left_flank(const PLUnimodalMap& map, const Rational& x, int n,
                                         int cap = kDefaultPathCap);

}  // namespace conjlab

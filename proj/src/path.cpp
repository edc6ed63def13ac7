#include "conjlab/path.hpp"

#include <algorithm>

#include "conjlab/errors.hpp"

namespace conjlab {

IntervalTracker tracker_init(const PLUnimodalMap& map) {
    IntervalTracker tr;
    tr.map = map;
    tr.n = 0;
    tr.k = 0;
    tr.a = 0;
    tr.b = 1;
    tr.forward_images = {{Rational(0), Rational(1)}};
    return tr;
}

namespace {

// ts[i] = g^i(z) for the split point z: ts[n] = v (the unique preimage of 1
// inside the level-1 image), then pulled back through the monotone images.
std::vector<Rational> split_images(const IntervalTracker& tr) {
    const int n = tr.n;
    std::vector<Rational> ts(static_cast<size_t>(n) + 1);
    ts[static_cast<size_t>(n)] = tr.map.turning_point();
    for (int i = n - 1; i >= 0; --i) {
        const auto& [p, q] = tr.forward_images[static_cast<size_t>(i)];
        ts[static_cast<size_t>(i)] = monotone_inverse(tr.map, std::min(p, q), std::max(p, q),
                                                      ts[static_cast<size_t>(i) + 1]);
    }
    if (!(tr.a < ts[0] && ts[0] < tr.b))
        throw InternalInvariantViolated("split point escaped its interval");
    return ts;
}

IntervalTracker apply_with_images(const IntervalTracker& tr, int bit,
                                  const std::vector<Rational>& ts) {
    if (bit != 0 && bit != 1) throw DomainError("bit must be 0 or 1");
    IntervalTracker nt;
    nt.map = tr.map;
    nt.n = tr.n + 1;
    nt.bits = tr.bits;
    nt.bits.push_back(bit);
    nt.k = 2 * tr.k + bit;
    nt.forward_images.reserve(static_cast<size_t>(nt.n) + 1);
    for (size_t i = 0; i <= static_cast<size_t>(tr.n); ++i) {
        if (bit == 0)
            nt.forward_images.emplace_back(tr.forward_images[i].first, ts[i]);
        else
            nt.forward_images.emplace_back(ts[i], tr.forward_images[i].second);
    }
    const auto& last = nt.forward_images.back();
    nt.forward_images.emplace_back(eval(nt.map, last.first), eval(nt.map, last.second));
    if (bit == 0) {
        nt.a = tr.a;
        nt.b = ts[0];
    } else {
        nt.a = ts[0];
        nt.b = tr.b;
    }
    return nt;
}

}  // namespace

Rational tracker_split(const IntervalTracker& tr) { return split_images(tr)[0]; }

IntervalTracker tracker_apply(const IntervalTracker& tr, int bit) {
    return apply_with_images(tr, bit, split_images(tr));
}

PathState path_init(const PLUnimodalMap& map, const Rational& x) {
    if (x < 0 || x > 1) throw DomainError("path point outside [0,1]");
    return PathState{x, tracker_init(map)};
}

Rational split_point(const PathState& state) { return tracker_split(state.tr); }

std::pair<int, PathState> path_step(const PathState& state, TieRule rule) {
    const auto ts = split_images(state.tr);
    const Rational& z = ts[0];
    const int bit = (rule == TieRule::Right ? state.x >= z : state.x > z) ? 1 : 0;
    return {bit, PathState{state.x, apply_with_images(state.tr, bit, ts)}};
}

ExpansionBits expansion(const PLUnimodalMap& map, const Rational& x, int N, int cap) {
    if (N < 0) throw DomainError("expansion length must be nonnegative");
    if (N > cap)
        throw DepthCapExceeded("expansion length " + std::to_string(N) + " exceeds cap " +
                               std::to_string(cap));
    PathState st = path_init(map, x);
    ExpansionBits out;
    out.finite = (x == st.a());
    for (int i = 0; i < N; ++i) {
        auto [bit, next] = path_step(st);
        out.bits.push_back(bit);
        st = std::move(next);
        if (st.x == st.a()) out.finite = true;
    }
    return out;
}

std::pair<Rational, Rational> left_flank(const PLUnimodalMap& map, const Rational& x, int n,
                                         int cap) {
    if (x == 0) throw DomainError("no interval lies left of 0");
    if (n < 0) throw DomainError("flank depth must be nonnegative");
    if (n > cap)
        throw DepthCapExceeded("flank depth " + std::to_string(n) + " exceeds cap " +
                               std::to_string(cap));
    PathState st = path_init(map, x);
    for (int i = 0; i < n; ++i) st = path_step(st, TieRule::Left).second;
    if (st.b() != x)
        throw NotLatticePoint(fraction_str(x) + " is not a level-" + std::to_string(n + 1) +
                              " lattice point");
    return {st.a(), st.b()};
}

}  // namespace conjlab

#include "conjlab/conjugacy.hpp"

#include <algorithm>
#include <utility>

#include "conjlab/errors.hpp"

namespace conjlab {

ConjugacyPair pair_init(const PLUnimodalMap& g1, const PLUnimodalMap& g2, int n_max) {
    ConjugacyPair pair;
    pair.g1 = g1;
    pair.g2 = g2;
    auto i1 = carcass_info(g1, n_max);
    if (!i1) throw NotCarcass("g1 has a kink outside g^{-n}(0) for n <= " + std::to_string(n_max));
    auto i2 = carcass_info(g2, n_max);
    if (!i2) throw NotCarcass("g2 has a kink outside g^{-n}(0) for n <= " + std::to_string(n_max));
    pair.info1 = std::move(*i1);
    pair.info2 = std::move(*i2);
    pair.stats1 = delta_stats(g1, n_max);
    pair.stats2 = delta_stats(g2, n_max);
    return pair;
}

bool operator==(const PLFunction& a, const PLFunction& b) {
    return a.breakpoints == b.breakpoints;
}

PLFunction ulam_map(const ConjugacyPair& pair, int n, int cap) {
    const Lattice L1 = lattice_level(pair.g1, n, cap);
    const Lattice L2 = lattice_level(pair.g2, n, cap);
    PLFunction f;
    f.breakpoints.reserve(L1.points.size());
    for (size_t i = 0; i < L1.points.size(); ++i)
        f.breakpoints.push_back({L1.points[i], L2.points[i]});
    return f;
}

Rational ulam_eval(const PLFunction& f, const Rational& x) {
    if (x < 0 || x > 1) throw DomainError("ulam_eval argument outside [0,1]");
    const auto& bp = f.breakpoints;
    size_t lo = 0, hi = bp.size() - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        if (bp[mid].x <= x)
            lo = mid;
        else
            hi = mid;
    }
    const Vertex &a = bp[lo], &b = bp[lo + 1];
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

PLFunction normalize_collinear(const PLFunction& f) {
    PLFunction out;
    for (const auto& vt : f.breakpoints) {
        while (out.breakpoints.size() >= 2) {
            const Vertex& a = out.breakpoints[out.breakpoints.size() - 2];
            const Vertex& b = out.breakpoints.back();
            if ((b.y - a.y) * (vt.x - b.x) == (vt.y - b.y) * (b.x - a.x))
                out.breakpoints.pop_back();
            else
                break;
        }
        out.breakpoints.push_back(vt);
    }
    return out;
}

SlopeSequence slope_sequence(const ConjugacyPair& pair, const Rational& x, int N, int cap) {
    if (N < 1) throw DomainError("slope sequence length must be positive");
    if (N > cap)
        throw DepthCapExceeded("slope depth " + std::to_string(N) + " exceeds cap " +
                               std::to_string(cap));
    PathState r1 = path_init(pair.g1, x);
    IntervalTracker r2 = tracker_init(pair.g2);
    PathState l1 = path_init(pair.g1, x);
    IntervalTracker l2 = tracker_init(pair.g2);
    SlopeSequence seq;
    seq.x = x;
    seq.entries.reserve(static_cast<size_t>(N));
    for (int n = 1; n <= N; ++n) {
        SlopeEntry e;
        e.n = n;
        e.right = (r2.b - r2.a) / (r1.b() - r1.a());
        e.left = (l2.b - l2.a) / (l1.b() - l1.a());
        seq.entries.push_back(std::move(e));
        if (n == N) break;
        auto [rb, rn] = path_step(r1, TieRule::Right);
        r1 = std::move(rn);
        r2 = tracker_apply(r2, rb);
        auto [lb, ln] = path_step(l1, TieRule::Left);
        l1 = std::move(ln);
        l2 = tracker_apply(l2, lb);
    }
    return seq;
}

const char* limit_tag_name(LimitTag t) {
    switch (t) {
        case LimitTag::ConvergesTo: return "ConvergesTo";
        case LimitTag::Zero: return "Zero";
        case LimitTag::Infinity: return "Infinity";
        case LimitTag::Oscillates: return "Oscillates";
        case LimitTag::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

LimitClass classify_side(const std::vector<Rational>& vals, const ClassifyParams& p) {
    const size_t w = static_cast<size_t>(p.window);
    const size_t start = vals.size() - w;
    LimitClass c;
    c.tail_min = vals[start];
    c.tail_max = vals[start];
    bool noninc = true, nondec = true, rise = false, fall = false;
    for (size_t i = start; i < vals.size(); ++i) {
        c.tail_min = std::min(c.tail_min, vals[i]);
        c.tail_max = std::max(c.tail_max, vals[i]);
        if (i > start) {
            if (vals[i] > vals[i - 1]) { noninc = false; rise = true; }
            if (vals[i] < vals[i - 1]) { nondec = false; fall = true; }
        }
    }
    c.tail_last = vals.back();
    if (c.tail_max - c.tail_min <= p.rel_tol * c.tail_max) {
        c.tag = LimitTag::ConvergesTo;
        c.value = c.tail_last;
    } else if (c.tail_max <= p.small && noninc) {
        c.tag = LimitTag::Zero;
    } else if (c.tail_min >= p.big && nondec) {
        c.tag = LimitTag::Infinity;
    } else if (c.tail_max >= (1 + 100 * p.rel_tol) * c.tail_min && rise && fall) {
        c.tag = LimitTag::Oscillates;
    } else {
        c.tag = LimitTag::Inconclusive;
    }
    return c;
}

}  // namespace

std::pair<LimitClass, LimitClass> classify_limits(const SlopeSequence& seq,
                                                  const ClassifyParams& params) {
    if (params.window < 2) throw DomainError("classification window must be >= 2");
    if (seq.entries.size() < static_cast<size_t>(params.window))
        throw InsufficientDepth("sequence shorter than classification window");
    std::vector<Rational> left, right;
    left.reserve(seq.entries.size());
    right.reserve(seq.entries.size());
    for (const auto& e : seq.entries) {
        left.push_back(e.left);
        right.push_back(e.right);
    }
    return {classify_side(left, params), classify_side(right, params)};
}

Enclosure conj_eval(const ConjugacyPair& pair, const Rational& x, const Rational& tol, int cap) {
    if (tol <= 0) throw DomainError("tolerance must be positive");
    if (x < 0 || x > 1) throw DomainError("conj_eval argument outside [0,1]");
    PathState s1 = path_init(pair.g1, x);
    IntervalTracker t2 = tracker_init(pair.g2);
    for (int d = 0;; ++d) {
        if (s1.x == s1.a()) return Enclosure{t2.a, t2.a, d, true};
        if (s1.x == s1.b()) return Enclosure{t2.b, t2.b, d, true};
        if (t2.b - t2.a <= tol) return Enclosure{t2.a, t2.b, d, false};
        if (d >= cap)
            throw DepthCapExceeded("tolerance unreachable within depth " + std::to_string(cap) +
                                   "; achieved width " + fraction_str(t2.b - t2.a));
        auto [bit, next] = path_step(s1);
        s1 = std::move(next);
        t2 = tracker_apply(t2, bit);
    }
}

ResidualReport residual_check(const ConjugacyPair& pair, const Rational& x, const Rational& tol,
                              int cap) {
    ResidualReport rep;
    rep.h_of_x = conj_eval(pair, x, tol, cap);
    rep.h_of_g1x = conj_eval(pair, eval(pair.g1, x), tol, cap);
    auto [ilo, ihi] = interval_image(pair.g2, rep.h_of_x.lo, rep.h_of_x.hi);
    rep.image_lo = std::move(ilo);
    rep.image_hi = std::move(ihi);
    rep.ok = !(rep.image_hi < rep.h_of_g1x.lo || rep.h_of_g1x.hi < rep.image_lo);
    return rep;
}

PLDetectResult pl_detector(const ConjugacyPair& pair, int n_start, int n_end, int cap) {
    if (n_start < 1 || n_start >= n_end) throw DomainError("need 1 <= n_start < n_end");
    if (n_end + 1 > cap)
        throw DepthCapExceeded("pl detection needs level " + std::to_string(n_end + 1));
    Lattice A1 = lattice_level(pair.g1, n_start, cap);
    Lattice A2 = lattice_level(pair.g2, n_start, cap);
    PLDetectResult res;
    std::vector<char> equal_at;
    for (int m = n_start; m <= n_end; ++m) {
        Lattice B1 = refine_lattice(A1, cap);
        Lattice B2 = refine_lattice(A2, cap);
        long cnt = 0;
        for (size_t k = 0; k + 1 < A1.points.size(); ++k) {
            const Rational d1 =
                (B1.points[2 * k + 1] - A1.points[k]) / (A1.points[k + 1] - A1.points[k]);
            const Rational d2 =
                (B2.points[2 * k + 1] - A2.points[k]) / (A2.points[k + 1] - A2.points[k]);
            if (d1 != d2) ++cnt;
        }
        PLFunction fm, fm1;
        for (size_t i = 0; i < A1.points.size(); ++i)
            fm.breakpoints.push_back({A1.points[i], A2.points[i]});
        for (size_t i = 0; i < B1.points.size(); ++i)
            fm1.breakpoints.push_back({B1.points[i], B2.points[i]});
        equal_at.push_back(normalize_collinear(fm1) == normalize_collinear(fm) ? 1 : 0);
        res.new_kinks.emplace_back(m, cnt);
        A1 = std::move(B1);
        A2 = std::move(B2);
    }
    int stab = -1;
    for (int i = static_cast<int>(equal_at.size()) - 1; i >= 0; --i) {
        if (equal_at[static_cast<size_t>(i)])
            stab = n_start + i;
        else
            break;
    }
    if (stab != -1) {
        res.stabilized = true;
        res.level = stab;
    }
    return res;
}

std::vector<QuotientBound> difference_quotients(const ConjugacyPair& pair, const Rational& x,
                                                const std::vector<Rational>& samples,
                                                const Rational& tol, int cap) {
    const Enclosure ex = conj_eval(pair, x, tol, cap);
    std::vector<QuotientBound> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        if (s == x) throw DomainError("difference quotient sample equals the base point");
        const Enclosure es = conj_eval(pair, s, tol, cap);
        QuotientBound q;
        q.s = s;
        if (s < x) {
            const Rational d = x - s;
            q.lo = (ex.lo - es.hi) / d;
            q.hi = (ex.hi - es.lo) / d;
        } else {
            const Rational d = s - x;
            q.lo = (es.lo - ex.hi) / d;
            q.hi = (es.hi - ex.lo) / d;
        }
        out.push_back(std::move(q));
    }
    return out;
}

PinnedRatios pinned_ratios(const ConjugacyPair& pair, int n, const Rational& x,
                           const Rational& tol, int cap) {
    if (n < 1) throw DomainError("pinned ratio level must be positive");
    PathState s1 = path_init(pair.g1, x);
    IntervalTracker t2 = tracker_init(pair.g2);
    if (x == s1.a() || x == s1.b())
        throw DomainError("x must be interior to its level-" + std::to_string(n) + " interval");
    for (int d = 0; d < n - 1; ++d) {
        auto [bit, next] = path_step(s1);
        s1 = std::move(next);
        t2 = tracker_apply(t2, bit);
        if (x == s1.a() || x == s1.b())
            throw DomainError("x is a lattice point at level <= " + std::to_string(n));
    }
    const Enclosure e = conj_eval(pair, x, tol, cap);
    const Rational slope = (t2.b - t2.a) / (s1.b() - s1.a());
    PinnedRatios r;
    r.dl_lo = ((e.lo - t2.a) / (x - s1.a())) / slope;
    r.dl_hi = ((e.hi - t2.a) / (x - s1.a())) / slope;
    r.dr_lo = ((t2.b - e.hi) / (s1.b() - x)) / slope;
    r.dr_hi = ((t2.b - e.lo) / (s1.b() - x)) / slope;
    return r;
}

FlankSamples path_flank_samples(const PLUnimodalMap& g1, const Rational& x, int d_lo, int d_hi,
                                int cap) {
    if (d_lo < 0 || d_lo > d_hi) throw DomainError("bad flank sample depth range");
    if (d_hi > cap)
        throw DepthCapExceeded("flank sample depth " + std::to_string(d_hi) + " exceeds cap " +
                               std::to_string(cap));
    PathState st = path_init(g1, x);
    std::vector<std::pair<Rational, Rational>> ab;
    ab.reserve(static_cast<size_t>(d_hi) + 1);
    for (int d = 0; d <= d_hi; ++d) {
        ab.emplace_back(st.a(), st.b());
        if (d < d_hi) st = path_step(st).second;
    }
    FlankSamples out;
    for (int d = d_lo; d <= d_hi; ++d) {
        const auto& [a, b] = ab[static_cast<size_t>(d)];
        if (a > 0) out.left.push_back(left_flank(g1, a, d, cap).first);
        if (b < 1) {
            PathState pb = path_init(g1, b);
            for (int i = 0; i < d; ++i) pb = path_step(pb).second;
            if (pb.a() != b) throw InternalInvariantViolated("right flank anchor drifted");
            out.right.push_back(pb.b());
        }
    }
    return out;
}

}  // namespace conjlab

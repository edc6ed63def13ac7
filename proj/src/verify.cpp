#include "conjlab/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "conjlab/errors.hpp"

namespace conjlab {

namespace {

Rational rand_rational(std::mt19937_64& rng, unsigned long max_den = 1000) {
    const unsigned long q = 2 + rng() % (max_den - 1);
    const unsigned long p = rng() % (q + 1);
    return make_rational(static_cast<long>(p), static_cast<long>(q));
}

Rational rand_interior(std::mt19937_64& rng, unsigned long max_den = 1000) {
    for (;;) {
        Rational x = rand_rational(rng, max_den);
        if (x > 0 && x < 1) return x;
    }
}

std::vector<Lattice> lattice_chain(const PLUnimodalMap& m, int n_max) {
    std::vector<Lattice> ls;
    ls.reserve(static_cast<size_t>(n_max));
    ls.push_back(lattice_level(m, 1));
    for (int n = 2; n <= n_max; ++n) ls.push_back(refine_lattice(ls.back()));
    return ls;  // ls[i] is level i+1
}

const Lattice& at_level(const std::vector<Lattice>& ls, int n) {
    return ls[static_cast<size_t>(n) - 1];
}

// Maximal k with points[k] <= x <= points[k+1].
size_t locate_max_k(const std::vector<Rational>& points, const Rational& x) {
    auto it = std::upper_bound(points.begin(), points.end(), x);
    if (it == points.end()) return points.size() - 2;  // x == 1
    return static_cast<size_t>(it - points.begin()) - 1;
}

Rational lattice_delta(const Lattice& Ln, const Lattice& Ln1, size_t k) {
    return (Ln1.points[2 * k + 1] - Ln.points[k]) / (Ln.points[k + 1] - Ln.points[k]);
}

PropertyResult pass(const std::string& name) { return {name, true, ""}; }
PropertyResult fail(const std::string& name, const std::string& detail) {
    return {name, false, detail};
}

// Small enough that exact lattice-point detection always fires first.
Rational tiny_tol() { return make_rational(Integer(1), pow2(80)); }

// Builds a point whose g-expansion starts with `bits` (midpoint of the
// nested interval those bits select).
Rational point_with_bits(const PLUnimodalMap& m, const std::vector<int>& bits) {
    IntervalTracker tr = tracker_init(m);
    for (int b : bits) tr = tracker_apply(tr, b);
    return (tr.a + tr.b) / 2;
}

}  // namespace

PropertyResult check_cardinality(const PLUnimodalMap& m, int n_max) {
    const std::string name = "lattice-cardinality";
    auto ls = lattice_chain(m, n_max);
    for (int n = 1; n <= n_max; ++n) {
        const auto& pts = at_level(ls, n).points;
        if (Integer(static_cast<long>(pts.size())) != pow2(static_cast<unsigned long>(n - 1)) + 1)
            return fail(name, "size mismatch at level " + std::to_string(n));
        if (pts.front() != 0 || pts.back() != 1)
            return fail(name, "endpoints wrong at level " + std::to_string(n));
        for (size_t i = 1; i < pts.size(); ++i)
            if (!(pts[i - 1] < pts[i]))
                return fail(name, "not strictly increasing at level " + std::to_string(n));
    }
    return pass(name);
}

PropertyResult check_lattice_nesting(const PLUnimodalMap& m, int n_max) {
    const std::string name = "lattice-nesting";
    auto ls = lattice_chain(m, n_max);
    for (int n = 2; n <= n_max; ++n) {
        const auto& prev = at_level(ls, n - 1).points;
        const auto& cur = at_level(ls, n).points;
        for (size_t k = 0; k < prev.size(); ++k)
            if (cur[2 * k] != prev[k])
                return fail(name, "level " + std::to_string(n - 1) + " not embedded");
    }
    // Direct membership: g^n(p) = 0 for every level-n point (small n).
    for (int n = 1; n <= std::min(n_max, 6); ++n) {
        for (const auto& p : at_level(ls, n).points) {
            Rational y = p;
            for (int i = 0; i < n; ++i) y = eval(m, y);
            if (y != 0) return fail(name, "g^n nonzero on level " + std::to_string(n));
        }
    }
    return pass(name);
}

PropertyResult check_lemma21(const PLUnimodalMap& m, int n_max) {
    const std::string name = "lemma-2.1";
    auto ls = lattice_chain(m, n_max);
    for (int n = 2; n <= n_max; ++n) {
        const auto& cur = at_level(ls, n).points;
        const auto& prev = at_level(ls, n - 1).points;
        const size_t half = static_cast<size_t>(1) << (n - 2);
        const size_t top = static_cast<size_t>(1) << (n - 1);
        for (size_t k = 0; k <= half; ++k) {
            if (eval(m, cur[k]) != prev[k])
                return fail(name, "(i) fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
            if (eval(m, cur[k]) != eval(m, cur[top - k]))
                return fail(name, "(ii) fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    return pass(name);
}

PropertyResult check_preimage_pairs(const PLUnimodalMap& m, unsigned long seed, int count) {
    const std::string name = "preimage-pairs";
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        const Rational y = rand_interior(rng);
        const auto pts = preimage_points(m, y);
        if (pts.size() != 2) return fail(name, "expected two preimages of " + fraction_str(y));
        if (!(pts[0] < m.turning_point() && m.turning_point() < pts[1]))
            return fail(name, "preimages do not straddle v");
        if (eval(m, pts[0]) != y || eval(m, pts[1]) != y)
            return fail(name, "preimage does not evaluate back");
    }
    return pass(name);
}

PropertyResult check_inverse_exactness(const PLUnimodalMap& m, unsigned long seed, int count) {
    const std::string name = "inverse-exactness";
    std::mt19937_64 rng(seed);
    const Rational v = m.turning_point();
    for (int i = 0; i < count; ++i) {
        const Rational y = rand_interior(rng);
        if (eval(m, monotone_inverse(m, Rational(0), v, y)) != y)
            return fail(name, "left branch at " + fraction_str(y));
        if (eval(m, monotone_inverse(m, v, Rational(1), y)) != y)
            return fail(name, "right branch at " + fraction_str(y));
    }
    return pass(name);
}

PropertyResult check_eval_monotone(const PLUnimodalMap& m, unsigned long seed, int count) {
    const std::string name = "eval-monotonicity";
    std::mt19937_64 rng(seed);
    const Rational v = m.turning_point();
    for (int i = 0; i < count; ++i) {
        Rational x = rand_rational(rng) * v, y = rand_rational(rng) * v;
        if (x != y) {
            if (x > y) std::swap(x, y);
            if (!(eval(m, x) < eval(m, y))) return fail(name, "not increasing on [0,v]");
        }
        Rational p = v + rand_rational(rng) * (1 - v), q = v + rand_rational(rng) * (1 - v);
        if (p != q) {
            if (p > q) std::swap(p, q);
            if (!(eval(m, p) > eval(m, q))) return fail(name, "not decreasing on [v,1]");
        }
    }
    return pass(name);
}

PropertyResult check_carcass_minimal(const PLUnimodalMap& m) {
    const std::string name = "carcass-minimality";
    const auto info = carcass_info(m);
    if (!info) return pass(name);  // nothing to check for non-carcass inputs
    const auto& pts = lattice_level(m, info->n0).points;
    for (const auto& k : info->kinks)
        if (!std::binary_search(pts.begin(), pts.end(), k))
            return fail(name, "kink missing at level n0");
    if (info->n0 > 1) {
        const auto& prev = lattice_level(m, info->n0 - 1).points;
        const bool all = std::all_of(info->kinks.begin(), info->kinks.end(), [&](const Rational& k) {
            return std::binary_search(prev.begin(), prev.end(), k);
        });
        if (all) return fail(name, "n0 not minimal");
    }
    return pass(name);
}

PropertyResult check_rem215(const PLUnimodalMap& m, int n_max, unsigned long seed) {
    const std::string name = "remark-2.15";
    auto ls = lattice_chain(m, n_max);
    std::mt19937_64 rng(seed);
    std::vector<Rational> xs{m.turning_point() / 3, Rational(9, 10)};
    for (int i = 0; i < 6; ++i) xs.push_back(rand_interior(rng));
    for (const auto& x : xs) {
        PathState st = path_init(m, x);
        for (int n = 1; n < n_max; ++n) {
            auto [bit, next] = path_step(st);
            const size_t k = static_cast<size_t>(st.k().get_si());
            const Rational d = lattice_delta(at_level(ls, n), at_level(ls, n + 1), k);
            const Rational factor = bit == 1 ? 1 - d : d;
            if (next.b() - next.a() != (st.b() - st.a()) * factor)
                return fail(name, "length recursion fails at level " + std::to_string(n + 1));
            st = std::move(next);
        }
    }
    return pass(name);
}

PropertyResult check_rem216_217(const PLUnimodalMap& m, int n_max) {
    const std::string name = "remark-2.16-2.17";
    auto ls = lattice_chain(m, n_max);
    for (int n = 1; n < n_max; ++n) {
        const auto& fine = at_level(ls, n + 1).points;
        for (long k = 0; k < (1L << n); ++k) {
            std::vector<int> bits(static_cast<size_t>(n));
            for (int t = 1; t <= n; ++t) bits[static_cast<size_t>(t) - 1] = (k >> (n - t)) & 1;
            Rational a = fine[static_cast<size_t>(k)], b = fine[static_cast<size_t>(k) + 1];
            for (int i = 1; i <= n; ++i) {
                Rational ia = eval(m, a), ib = eval(m, b);
                if (ia > ib) std::swap(ia, ib);
                Integer kk = (i + 1 <= n) ? bits_to_index(bits, i + 1, n) : Integer(0);
                if (bits[static_cast<size_t>(i) - 1] == 1) kk = rot_n(n - i, kk);
                const auto& tgt = at_level(ls, n + 1 - i).points;
                const size_t j = static_cast<size_t>(kk.get_si());
                if (ia != tgt[j] || ib != tgt[j + 1])
                    return fail(name, "image index mismatch n=" + std::to_string(n) +
                                          " k=" + std::to_string(k) + " i=" + std::to_string(i));
                a = ia;
                b = ib;
            }
        }
    }
    return pass(name);
}

// Delta periodicity. The printed statement (base level n0-1, classes mod
// 2^{n0-2}) contradicts the length recursion: delta_{n,k} is determined by
// the trailing n0-1 binary digits of k, so the true period is 2^{n0-1} with
// base level n0. Checked on the full index range, which subsumes the stated
// one.
PropertyResult check_rem222(const PLUnimodalMap& m, int n_max) {
    const std::string name = "remark-2.22";
    const auto info = carcass_info(m);
    if (!info) return fail(name, "not a carcass map");
    const int n0 = info->n0;
    if (n0 + 1 > n_max) return pass(name);
    auto ls = lattice_chain(m, n_max);
    const size_t period = static_cast<size_t>(1) << (n0 - 1);
    std::vector<Rational> base;
    for (size_t k = 0; k < period; ++k)
        base.push_back(lattice_delta(at_level(ls, n0), at_level(ls, n0 + 1), k));
    for (int n = n0; n < n_max; ++n) {
        const long kmax = (1L << (n - 1)) - 1;
        for (long k = 0; k <= kmax; ++k) {
            const Rational lhs =
                lattice_delta(at_level(ls, n), at_level(ls, n + 1), static_cast<size_t>(k));
            if (lhs != base[static_cast<size_t>(k) % period])
                return fail(name, "periodicity fails n=" + std::to_string(n) +
                                      " k=" + std::to_string(k));
        }
    }
    return pass(name);
}

PropertyResult check_rem33_density(const PLUnimodalMap& m, int n_max) {
    const std::string name = "remark-3.3-density";
    const auto stats = delta_stats(m);
    const int n0 = stats.n0;
    auto ls = lattice_chain(m, n_max);
    const auto& base = at_level(ls, n0 - 1).points;
    for (int n = n0; n <= n_max; ++n) {
        const auto& pts = at_level(ls, n).points;
        const auto e = static_cast<unsigned long>(n - n0 + 1);
        const Rational lo_f = pow_rational(stats.delta_minus, e);
        const Rational hi_f = pow_rational(stats.delta_plus, e);
        for (size_t k = 0; k + 1 < pts.size(); ++k) {
            const Rational len = pts[k + 1] - pts[k];
            const size_t p = locate_max_k(base, pts[k]);
            const Rational plen = base[p + 1] - base[p];
            if (!(plen * lo_f <= len && len <= plen * hi_f))
                return fail(name, "3.3 bounds fail n=" + std::to_string(n) +
                                      " k=" + std::to_string(k));
            if (!(len <= hi_f))
                return fail(name, "density bound fails n=" + std::to_string(n));
        }
    }
    return pass(name);
}

PropertyResult check_rem218_219(const PLUnimodalMap& m, int n_max, unsigned long seed) {
    const std::string name = "remark-2.18-2.19";
    const auto info = carcass_info(m);
    if (!info) return fail(name, "not a carcass map");
    const int n0 = info->n0;
    auto ls = lattice_chain(m, n_max);
    // 2.18: delta transported through one application of g.
    for (int n = n0; n < n_max; ++n) {
        const auto& pts = at_level(ls, n).points;
        for (long k = 0; k + 1 < static_cast<long>(pts.size()); ++k) {
            const int x1 = n >= 2 ? static_cast<int>((k >> (n - 2)) & 1) : 0;
            Rational ia = eval(m, pts[static_cast<size_t>(k)]);
            Rational ib = eval(m, pts[static_cast<size_t>(k) + 1]);
            if (ia > ib) std::swap(ia, ib);
            const auto& down = at_level(ls, n - 1).points;
            const size_t j = locate_max_k(down, ia);
            const Rational dimg = lattice_delta(at_level(ls, n - 1), at_level(ls, n), j);
            const Rational claim = x1 == 1 ? 1 - dimg : dimg;
            const Rational lhs = lattice_delta(at_level(ls, n), at_level(ls, n + 1),
                                               static_cast<size_t>(k));
            if (lhs != claim) return fail(name, "2.18 fails n=" + std::to_string(n));
        }
    }
    // 2.19: path form, delta of the tracked interval from the base level.
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 6; ++trial) {
        const Rational x = rand_interior(rng);
        const auto exp = expansion(m, x, n_max);
        if (exp.finite) continue;
        const auto& bits = exp.bits;
        for (int n = n0; n + 2 <= n_max; ++n) {
            const Integer k_n = bits_to_index(bits, 1, n);
            const int j = n - n0 + 2;
            const int xj = bits[static_cast<size_t>(j) - 1];
            Integer kk = bits_to_index(bits, j, n);
            if (xj == 1) kk = rot_n(n0 - 1, kk);
            const Rational dbase = lattice_delta(at_level(ls, n0 - 1), at_level(ls, n0),
                                                 static_cast<size_t>(kk.get_si()));
            const Rational claim = xj == 1 ? 1 - dbase : dbase;
            const Rational lhs = lattice_delta(at_level(ls, n + 1), at_level(ls, n + 2),
                                               static_cast<size_t>(k_n.get_si()));
            if (lhs != claim) return fail(name, "2.19 fails n=" + std::to_string(n));
        }
    }
    return pass(name);
}

PropertyResult check_path_lattice_agreement(const PLUnimodalMap& m, int n_max,
                                            unsigned long seed, int samples) {
    const std::string name = "path-lattice-agreement";
    auto ls = lattice_chain(m, n_max);
    std::mt19937_64 rng(seed);
    std::vector<Rational> xs{Rational(0), Rational(1), m.turning_point()};
    for (int i = 0; i < samples; ++i) xs.push_back(rand_rational(rng));
    for (const auto& x : xs) {
        PathState st = path_init(m, x);
        for (int d = 0; d < n_max - 1; ++d) {
            const auto& pts = at_level(ls, d + 1).points;
            const size_t k = locate_max_k(pts, x);
            if (Integer(static_cast<long>(k)) != st.k() || pts[k] != st.a() ||
                pts[k + 1] != st.b())
                return fail(name, "state mismatch at depth " + std::to_string(d) + " for x=" +
                                      fraction_str(x));
            st = path_step(st).second;
        }
    }
    return pass(name);
}

PropertyResult check_k_recursion(const PLUnimodalMap& m, unsigned long seed, int depth) {
    const std::string name = "k-recursion";
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 8; ++trial) {
        const Rational x = rand_rational(rng);
        PathState st = path_init(m, x);
        for (int d = 0; d < depth; ++d) {
            auto [bit, next] = path_step(st);
            if (next.k() != 2 * st.k() + bit) return fail(name, "k recursion broken");
            st = std::move(next);
        }
        if (st.k() != bits_to_index(st.bits(), 1, depth)) return fail(name, "k != k_{1,n}");
        if (st.k() < 0 || st.k() >= pow2(static_cast<unsigned long>(depth)))
            return fail(name, "k outside [0,2^n)");
    }
    return pass(name);
}

PropertyResult check_finiteness(const PLUnimodalMap& m, unsigned long seed, int N) {
    const std::string name = "g-finiteness";
    std::mt19937_64 rng(seed);
    std::vector<Rational> xs{Rational(0), m.turning_point()};
    for (const auto& p : lattice_level(m, 4).points)
        if (p != 1) xs.push_back(p);
    for (int i = 0; i < 12; ++i) {
        const Rational x = rand_rational(rng);
        if (x != 1) xs.push_back(x);
    }
    for (const auto& x : xs) {
        const auto exp = expansion(m, x, N);
        bool hits_zero = (x == 0);
        Rational y = x;
        for (int i = 1; i <= N + 1 && !hits_zero; ++i) {
            y = eval(m, y);
            if (y == 0) hits_zero = true;
        }
        if (exp.finite != hits_zero)
            return fail(name, "finiteness mismatch at x=" + fraction_str(x));
    }
    // x = 1 is the sole preimage-of-0 with an all-ones expansion.
    const auto one = expansion(m, Rational(1), N);
    if (one.finite || !std::all_of(one.bits.begin(), one.bits.end(), [](int b) { return b == 1; }))
        return fail(name, "x=1 expansion wrong");
    return pass(name);
}

PropertyResult check_lemma36(const PLUnimodalMap& m) {
    const std::string name = "lemma-3.6";
    const auto stats = delta_stats(m);
    const int n0 = stats.n0;
    const int n = n0 + 1;
    const int t = 2 * n0 + 3;
    std::vector<int> bits(static_cast<size_t>(n), 0);
    bits[0] = 1;
    bits.push_back(1);  // x_{n+1} = 1
    bits.insert(bits.end(), static_cast<size_t>(t), 0);
    bits.push_back(1);  // x_{n+t+2} = 1
    const Rational x = point_with_bits(m, bits);

    PathState st = path_init(m, x);
    std::vector<Rational> len{Rational(1)};  // len[d] = length of level-(d+1) interval, index d
    Rational a_pt;
    for (int d = 0; d < n + t + 3; ++d) {
        auto [bit, next] = path_step(st);
        if (d < static_cast<int>(bits.size()) && bit != bits[static_cast<size_t>(d)])
            return fail(name, "constructed expansion drifted");
        st = std::move(next);
        len.push_back(st.b() - st.a());
        if (d == n) a_pt = st.a();  // left endpoint fixed by the bit 1 at position n+1
    }
    const Rational lIn1 = len[static_cast<size_t>(n)];  // level n+1
    for (int i = 0; i <= n0 + 1; ++i) {
        const auto fl = left_flank(m, a_pt, n + i + 1);
        const Rational lf = fl.second - fl.first;
        const auto e = static_cast<unsigned long>(i + 1);
        if (!(lIn1 * pow_rational(stats.delta_minus, e) <= lf &&
              lf <= lIn1 * pow_rational(stats.delta_plus, e)))
            return fail(name, "(i) fails at i=" + std::to_string(i));
    }
    for (int i = n0 + 2; i <= t; ++i) {
        const auto fl = left_flank(m, a_pt, n + i + 1);
        const Rational lf = fl.second - fl.first;
        const Rational d0p = pow_rational(stats.delta_0, static_cast<unsigned long>(i - n0 - 1));
        const auto e = static_cast<unsigned long>(n0 + 2);
        if (!(lIn1 * pow_rational(stats.delta_minus, e) * d0p <= lf &&
              lf <= lIn1 * pow_rational(stats.delta_plus, e) * d0p))
            return fail(name, "(ii) fails at i=" + std::to_string(i));
    }
    for (int i = n0; i <= t - n0 + 1; ++i) {
        const Rational lhs = len[static_cast<size_t>(n + i)];        // level n+i+1
        const Rational base = len[static_cast<size_t>(n + n0)];      // level n+n0+1
        if (lhs != base * pow_rational(stats.delta_0, static_cast<unsigned long>(i - n0)))
            return fail(name, "(iii) fails at i=" + std::to_string(i));
    }
    return pass(name);
}

PropertyResult check_lemma13(const ConjugacyPair& pair, int n_max) {
    const std::string name = "lemma-1.3";
    auto l1 = lattice_chain(pair.g1, n_max);
    auto l2 = lattice_chain(pair.g2, n_max);
    for (int n = 1; n <= n_max; ++n) {
        const auto& p1 = at_level(l1, n).points;
        const auto& p2 = at_level(l2, n).points;
        for (size_t k = 0; k < p1.size(); ++k) {
            const Enclosure e = conj_eval(pair, p1[k], tiny_tol());
            if (!e.exact || e.lo != p2[k])
                return fail(name, "correspondence fails n=" + std::to_string(n) +
                                      " k=" + std::to_string(k));
        }
    }
    return pass(name);
}

PropertyResult check_slope_ulam(const ConjugacyPair& pair, int n_max, unsigned long seed) {
    const std::string name = "slope-ulam-consistency";
    auto l1 = lattice_chain(pair.g1, n_max);
    auto l2 = lattice_chain(pair.g2, n_max);
    std::mt19937_64 rng(seed);
    std::vector<Rational> xs{Rational(0), Rational(1), pair.g1.turning_point(),
                             at_level(l1, 3).points[1]};
    for (int i = 0; i < 6; ++i) xs.push_back(rand_interior(rng));
    for (const auto& x : xs) {
        const SlopeSequence seq = slope_sequence(pair, x, n_max);
        for (const auto& e : seq.entries) {
            const auto& p1 = at_level(l1, e.n).points;
            const auto& p2 = at_level(l2, e.n).points;
            const size_t k = locate_max_k(p1, x);
            const Rational right = (p2[k + 1] - p2[k]) / (p1[k + 1] - p1[k]);
            Rational left = right;
            if (x == p1[k] && k > 0)
                left = (p2[k] - p2[k - 1]) / (p1[k] - p1[k - 1]);
            if (x == 1)
                left = right;
            if (e.right != right || e.left != left)
                return fail(name, "slope mismatch n=" + std::to_string(e.n) + " x=" +
                                      fraction_str(x));
        }
    }
    return pass(name);
}

PropertyResult check_rem37(const ConjugacyPair& pair, unsigned long seed, int N) {
    const std::string name = "remark-3.7";
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 6; ++trial) {
        const Rational x = rand_interior(rng);
        if (expansion(pair.g1, x, N).finite) continue;
        const SlopeSequence seq = slope_sequence(pair, x, N);
        PathState st = path_init(pair.g1, x);
        for (int n = 1; n < N; ++n) {
            st = path_step(st).second;  // depth n: level n+1 interval
            const Enclosure ha = conj_eval(pair, st.a(), tiny_tol());
            const Enclosure hb = conj_eval(pair, st.b(), tiny_tol());
            if (!ha.exact || !hb.exact) return fail(name, "endpoint h not exact");
            const Rational slope = (hb.lo - ha.lo) / (st.b() - st.a());
            if (seq.entries[static_cast<size_t>(n)].right != slope)
                return fail(name, "3.7 fails at level " + std::to_string(n + 1));
        }
    }
    return pass(name);
}

PropertyResult check_rem38(const ConjugacyPair& pair, unsigned long seed, int N) {
    const std::string name = "remark-3.8";
    const Rational& dm1 = pair.stats1.delta_minus;
    const Rational& dp1 = pair.stats1.delta_plus;
    const Rational& dm2 = pair.stats2.delta_minus;
    const Rational& dp2 = pair.stats2.delta_plus;
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 8; ++trial) {
        const Rational x = rand_interior(rng);
        if (expansion(pair.g1, x, N).finite) continue;
        const SlopeSequence seq = slope_sequence(pair, x, N);
        for (int n = 1; n + 5 <= N; ++n) {
            const Rational& base = seq.entries[static_cast<size_t>(n)].right;  // level n+1
            for (int i = 1; i <= 5 && n + i <= N; ++i) {
                const Rational& s = seq.entries[static_cast<size_t>(n + i) - 1].right;
                const auto e = static_cast<unsigned long>(i);
                if (!(pow_rational(dm2 / dp1, e) * base <= s &&
                      s <= pow_rational(dp2 / dm1, e) * base))
                    return fail(name, "sandwich fails n=" + std::to_string(n) +
                                          " i=" + std::to_string(i));
            }
        }
    }
    return pass(name);
}

PropertyResult check_rem39(const ConjugacyPair& pair) {
    const std::string name = "remark-3.9";
    const int n0 = std::max(pair.stats1.n0, pair.stats2.n0);
    const int n = n0 + 1;
    const int t = 2 * n0 + 4;
    std::vector<int> bits(static_cast<size_t>(n), 0);
    bits[0] = 1;
    if (n >= 3) bits[2] = 1;
    bits.push_back(1);
    bits.insert(bits.end(), static_cast<size_t>(t), 0);
    bits.push_back(1);
    const Rational x = point_with_bits(pair.g1, bits);
    const SlopeSequence seq = slope_sequence(pair, x, n + t + 3);
    const Rational ratio = pair.stats2.delta_0 / pair.stats1.delta_0;
    // Verified form: the delta_0 run starts one level after the paper's base,
    // slope_{n+i} = slope_{n+n0+1} * ratio^{i-n0-1} for i in [n0+1, t+1].
    const Rational& base = seq.entries[static_cast<size_t>(n + n0)].right;  // level n+n0+1
    for (int i = n0 + 1; i <= t + 1; ++i) {
        const Rational& s = seq.entries[static_cast<size_t>(n + i) - 1].right;
        if (s != base * pow_rational(ratio, static_cast<unsigned long>(i - n0 - 1)))
            return fail(name, "geometric run fails at i=" + std::to_string(i));
    }
    return pass(name);
}

PropertyResult check_lemma310(const ConjugacyPair& pair) {
    const std::string name = "lemma-3.10";
    const int n0 = std::max(pair.stats1.n0, pair.stats2.n0);
    const Rational& dm1 = pair.stats1.delta_minus;
    const Rational& dm2 = pair.stats2.delta_minus;
    for (int n = n0 + 1; n <= n0 + 2; ++n) {
        const Lattice L = lattice_level(pair.g1, n + 1);
        for (size_t idx : {size_t(1), L.points.size() / 3, 2 * L.points.size() / 3}) {
            const Rational x = L.points[idx];
            if (x == 0 || x == 1) continue;
            // Flank interval (x^-, x) at level n+1, its split point x^{-+},
            // and the left Ulam slope h'_{n+1}(x-).
            PathState fl = path_init(pair.g1, x);
            IntervalTracker t2 = tracker_init(pair.g2);
            for (int d = 0; d < n; ++d) {
                auto [bit, next] = path_step(fl, TieRule::Left);
                fl = std::move(next);
                t2 = tracker_apply(t2, bit);
            }
            if (fl.b() != x) continue;
            const Rational xminus = fl.a();
            const Rational xmp = split_point(fl);
            const Rational lslope = (t2.b - t2.a) / (fl.b() - fl.a());
            const Enclosure hx = conj_eval(pair, x, tiny_tol());
            std::vector<Rational> samples{xminus};
            const IntervalTracker inner = tracker_apply(fl.tr, 0);  // [x^-, x^{-+}]
            const Rational z2 = tracker_split(inner);
            if (z2 < xmp) samples.push_back(z2);
            for (const auto& s : samples) {
                const Enclosure hs = conj_eval(pair, s, tiny_tol());
                if (!hx.exact || !hs.exact) return fail(name, "expected exact h values");
                const Rational quot = (hx.lo - hs.lo) / (x - s);
                if (!(dm2 * lslope <= quot && quot <= lslope / dm1))
                    return fail(name, "sandwich fails at x=" + fraction_str(x));
            }
        }
    }
    return pass(name);
}

PropertyResult check_rem313(const ConjugacyPair& pair, int n_max) {
    const std::string name = "remark-3.13";
    for (int n = 2; n <= std::min(n_max, 5); ++n) {
        const PLFunction hn = ulam_map(pair, n);
        const Lattice fine = lattice_level(pair.g1, n + 1);
        for (size_t k : {size_t(0), fine.points.size() / 4, fine.points.size() / 2}) {
            const size_t j = 2 * (k / 2) + 1;  // a refinement point, new at level n+1
            if (j >= fine.points.size()) continue;
            const Rational x = fine.points[j];
            const PinnedRatios pr = pinned_ratios(pair, n, x, tiny_tol());
            if (pr.dl_lo != pr.dl_hi || pr.dr_lo != pr.dr_hi)
                return fail(name, "expected exact ratios at lattice x");
            const Enclosure hx = conj_eval(pair, x, tiny_tol());
            const bool on_graph = ulam_eval(hn, x) == hx.lo;
            const bool dl1 = pr.dl_lo == 1, dr1 = pr.dr_lo == 1;
            if (dl1 != dr1 || dl1 != on_graph)
                return fail(name, "equivalence fails at x=" + fraction_str(x));
        }
    }
    return pass(name);
}

PropertyResult check_eq323(const ConjugacyPair& pair) {
    const std::string name = "eq-3.23";
    const int n0 = std::max(pair.stats1.n0, pair.stats2.n0);
    for (int n = n0 + 1; n <= n0 + 2; ++n) {
        const Lattice deep = lattice_level(pair.g1, n + 3);
        for (size_t q : {deep.points.size() / 5, deep.points.size() / 2,
                         4 * deep.points.size() / 5}) {
            const size_t j = 2 * (q / 2) + 1;  // new at level n+3
            if (j >= deep.points.size()) continue;
            const Rational x = deep.points[j];
            PinnedRatios a = pinned_ratios(pair, n, x, tiny_tol());
            Rational xx = x;
            for (int i = 0; i < n - n0 + 1; ++i) xx = eval(pair.g1, xx);
            PinnedRatios b = pinned_ratios(pair, n0 - 1, xx, tiny_tol());
            if (a.dl_lo != a.dl_hi || b.dl_lo != b.dl_hi)
                return fail(name, "expected exact ratios");
            const bool same = (a.dl_lo == b.dl_lo && a.dr_lo == b.dr_lo) ||
                              (a.dl_lo == b.dr_lo && a.dr_lo == b.dl_lo);
            if (!same) return fail(name, "pinned ratios not transported at x=" + fraction_str(x));
        }
    }
    return pass(name);
}

PropertyResult check_residual_random(const ConjugacyPair& pair, unsigned long seed, int count,
                                     const Rational& tol) {
    const std::string name = "residual-functional-equation";
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        const Rational x = rand_rational(rng);
        if (!residual_check(pair, x, tol).ok)
            return fail(name, "residual fails at x=" + fraction_str(x));
    }
    return pass(name);
}

PropertyResult check_h_monotone(const ConjugacyPair& pair, unsigned long seed, int count) {
    const std::string name = "h-monotonicity";
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        Rational x = rand_rational(rng), y = rand_rational(rng);
        if (x == y) continue;
        if (x > y) std::swap(x, y);
        Rational tol(1, 1024);
        bool disjoint = false;
        for (int attempt = 0; attempt < 6 && !disjoint; ++attempt) {
            const Enclosure ex = conj_eval(pair, x, tol);
            const Enclosure ey = conj_eval(pair, y, tol);
            if (ex.lo > ey.hi) return fail(name, "order inverted");
            if (ex.hi <= ey.lo) disjoint = true;
            tol /= 1024;
        }
        if (!disjoint) return fail(name, "enclosures never separated for x=" + fraction_str(x));
    }
    return pass(name);
}

std::vector<PropertyResult> verify_suite(const PLUnimodalMap& g1,
                                         const std::optional<PLUnimodalMap>& g2,
                                         unsigned long seed, int depth) {
    const int n_max = std::clamp(depth, 4, 12);
    std::vector<PropertyResult> out;
    auto run = [&out](const char* name, const std::function<PropertyResult()>& fn) {
        try {
            out.push_back(fn());
        } catch (const Error& e) {
            out.push_back({name, false, std::string("exception: ") + e.what()});
        }
    };
    run("lattice-cardinality", [&] { return check_cardinality(g1, n_max); });
    run("lattice-nesting", [&] { return check_lattice_nesting(g1, n_max); });
    run("lemma-2.1", [&] { return check_lemma21(g1, n_max); });
    run("preimage-pairs", [&] { return check_preimage_pairs(g1, seed + 1, 100); });
    run("inverse-exactness", [&] { return check_inverse_exactness(g1, seed + 2, 100); });
    run("eval-monotonicity", [&] { return check_eval_monotone(g1, seed + 3, 100); });
    run("carcass-minimality", [&] { return check_carcass_minimal(g1); });
    run("remark-2.15", [&] { return check_rem215(g1, std::min(n_max, 9), seed + 4); });
    run("remark-2.16-2.17", [&] { return check_rem216_217(g1, std::min(n_max, 8)); });
    run("remark-2.22", [&] { return check_rem222(g1, std::min(n_max, 9)); });
    run("remark-3.3-density", [&] { return check_rem33_density(g1, n_max); });
    run("remark-2.18-2.19", [&] { return check_rem218_219(g1, std::min(n_max, 9), seed + 5); });
    run("path-lattice-agreement", [&] { return check_path_lattice_agreement(g1, std::min(n_max, 8), seed + 6, 8); });
    run("k-recursion", [&] { return check_k_recursion(g1, seed + 7, depth); });
    run("g-finiteness", [&] { return check_finiteness(g1, seed + 8, 24); });
    run("lemma-3.6", [&] { return check_lemma36(g1); });
    if (g2) {
        ConjugacyPair pair;
        try {
            pair = pair_init(g1, *g2);
        } catch (const Error& e) {
            out.push_back({"pair-init", false, e.what()});
            return out;
        }
        run("lemma-1.3", [&] { return check_lemma13(pair, std::min(n_max, 8)); });
        run("slope-ulam-consistency", [&] { return check_slope_ulam(pair, std::min(n_max, 8), seed + 9); });
        run("remark-3.7", [&] { return check_rem37(pair, seed + 10, 10); });
        run("remark-3.8", [&] { return check_rem38(pair, seed + 11, 12); });
        run("remark-3.9", [&] { return check_rem39(pair); });
        run("lemma-3.10", [&] { return check_lemma310(pair); });
        run("remark-3.13", [&] { return check_rem313(pair, std::min(n_max, 5)); });
        run("eq-3.23", [&] { return check_eq323(pair); });
        run("residual-functional-equation", [&] { return check_residual_random(pair, seed + 12, 10, make_rational(Integer(1), pow2(30))); });
        run("h-monotonicity", [&] { return check_h_monotone(pair, seed + 13, 10); });
    }
    return out;
}

}  // namespace conjlab

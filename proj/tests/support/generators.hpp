#pragma once

#include <random>

#include "conjlab/lattice.hpp"

namespace conjlab::testsupport {

inline Rational rand_rational(std::mt19937_64& rng, unsigned long max_den = 1000) {
    const unsigned long q = 2 + rng() % (max_den - 1);
    const unsigned long p = rng() % (q + 1);
    return make_rational(static_cast<long>(p), static_cast<long>(q));
}

inline Rational rand_interior(std::mt19937_64& rng, unsigned long max_den = 1000) {
    for (;;) {
        Rational x = rand_rational(rng, max_den);
        if (x > 0 && x < 1) return x;
    }
}

// Seeded carcass maps: skew tents plus 4/5-vertex maps whose extra kinks
// map onto v (so g^3(kink) = 0). Rejection keeps delta_plus <= 4/5 so that
// 2^-40 enclosures stay far from the path depth cap.
inline PLUnimodalMap random_carcass_map(std::mt19937_64& rng) {
    auto frac = [&rng](unsigned long dmin, unsigned long dmax) {
        const unsigned long d = dmin + rng() % (dmax - dmin + 1);
        const unsigned long n = 1 + rng() % (d - 1);
        return make_rational(static_cast<long>(n), static_cast<long>(d));
    };
    for (;;) {
        const unsigned long vd = 5 + rng() % 8;
        const unsigned long lo = (vd + 3) / 4, hi = 3 * vd / 4;
        const unsigned long vn = lo + rng() % (hi - lo + 1);
        const Rational v = make_rational(static_cast<long>(vn), static_cast<long>(vd));
        const Rational zero(0), one(1);
        std::vector<Vertex> verts;
        switch (rng() % 4) {
            case 0:
                verts = {{zero, zero}, {v, one}, {one, zero}};
                break;
            case 1: {
                const Rational p = v * frac(3, 9);
                verts = {{zero, zero}, {p, v}, {v, one}, {one, zero}};
                break;
            }
            case 2: {
                const Rational q = v + (1 - v) * frac(3, 9);
                verts = {{zero, zero}, {v, one}, {q, v}, {one, zero}};
                break;
            }
            default: {
                const Rational p = v * frac(3, 9);
                const Rational q = v + (1 - v) * frac(3, 9);
                verts = {{zero, zero}, {p, v}, {v, one}, {q, v}, {one, zero}};
                break;
            }
        }
        const PLUnimodalMap m = make_map(verts);
        const DeltaStats st = delta_stats(m);
        if (st.delta_plus <= Rational(4, 5)) return m;
    }
}

// The non-carcass control: the kink at 1/3 is a fixed point, so it never
// reaches 0.
inline PLUnimodalMap non_carcass_map() {
    return make_map({{Rational(0), Rational(0)},
                     {Rational(1, 3), Rational(1, 3)},
                     {Rational(1, 2), Rational(1)},
                     {Rational(1), Rational(0)}});
}

}  // namespace conjlab::testsupport

#pragma once

#include <utility>
#include <vector>

#include "conjlab/map.hpp"

namespace conjlab {

inline constexpr int kDefaultLatticeCap = 22;

// Sorted level-n preimage set mu_{n,k} = g^{-n}(0): 2^{n-1}+1 points from 0
// to 1, containing every shallower level.
struct Lattice {
    PLUnimodalMap map;
    int n = 1;
    std::vector<Rational> points;
};

Lattice lattice_level(const PLUnimodalMap& map, int n, int cap = kDefaultLatticeCap);
Lattice refine_lattice(const Lattice& L, int cap = kDefaultLatticeCap);

struct IntervalRef {
    int n = 1;
    long k = 0;
    std::pair<Rational, Rational> endpoints;
    Rational length;
};

IntervalRef interval_ref(const Lattice& L, long k);

// Relative position of the level-(n+1) refinement point inside I_{n,k}:
// (mu_{n+1,2k+1} - mu_{n,k}) / (mu_{n,k+1} - mu_{n,k}), in (0,1).
Rational delta(const PLUnimodalMap& map, int n, long k, int cap = kDefaultLatticeCap);

struct DeltaStats {
    std::vector<Rational> D;  // delta(I_{n0-1,k}) for k = 0..2^{n0-2}-1, index order
    Rational delta_minus, delta_plus, delta_0;
    int n0 = 2;
};

DeltaStats delta_stats(const PLUnimodalMap& map, int n_max = kDefaultCarcassCap);

Rational rot(const Rational& t);           // t -> 1 - t
Integer rot_n(int n, const Integer& t);    // n-digit binary inversion: 2^n - t - 1

// Partial index k_{i,j} = sum_{t=i..j} bits[t] * 2^{j-t}, 1-based inclusive.
Integer bits_to_index(const std::vector<int>& bits, int i, int j);

}  // namespace conjlab

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "conjlab/lattice.hpp"
#include "conjlab/path.hpp"

namespace conjlab {

// Two carcass maps and their lattice statistics. Both maps are conjugate to
// the tent map (dense preimage lattices), hence to each other; h denotes the
// conjugacy from g1 to g2 throughout.
struct ConjugacyPair {
    PLUnimodalMap g1, g2;
    CarcassInfo info1, info2;
    DeltaStats stats1, stats2;
};

ConjugacyPair pair_init(const PLUnimodalMap& g1, const PLUnimodalMap& g2,
                        int n_max = kDefaultCarcassCap);

// Increasing piecewise-linear homeomorphism of [0,1] given by breakpoints.
struct PLFunction {
    std::vector<Vertex> breakpoints;
};

bool operator==(const PLFunction& a, const PLFunction& b);

// Ulam approximation h_n: breakpoints (mu_{n,k}(g1), mu_{n,k}(g2)).
PLFunction ulam_map(const ConjugacyPair& pair, int n, int cap = kDefaultLatticeCap);
Rational ulam_eval(const PLFunction& f, const Rational& x);
PLFunction normalize_collinear(const PLFunction& f);

struct SlopeEntry {
    int n = 1;
    Rational left, right;  // h_n'(x-), h_n'(x+)
};

struct SlopeSequence {
    Rational x;
    std::vector<SlopeEntry> entries;
};

SlopeSequence slope_sequence(const ConjugacyPair& pair, const Rational& x, int N,
                             int cap = kDefaultPathCap);

enum class LimitTag { ConvergesTo, Zero, Infinity, Oscillates, Inconclusive };

const char* limit_tag_name(LimitTag t);

struct LimitClass {
    LimitTag tag = LimitTag::Inconclusive;
    std::optional<Rational> value;           // set for ConvergesTo
    Rational tail_min, tail_max, tail_last;  // evidence window statistics
};

struct ClassifyParams {
    int window = 20;
    Rational rel_tol{1, 1000000};
    Rational big{1000000};
    Rational small{1, 1000000};
};

std::pair<LimitClass, LimitClass> classify_limits(const SlopeSequence& seq,
                                                  const ClassifyParams& params = {});

// Closed rational interval certified to contain h(x); exact (lo == hi) when
// x is detected as a g1-lattice point.
struct Enclosure {
    Rational lo, hi;
    int depth = 0;
    bool exact = false;
    Rational width() const { return hi - lo; }
};

Enclosure conj_eval(const ConjugacyPair& pair, const Rational& x, const Rational& tol,
                    int cap = kDefaultPathCap);

struct ResidualReport {
    Enclosure h_of_g1x, h_of_x;
    Rational image_lo, image_hi;  // g2(enclosure of h(x))
    bool ok = false;
};

// Functional-equation check h(g1(x)) in g2(h(x)) at enclosure width <= tol.
ResidualReport residual_check(const ConjugacyPair& pair, const Rational& x, const Rational& tol,
                              int cap = kDefaultPathCap);

struct PLDetectResult {
    bool stabilized = false;
    int level = 0;                                // StabilizedAt(level)
    std::vector<std::pair<int, long>> new_kinks;  // per-level genuinely new kink counts
};

// StabilizedAt(n) when ulam_map(m+1) == ulam_map(m) after collinear
// normalization for every m in [n, n_end].
PLDetectResult pl_detector(const ConjugacyPair& pair, int n_start, int n_end,
                           int cap = kDefaultLatticeCap);

struct QuotientBound {
    Rational s, lo, hi;  // certified bounds on (h(x)-h(s))/(x-s)
};

std::vector<QuotientBound> difference_quotients(const ConjugacyPair& pair, const Rational& x,
                                                const std::vector<Rational>& samples,
                                                const Rational& tol, int cap = kDefaultPathCap);

// Bounds on the pinned-approximation slope ratios Delta_L, Delta_R of x
// inside its level-n interval.
struct PinnedRatios {
    Rational dl_lo, dl_hi, dr_lo, dr_hi;
};

PinnedRatios pinned_ratios(const ConjugacyPair& pair, int n, const Rational& x,
                           const Rational& tol, int cap = kDefaultPathCap);

// Lattice neighbors flanking x's path intervals: for each depth d in
// [d_lo, d_hi] the level-(d+1) point immediately left of the interval's left
// endpoint (skipped while that endpoint is 0) and immediately right of the
// right endpoint (skipped while it is 1).
struct FlankSamples {
    std::vector<Rational> left, right;
};

FlankSamples path_flank_samples(const PLUnimodalMap& g1, const Rational& x, int d_lo, int d_hi,
                                int cap = kDefaultPathCap);

}  // namespace conjlab

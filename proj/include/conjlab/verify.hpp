#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conjlab/conjugacy.hpp"

namespace conjlab {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Single-map identities (exact rational checks).
PropertyResult check_cardinality(const PLUnimodalMap& m, int n_max);
PropertyResult check_lattice_nesting(const PLUnimodalMap& m, int n_max);
PropertyResult check_lemma21(const PLUnimodalMap& m, int n_max);
PropertyResult check_preimage_pairs(const PLUnimodalMap& m, unsigned long seed, int count);
PropertyResult check_inverse_exactness(const PLUnimodalMap& m, unsigned long seed, int count);
PropertyResult check_eval_monotone(const PLUnimodalMap& m, unsigned long seed, int count);
PropertyResult check_carcass_minimal(const PLUnimodalMap& m);
PropertyResult check_rem215(const PLUnimodalMap& m, int n_max, unsigned long seed);
PropertyResult check_rem216_217(const PLUnimodalMap& m, int n_max);
PropertyResult check_rem222(const PLUnimodalMap& m, int n_max);
PropertyResult check_rem33_density(const PLUnimodalMap& m, int n_max);
PropertyResult check_rem218_219(const PLUnimodalMap& m, int n_max, unsigned long seed);
PropertyResult check_path_lattice_agreement(const PLUnimodalMap& m, int n_max,
                                            unsigned long seed, int samples);
PropertyResult check_k_recursion(const PLUnimodalMap& m, unsigned long seed, int depth);
PropertyResult check_finiteness(const PLUnimodalMap& m, unsigned long seed, int N);
PropertyResult check_lemma36(const PLUnimodalMap& m);

// Pair identities for the conjugacy h from g1 to g2.
PropertyResult check_lemma13(const ConjugacyPair& pair, int n_max);
PropertyResult check_slope_ulam(const ConjugacyPair& pair, int n_max, unsigned long seed);
PropertyResult check_rem37(const ConjugacyPair& pair, unsigned long seed, int N);
PropertyResult check_rem38(const ConjugacyPair& pair, unsigned long seed, int N);
PropertyResult check_rem39(const ConjugacyPair& pair);
PropertyResult check_lemma310(const ConjugacyPair& pair);
PropertyResult check_rem313(const ConjugacyPair& pair, int n_max);
PropertyResult check_eq323(const ConjugacyPair& pair);
PropertyResult check_residual_random(const ConjugacyPair& pair, unsigned long seed, int count,
                                     const Rational& tol);
PropertyResult check_h_monotone(const ConjugacyPair& pair, unsigned long seed, int count);

// Aggregate suite behind `conjlab verify`.
std::vector<PropertyResult> verify_suite(const PLUnimodalMap& g1,
                                         const std::optional<PLUnimodalMap>& g2,
                                         unsigned long seed, int depth);

}  // namespace conjlab

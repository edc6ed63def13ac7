#include <doctest.h>

#include <random>

#include "conjlab/conjugacy.hpp"
#include "conjlab/errors.hpp"
#include "conjlab/verify.hpp"
#include "support/generators.hpp"

using namespace conjlab;
namespace ts = conjlab::testsupport;

namespace {
Rational r(long p, long q = 1) { return make_rational(p, q); }
Rational tol40() { return make_rational(Integer(1), pow2(40)); }
}  // namespace

TEST_CASE("pair_init") {
    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    CHECK(tt.info1.n0 == 2);
    CHECK(tt.info2.n0 == 2);

    const ConjugacyPair tg = pair_init(tent_map(), thm5_map());
    CHECK(tg.info1.n0 == 2);
    CHECK(tg.info2.n0 == 3);

    try {
        pair_init(tent_map(), ts::non_carcass_map());
        FAIL("expected NotCarcass");
    } catch (const NotCarcass& e) {
        CHECK(std::string(e.what()).find("g2") != std::string::npos);
    }
}

TEST_CASE("ulam_map examples") {
    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    for (int n = 1; n <= 4; ++n) {
        const PLFunction f = ulam_map(tt, n);
        for (const auto& bp : f.breakpoints) CHECK(bp.x == bp.y);
        CHECK(normalize_collinear(f).breakpoints.size() == 2);
    }

    const ConjugacyPair tf = pair_init(tent_map(), make_skew_tent(r(1, 5)));
    const PLFunction h2 = ulam_map(tf, 2);
    CHECK(h2.breakpoints ==
          std::vector<Vertex>{{r(0), r(0)}, {r(1, 2), r(1, 5)}, {r(1), r(1)}});

    const ConjugacyPair tg = pair_init(tent_map(), thm5_map());
    const PLFunction h3 = ulam_map(tg, 3);
    CHECK(h3.breakpoints == std::vector<Vertex>{{r(0), r(0)},
                                                {r(1, 4), r(1, 5)},
                                                {r(1, 2), r(1, 2)},
                                                {r(3, 4), r(3, 4)},
                                                {r(1), r(1)}});
}

TEST_CASE("ulam_eval examples") {
    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    CHECK(ulam_eval(ulam_map(tt, 3), r(1, 3)) == r(1, 3));

    const ConjugacyPair tf = pair_init(tent_map(), make_skew_tent(r(1, 5)));
    CHECK(ulam_eval(ulam_map(tf, 2), r(1, 4)) == r(1, 10));

    const ConjugacyPair tg = pair_init(tent_map(), thm5_map());
    CHECK(ulam_eval(ulam_map(tg, 3), r(5, 8)) == r(5, 8));
    CHECK_THROWS_AS(ulam_eval(ulam_map(tg, 3), r(9, 8)), DomainError);
}

TEST_CASE("slope_sequence examples") {
    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    for (const auto& e : slope_sequence(tt, r(3, 7), 12).entries) {
        CHECK(e.left == 1);
        CHECK(e.right == 1);
    }

    const ConjugacyPair tf = pair_init(tent_map(), make_skew_tent(r(1, 5)));
    const SlopeSequence s0 = slope_sequence(tf, r(0), 12);
    for (const auto& e : s0.entries) {
        CHECK(e.right == pow_rational(r(2, 5), static_cast<unsigned long>(e.n - 1)));
        CHECK(e.left == e.right);
    }

    const ConjugacyPair tg = pair_init(tent_map(), thm5_map());
    for (const auto& e : slope_sequence(tg, r(2, 3), 20).entries) {
        CHECK(e.left == 1);
        CHECK(e.right == 1);
    }
    CHECK_THROWS_AS(slope_sequence(tg, r(1, 3), 300), DepthCapExceeded);
}

TEST_CASE("classify_limits") {
    const ConjugacyPair tf = pair_init(tent_map(), make_skew_tent(r(1, 5)));
    const auto [zl, zr] = classify_limits(slope_sequence(tf, r(0), 40));
    CHECK(zl.tag == LimitTag::Zero);
    CHECK(zr.tag == LimitTag::Zero);

    // Reversed pair: slopes (5/2)^{n-1} at 0 diverge.
    const ConjugacyPair ft = pair_init(make_skew_tent(r(1, 5)), tent_map());
    const auto [il, ir] = classify_limits(slope_sequence(ft, r(0), 40));
    CHECK(il.tag == LimitTag::Infinity);
    CHECK(ir.tag == LimitTag::Infinity);

    const ConjugacyPair tg = pair_init(tent_map(), thm5_map());
    const auto [cl, cr] = classify_limits(slope_sequence(tg, r(2, 3), 40));
    CHECK(cl.tag == LimitTag::ConvergesTo);
    CHECK(cr.tag == LimitTag::ConvergesTo);
    REQUIRE(cl.value.has_value());
    CHECK(*cl.value == 1);
    CHECK(*cr.value == 1);

    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    const auto [al, ar] = classify_limits(slope_sequence(tt, r(5, 9), 25));
    CHECK(al.tag == LimitTag::ConvergesTo);
    CHECK(*ar.value == 1);

    CHECK_THROWS_AS(classify_limits(slope_sequence(tg, r(1, 3), 10)), InsufficientDepth);

    // Synthetic oscillating sequence.
    SlopeSequence osc;
    osc.x = r(1, 3);
    for (int n = 1; n <= 24; ++n) {
        const Rational v = (n % 2 == 0) ? r(2) : r(1, 2);
        osc.entries.push_back({n, v, v});
    }
    const auto [ol, orr] = classify_limits(osc);
    CHECK(ol.tag == LimitTag::Oscillates);
    CHECK(orr.tag == LimitTag::Oscillates);
}

TEST_CASE("conj_eval") {
    const ConjugacyPair tf = pair_init(tent_map(), make_skew_tent(r(1, 5)));
    const Enclosure e = conj_eval(tf, r(1, 2), tol40());
    CHECK(e.exact);
    CHECK(e.lo == r(1, 5));
    CHECK(e.hi == r(1, 5));

    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    std::mt19937_64 rng(7);
    for (int i = 0; i < 5; ++i) {
        const Rational x = ts::rand_rational(rng);
        const Enclosure id = conj_eval(tt, x, r(1, 1024));
        CHECK(id.lo <= x);
        CHECK(x <= id.hi);
    }

    const ConjugacyPair tg = pair_init(tent_map(), thm5_map());
    const Enclosure fx = conj_eval(tg, r(2, 3), make_rational(Integer(1), pow2(20)));
    CHECK(fx.lo <= r(2, 3));
    CHECK(r(2, 3) <= fx.hi);
    CHECK(fx.width() <= make_rational(Integer(1), pow2(20)));

    try {
        conj_eval(tg, r(1, 3), make_rational(Integer(1), pow2(90)), 12);
        FAIL("expected DepthCapExceeded");
    } catch (const DepthCapExceeded& e) {
        CHECK(std::string(e.what()).find("achieved width") != std::string::npos);
    }
}

TEST_CASE("residual_check and the corrupted negative control") {
    const ConjugacyPair tf = pair_init(tent_map(), make_skew_tent(r(1, 5)));
    const ResidualReport ok13 = residual_check(tf, r(1, 3), make_rational(Integer(1), pow2(30)));
    CHECK(ok13.ok);

    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    const ResidualReport id = residual_check(tt, r(1, 7), make_rational(Integer(1), pow2(30)));
    CHECK(id.ok);
    CHECK(id.h_of_g1x.lo <= r(2, 7));
    CHECK(r(2, 7) <= id.h_of_g1x.hi);

    // g2 swapped after the enclosures were formed: the image step uses the
    // wrong map and the intervals must separate.
    ConjugacyPair corrupted = tf;
    corrupted.g2 = make_skew_tent(r(1, 3));
    const ResidualReport base = residual_check(tf, r(1, 3), tol40());
    const auto [blo, bhi] = interval_image(corrupted.g2, base.h_of_x.lo, base.h_of_x.hi);
    const bool intersects = !(bhi < base.h_of_g1x.lo || base.h_of_g1x.hi < blo);
    CHECK_FALSE(intersects);
}

TEST_CASE("pl_detector") {
    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    const PLDetectResult a = pl_detector(tt, 1, 8);
    CHECK(a.stabilized);
    CHECK(a.level == 1);

    const ConjugacyPair tf = pair_init(tent_map(), make_skew_tent(r(1, 5)));
    const PLDetectResult b = pl_detector(tf, 1, 6);
    CHECK_FALSE(b.stabilized);
    for (const auto& [lvl, cnt] : b.new_kinks) CHECK(cnt >= 1);

    const ConjugacyPair tg = pair_init(tent_map(), thm5_map());
    const PLDetectResult c = pl_detector(tg, 1, 6);
    CHECK_FALSE(c.stabilized);
    CHECK(c.new_kinks == std::vector<std::pair<int, long>>{
                             {1, 0}, {2, 1}, {3, 2}, {4, 4}, {5, 8}, {6, 16}});
    CHECK_THROWS_AS(pl_detector(tg, 3, 3), DomainError);
}

TEST_CASE("difference_quotients") {
    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    const auto q = difference_quotients(tt, r(1, 2), {r(1, 4)}, tol40());
    REQUIRE(q.size() == 1);
    CHECK(q[0].lo == 1);
    CHECK(q[0].hi == 1);

    const ConjugacyPair tf = pair_init(tent_map(), make_skew_tent(r(1, 5)));
    std::vector<Rational> samples;
    for (int k = 5; k <= 12; ++k) samples.push_back(make_rational(Integer(1), pow2(static_cast<unsigned long>(k))));
    const auto qs = difference_quotients(tf, r(0), samples, tol40());
    for (size_t i = 0; i < qs.size(); ++i) {
        const unsigned long k = 5 + i;
        // h(2^-k)/2^-k = (2/5)^k exactly
        CHECK(qs[i].lo == pow_rational(r(2, 5), k));
        CHECK(qs[i].hi == qs[i].lo);
    }
    CHECK_THROWS_AS(difference_quotients(tf, r(1, 2), {r(1, 2)}, tol40()), DomainError);
}

TEST_CASE("thm5 quotients oscillate between 1 and 28/25") {
    const ConjugacyPair tg = pair_init(tent_map(), thm5_map());
    const FlankSamples fs = path_flank_samples(tg.g1, r(2, 3), 10, 13);
    REQUIRE(fs.left.size() == 4);
    REQUIRE(fs.right.size() == 4);
    const auto qL = difference_quotients(tg, r(2, 3), fs.left, tol40());
    const auto qR = difference_quotients(tg, r(2, 3), fs.right, tol40());
    // Oracle values: alternating exact quotients 28/25 and 1 with tiny widths.
    for (size_t i = 0; i < 4; ++i) {
        const Rational target_l = (i % 2 == 0) ? r(28, 25) : r(1);
        const Rational target_r = (i % 2 == 0) ? r(1) : r(28, 25);
        CHECK(qL[i].lo <= target_l);
        CHECK(target_l <= qL[i].hi);
        CHECK(qR[i].lo <= target_r);
        CHECK(target_r <= qR[i].hi);
        CHECK(qL[i].hi - qL[i].lo < r(1, 1000));
        CHECK(qR[i].hi - qR[i].lo < r(1, 1000));
    }
}

TEST_CASE("pinned_ratios") {
    const ConjugacyPair tf = pair_init(tent_map(), make_skew_tent(r(1, 5)));
    const PinnedRatios pr = pinned_ratios(tf, 2, r(1, 4), tol40());
    CHECK(pr.dl_lo == r(2, 5));
    CHECK(pr.dl_hi == r(2, 5));

    const ConjugacyPair tt = pair_init(tent_map(), tent_map());
    const PinnedRatios id = pinned_ratios(tt, 2, r(3, 8), tol40());
    CHECK(id.dl_lo == 1);
    CHECK(id.dr_lo == 1);

    CHECK_THROWS_AS(pinned_ratios(tf, 3, r(1, 2), tol40()), DomainError);
    CHECK_THROWS_AS(pinned_ratios(tf, 2, r(0), tol40()), DomainError);
}

TEST_CASE("conjugacy invariants across pairs") {
    std::mt19937_64 rng(606);
    const PLUnimodalMap rnd = ts::random_carcass_map(rng);
    const std::vector<ConjugacyPair> pairs = {
        pair_init(tent_map(), make_skew_tent(r(1, 5))),
        pair_init(tent_map(), thm5_map()),
        pair_init(make_skew_tent(r(1, 3)), rnd),
    };
    int i = 0;
    for (const auto& pair : pairs) {
        ++i;
        for (const auto& res :
             {check_lemma13(pair, 6), check_slope_ulam(pair, 8, 200 + i),
              check_rem37(pair, 210 + i, 10), check_rem38(pair, 220 + i, 12),
              check_rem39(pair), check_lemma310(pair), check_rem313(pair, 5),
              check_eq323(pair),
              check_residual_random(pair, 230 + i, 5, make_rational(Integer(1), pow2(30))),
              check_h_monotone(pair, 240 + i, 5)}) {
            CAPTURE(res.name);
            CAPTURE(res.detail);
            CHECK(res.pass);
        }
    }
}

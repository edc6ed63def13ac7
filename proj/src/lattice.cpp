#include "conjlab/lattice.hpp"

#include <algorithm>

#include "conjlab/errors.hpp"

namespace conjlab {

Lattice lattice_level(const PLUnimodalMap& map, int n, int cap) {
    if (n < 1) throw DomainError("lattice level must be positive");
    if (n > cap) throw DepthCapExceeded("lattice level " + std::to_string(n) + " exceeds cap " +
                                        std::to_string(cap));
    std::vector<Rational> pts{Rational(0), Rational(1)};
    for (int level = 1; level < n; ++level) pts = preimage_set(map, pts);
    Integer expect = pow2(static_cast<unsigned long>(n - 1)) + 1;
    if (Integer(static_cast<long>(pts.size())) != expect)
        throw InternalInvariantViolated("lattice size mismatch at level " + std::to_string(n));
    return Lattice{map, n, std::move(pts)};
}

Lattice refine_lattice(const Lattice& L, int cap) {
    if (L.n + 1 > cap)
        throw DepthCapExceeded("refinement to level " + std::to_string(L.n + 1) +
                               " exceeds cap " + std::to_string(cap));
    return Lattice{L.map, L.n + 1, preimage_set(L.map, L.points)};
}

IntervalRef interval_ref(const Lattice& L, long k) {
    if (k < 0 || static_cast<size_t>(k) + 1 >= L.points.size())
        throw IndexOutOfRange("interval index " + std::to_string(k) + " at level " +
                              std::to_string(L.n));
    IntervalRef r;
    r.n = L.n;
    r.k = k;
    r.endpoints = {L.points[static_cast<size_t>(k)], L.points[static_cast<size_t>(k) + 1]};
    r.length = r.endpoints.second - r.endpoints.first;
    return r;
}

Rational delta(const PLUnimodalMap& map, int n, long k, int cap) {
    if (n < 1) throw DomainError("delta level must be positive");
    if (n + 1 > cap) throw DepthCapExceeded("delta at level " + std::to_string(n) +
                                            " needs level " + std::to_string(n + 1));
    Lattice Ln = lattice_level(map, n, cap);
    if (k < 0 || static_cast<size_t>(k) + 1 >= Ln.points.size())
        throw IndexOutOfRange("delta index " + std::to_string(k));
    Lattice Ln1 = refine_lattice(Ln, cap);
    const auto ku = static_cast<size_t>(k);
    return (Ln1.points[2 * ku + 1] - Ln.points[ku]) / (Ln.points[ku + 1] - Ln.points[ku]);
}

DeltaStats delta_stats(const PLUnimodalMap& map, int n_max) {
    const auto info = carcass_info(map, n_max);
    if (!info)
        throw NotCarcass("delta statistics need a carcass map (no n0 within " +
                         std::to_string(n_max) + " levels)");
    const int n0 = info->n0;
    Lattice base = lattice_level(map, n0 - 1);
    Lattice fine = refine_lattice(base);
    DeltaStats st;
    st.n0 = n0;
    const size_t classes = static_cast<size_t>(1) << (n0 - 2);
    for (size_t k = 0; k < classes; ++k) {
        Rational d = (fine.points[2 * k + 1] - base.points[k]) /
                     (base.points[k + 1] - base.points[k]);
        st.D.push_back(std::move(d));
    }
    st.delta_0 = st.D.front();
    st.delta_minus = st.D.front();
    st.delta_plus = st.D.front();
    for (const auto& d : st.D) {
        const Rational r = 1 - d;
        st.delta_minus = std::min({st.delta_minus, d, r});
        st.delta_plus = std::max({st.delta_plus, d, r});
    }
    return st;
}

Rational rot(const Rational& t) { return 1 - t; }

Integer rot_n(int n, const Integer& t) {
    if (n < 0) throw IndexOutOfRange("rot_n digit count must be nonnegative");
    const Integer top = pow2(static_cast<unsigned long>(n));
    if (t < 0 || t >= top) throw IndexOutOfRange("rot_n argument outside [0, 2^n)");
    return top - t - 1;
}

Integer bits_to_index(const std::vector<int>& bits, int i, int j) {
    if (i < 1 || j < i || static_cast<size_t>(j) > bits.size())
        throw IndexOutOfRange("bit range [" + std::to_string(i) + "," + std::to_string(j) + "]");
    Integer k = 0;
    for (int t = i; t <= j; ++t) {
        const int b = bits[static_cast<size_t>(t) - 1];
        if (b != 0 && b != 1) throw IndexOutOfRange("bit value outside {0,1}");
        k = 2 * k + b;
    }
    return k;
}

}  // namespace conjlab

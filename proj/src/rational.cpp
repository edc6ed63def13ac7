#include "conjlab/rational.hpp"

#include <cctype>

#include "conjlab/errors.hpp"

namespace conjlab {

Rational make_rational(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view s) {
    const std::string text(s);
    std::string_view num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    std::string_view num_digits = num;
    if (!num_digits.empty() && num_digits.front() == '-') num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den))
        throw ParseError("invalid rational '" + text + "' (expected p/q or integer)");
    Integer n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) throw ParseError("invalid rational '" + text + "' (zero denominator)");
    return make_rational(n, d);
}

std::string fraction_str(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string decimal_str(const Rational& r, int digits) {
    if (digits < 0) throw DomainError("negative digit count");
    Integer num = r.get_num();
    const bool neg = num < 0;
    if (neg) num = -num;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Integer scaled = num * scale;
    Integer q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), r.get_den().get_mpz_t());
    const Integer twice = 2 * rem;
    const int c = cmp(twice, Integer(r.get_den()));
    if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()) != 0)) q += 1;
    std::string sdig = q.get_str();
    if (static_cast<int>(sdig.size()) <= digits)
        sdig.insert(0, static_cast<size_t>(digits) + 1 - sdig.size(), '0');
    std::string out = sdig.substr(0, sdig.size() - static_cast<size_t>(digits));
    if (digits > 0) out += "." + sdig.substr(sdig.size() - static_cast<size_t>(digits));
    if (neg && q != 0) out.insert(0, 1, '-');
    return out;
}

Rational pow_rational(const Rational& base, unsigned long e) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    return make_rational(num, den);
}

Integer pow2(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

}  // namespace conjlab

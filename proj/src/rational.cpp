#include "sidonlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "sidonlab/errors.hpp"

namespace sidonlab {

namespace {

bool is_signed_integer(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text) {
    const auto bad = [&] { return ValidationError("not a rational number: '" + std::string(text) + "'"); };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!is_signed_integer(num) || !is_signed_integer(den)) throw bad();
        BigInt d = parse_integer(den);
        if (d == 0) throw ValidationError("zero denominator in '" + std::string(text) + "'");
        Rational q(parse_integer(num), d);
        q.canonicalize();
        return q;
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole.front() == '-';
        if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
        if (whole.empty() && frac.empty()) throw bad();
        if (!whole.empty() && !is_signed_integer(whole)) throw bad();
        if (!frac.empty() && !is_signed_integer(frac)) throw bad();
        if (!frac.empty() && (frac.front() == '-' || frac.front() == '+')) throw bad();
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        BigInt num = (whole.empty() ? BigInt(0) : parse_integer(whole)) * scale +
                     (frac.empty() ? BigInt(0) : parse_integer(frac));
        Rational q(negative ? BigInt(-num) : num, scale);
        q.canonicalize();
        return q;
    }
    if (!is_signed_integer(text)) throw bad();
    return Rational(parse_integer(text));
}

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

BigInt to_bigint(std::int64_t v) {
    BigInt z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

std::int64_t to_int64(const BigInt& z) {
    if (!mpz_fits_slong_p(z.get_mpz_t())) throw ValidationError("integer out of 64-bit range: " + z.get_str());
    return static_cast<std::int64_t>(mpz_get_si(z.get_mpz_t()));
}

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw ValidationError("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<__int128>(r) * r > n) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::int64_t ceil_sqrt(std::int64_t n) {
    auto r = isqrt(n);
    return r * r == n ? r : r + 1;
}

bool is_perfect_square(std::int64_t n) {
    if (n < 0) return false;
    auto r = isqrt(n);
    return r * r == n;
}

BigInt ceil(const Rational& q) {
    BigInt r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

BigInt floor(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

std::optional<Rational> scale_by_half_power(const Rational& q, std::int64_t n, int half_power) {
    if (half_power == 0) return q;
    const bool even = half_power % 2 == 0;
    if (!even && !is_perfect_square(n)) return std::nullopt;
    const BigInt base = even ? to_bigint(n) : to_bigint(isqrt(n));
    const int e = even ? half_power / 2 : half_power;
    const BigInt p = pow(base, static_cast<unsigned long>(e < 0 ? -e : e));
    Rational out = e >= 0 ? Rational(q * p) : Rational(q / p);
    out.canonicalize();
    return out;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Rational pow(const Rational& base, unsigned long exponent) {
    Rational r(pow(base.get_num(), exponent), pow(base.get_den(), exponent));
    r.canonicalize();
    return r;
}

} // namespace sidonlab

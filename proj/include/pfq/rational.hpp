#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pfq {

// Exact arbitrary-precision integers and rationals. mpq_class keeps values
// in lowest terms with a positive denominator, which is exactly the
// canonical form we need everywhere.
using Int = mpz_class;
using Rational = mpq_class;

// Raised when a computation is refused on mathematical grounds (bad
// reduction, argument outside the convergence disc, ...), as opposed to a
// plain usage error.
struct math_error : std::runtime_error {
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a configured resource cap (orbit size, polynomial degree,
// iteration count) is exceeded.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "a/b" or "a", with an optional leading '-' (ASCII or U+2212).
inline Rational parse_rational(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (size_t i = 0; i < text.size();) {
        // Accept the unicode minus sign some sources use.
        if (text.size() - i >= 3 && (unsigned char)text[i] == 0xE2 &&
            (unsigned char)text[i + 1] == 0x88 && (unsigned char)text[i + 2] == 0x92) {
            s.push_back('-');
            i += 3;
        } else if (!std::isspace((unsigned char)text[i])) {
            s.push_back(text[i++]);
        } else {
            ++i;
        }
    }
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto check_int = [](std::string_view t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit((unsigned char)t[i])) return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!check_int(s)) throw std::invalid_argument("bad rational literal: " + s);
        return Rational(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!check_int(num) || !check_int(den))
        throw std::invalid_argument("bad rational literal: " + s);
    return make_rational(Int(num), Int(den));
}

inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline bool is_nonpositive_integer(const Rational& q) {
    return is_integer(q) && q <= 0;
}

// Floor of a rational as an integer.
inline Int floor_int(const Rational& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}

// Fractional part in [0, 1).
inline Rational frac_part(const Rational& q) {
    return q - Rational(floor_int(q));
}

inline Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline bool is_prime(const Int& p) {
    return p > 1 && mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

inline void require_prime(long p) {
    if (!is_prime(Int(p))) throw std::invalid_argument("p is not prime");
}

}  // namespace pfq

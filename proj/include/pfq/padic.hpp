#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "pfq/rational.hpp"

namespace pfq {

// Sentinel for val_p(0) = +infinity.
inline constexpr long val_infinity = std::numeric_limits<long>::max();

/// p-adic valuation of a rational: the exponent of p in x, val_infinity for 0.
inline long valp(const Rational& x, long p) {
    require_prime(p);
    if (x == 0) return val_infinity;
    Int pp(p), tmp;
    long vn = (long)mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), pp.get_mpz_t());
    if (vn > 0) return vn;
    long vd = (long)mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), pp.get_mpz_t());
    return -vd;
}

/// Unique representative of x modulo p^r in [0, p^r), for p-integral x.
inline Int reduce_mod_pow(const Rational& x, long p, unsigned long r) {
    require_prime(p);
    if (valp(x, p) < 0) throw math_error("not p-integral");
    Int mod = pow_int(Int(p), r);
    Int num = x.get_num() % mod;
    if (num < 0) num += mod;
    if (x.get_den() == 1) return num;
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), mod.get_mpz_t()) == 0)
        throw math_error("not p-integral");
    return (num * inv) % mod;
}

/// Multiplicative order of p modulo d. Requires gcd(p, d) = 1; returns 1 for d = 1.
inline unsigned long mult_order(long p, const Int& d) {
    if (d <= 0) throw std::invalid_argument("modulus must be positive");
    if (d == 1) return 1;
    Int g;
    mpz_gcd(g.get_mpz_t(), Int(p).get_mpz_t(), d.get_mpz_t());
    if (g != 1) throw std::invalid_argument("p and d are not coprime");
    Int acc = Int(p) % d;
    unsigned long e = 1;
    while (acc != 1) {
        acc = (acc * p) % d;
        ++e;
    }
    return e;
}

// Eventually periodic p-adic digit stream: preperiod followed by period
// repeated forever. Digits are least significant first.
struct PExpansion {
    long p = 0;
    std::vector<long> preperiod;
    std::vector<long> period;

    // Value of the first r digits, i.e. x mod p^r.
    Int truncate(unsigned long r) const {
        Int acc = 0, pw = 1;
        for (unsigned long i = 0; i < r; ++i) {
            long d = i < preperiod.size()
                         ? preperiod[i]
                         : period[(i - preperiod.size()) % period.size()];
            acc += pw * d;
            pw *= p;
        }
        return acc;
    }
};

/// p-adic digit expansion of a p-integral rational, with minimal period
/// found at the first repeated remainder state.
inline PExpansion padic_digits(const Rational& x, long p) {
    require_prime(p);
    if (valp(x, p) < 0) throw math_error("not p-integral");
    PExpansion out;
    out.p = p;
    std::vector<long> digits;
    std::map<Rational, size_t> seen;
    Rational y = x;
    for (;;) {
        auto it = seen.find(y);
        if (it != seen.end()) {
            size_t start = it->second;
            out.preperiod.assign(digits.begin(), digits.begin() + (long)start);
            out.period.assign(digits.begin() + (long)start, digits.end());
            return out;
        }
        seen.emplace(y, digits.size());
        long d = reduce_mod_pow(y, p, 1).get_si();
        digits.push_back(d);
        y = (y - d) / p;
    }
}

/// Dwork map: for p-integral g the unique p-integral D with pD - g in
/// {0, ..., p-1}; the identity otherwise.
inline Rational dwork_map(const Rational& gamma, long p) {
    require_prime(p);
    if (valp(gamma, p) < 0) return gamma;
    long a = reduce_mod_pow(-gamma, p, 1).get_si();
    return (gamma + a) / p;
}

/// Residue of 1 - gamma modulo q computed from the closed formula
/// (1-gamma) + q*{gamma*Delta}, valid for q coprime with the denominator
/// of gamma and q > |numerator - denominator|.
inline Int christol_reduction(const Rational& gamma, const Int& q) {
    if (q <= 0) throw std::invalid_argument("modulus must be positive");
    const Int& a = gamma.get_num();
    const Int& d = gamma.get_den();
    if (q <= abs(a - d)) throw std::invalid_argument("modulus too small");
    if (d == 1) {
        Int res = (1 - a) % q;
        if (res < 0) res += q;
        return res;
    }
    Int g;
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
    if (g != 1) throw std::invalid_argument("modulus not coprime with denominator");
    Int delta;
    mpz_invert(delta.get_mpz_t(), q.get_mpz_t(), d.get_mpz_t());
    if (delta <= 0) delta += d;
    Rational res = (1 - gamma) + Rational(q) * frac_part(gamma * Rational(delta));
    if (!is_integer(res)) throw std::logic_error("christol_reduction: non-integral result");
    return res.get_num();
}

// Class of a nonzero rational modulo multiplicative congruence: p^valuation
// times a unit residue, up to factors in 1 + pZ_(p).
struct MultClass {
    long valuation = 0;
    long unit = 1;  // in {1, ..., p-1}
    long p = 0;

    bool operator==(const MultClass&) const = default;
};

inline MultClass mult_class(const Rational& x, long p) {
    require_prime(p);
    if (x == 0) throw math_error("zero has no multiplicative class");
    long v = valp(x, p);
    Rational unit_part = x / Rational(pow_int(Int(p), (unsigned long)std::abs(v)));
    if (v < 0) unit_part = x * Rational(pow_int(Int(p), (unsigned long)(-v)));
    return MultClass{v, reduce_mod_pow(unit_part, p, 1).get_si(), p};
}

inline MultClass class_product(const MultClass& a, const MultClass& b) {
    if (a.p != b.p) throw std::invalid_argument("mismatched primes");
    return MultClass{a.valuation + b.valuation, (long)((a.unit * b.unit) % a.p), a.p};
}

inline MultClass class_pow(MultClass a, Int e) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    MultClass acc{0, 1, a.p};
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = class_product(acc, a);
        a = class_product(a, a);
        e /= 2;
    }
    return acc;
}

}  // namespace pfq

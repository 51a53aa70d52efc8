#pragma once

#include <string>

#include "pfq/valuation.hpp"

namespace pfq {

/// Bound past which good reduction only depends on the residue class of the
/// prime modulo the common denominator: the largest lcm(den, den') * |g - g'|
/// over pairs of distinct entries of Gamma.
inline Int pair_gap_bound(const HParams& hp) {
    auto gammas = gamma_set(hp);
    Int best = 0;
    for (size_t i = 0; i < gammas.size(); ++i)
        for (size_t j = i + 1; j < gammas.size(); ++j) {
            Int l;
            mpz_lcm(l.get_mpz_t(), gammas[i].get_den().get_mpz_t(),
                    gammas[j].get_den().get_mpz_t());
            Rational gap = Rational(l) * abs(gammas[i] - gammas[j]);
            if (!is_integer(gap)) throw std::logic_error("pair gap is not integral");
            if (gap.get_num() > best) best = gap.get_num();
        }
    return best;
}

// Description of the set of primes with good reduction: finitely many small
// or denominator-dividing primes listed explicitly, all larger primes
// classified by their invertible residue modulo the common denominator.
struct GoodReductionSet {
    bool empty = false;
    std::string empty_reason;
    Int modulus;                     // common denominator d
    Int bound;                       // explicit-list threshold
    std::vector<Int> small_good;     // good primes <= bound or dividing d
    std::vector<Int> good_classes;   // residues c mod d (0 when d = 1)
};

/// Smallest prime strictly above `bound` in the class c modulo d.
inline Int representative_prime(const Int& c, const Int& d, const Int& bound) {
    Int p = bound + 1;
    Int r = ((p % d) + d) % d;
    p += (c - r + d) % d;
    while (!is_prime(p)) p += d;
    return p;
}

// verify_second additionally tests a second representative per class and
// refuses on disagreement (one is provably enough; this is a cheap self-check).
inline GoodReductionSet good_reduction_set(const HParams& hp,
                                           bool verify_second = false) {
    require_supported(hp);
    GoodReductionSet out;
    if (hp.m() > hp.n()) {
        out.empty = true;
        out.empty_reason = "m>n";
        return out;
    }
    out.modulus = common_denominator(hp);
    out.bound = pair_gap_bound(hp);
    if (hp.m() < hp.n() && out.bound < 2 * (long)hp.m())
        out.bound = 2 * (long)hp.m();

    auto test = [&](const Int& p) {
        return has_good_reduction(hp, p.get_si()).first;
    };
    for (Int p = 2; p <= out.bound; ++p)
        if (is_prime(p) && test(p)) out.small_good.push_back(p);
    for (Int p = 2; p <= out.modulus; ++p)
        if (is_prime(p) && out.modulus % p == 0 && p > out.bound && test(p))
            out.small_good.push_back(p);

    auto test_class = [&](const Int& c, const Int& d) {
        Int rep = representative_prime(c, d, out.bound);
        bool good = test(rep);
        if (verify_second && test(representative_prime(c, d, rep)) != good)
            throw std::logic_error("class verdict differs between representatives");
        return good;
    };
    if (out.modulus == 1) {
        if (test_class(0, 1)) out.good_classes.push_back(0);
        return out;
    }
    for (Int c = 1; c < out.modulus; ++c) {
        Int g;
        mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), out.modulus.get_mpz_t());
        if (g != 1) continue;
        if (test_class(c, out.modulus)) out.good_classes.push_back(c);
    }
    return out;
}

/// Membership query against a computed set.
inline bool is_good_prime(const GoodReductionSet& s, long p) {
    require_prime(p);
    if (s.empty) return false;
    if (Int(p) <= s.bound || s.modulus % p == 0)
        return std::binary_search(s.small_good.begin(), s.small_good.end(), Int(p));
    Int c = Int(p) % s.modulus;
    return std::binary_search(s.good_classes.begin(), s.good_classes.end(), c);
}

}  // namespace pfq

#pragma once

#include <deque>
#include <set>

#include "pfq/valuation.hpp"

namespace pfq {

// Per-stage constants of the coefficient recursion across one p-digit:
// nu0 is the critical drift in the original coordinates and nu = (1-p)*nu0
// is the integer drift the factor series of a section carries.
struct SectionData {
    Rational nu0;
    Int nu;
    long n_prime = 0, m_prime = 0;
    long v_prime = 0, w_prime = 0;
};

inline SectionData section_data(const HParams& hp, long p) {
    NormalizedParams np = normalize_params(hp, p);
    SectionData sd;
    sd.nu0 = critical_drift(np) - np.drift_delta;
    Rational nu = Rational(1 - p) * sd.nu0;
    if (!is_integer(nu)) throw std::logic_error("non-integral section drift");
    sd.nu = nu.get_num();
    sd.n_prime = np.n_prime;
    sd.m_prime = np.m_prime;
    sd.v_prime = np.v_prime;
    sd.w_prime = np.w_prime;
    return sd;
}

/// Parameters of the subseries picking every p-th coefficient starting at r:
/// each entry gamma becomes D_p(gamma + r).
inline HParams digit_shift(const HParams& hp, long p, const Int& r) {
    HParams g;
    for (const auto& t : hp.top) g.top.push_back(dwork_map(t + Rational(r), p));
    for (const auto& b : hp.bottom) g.bottom.push_back(dwork_map(b + Rational(r), p));
    return g;
}

// Mod-p shape of the subseries sum_k h_{r+pk} x^k of a series with good
// reduction: either it vanishes mod p, or it is congruent to
// residue * x^shift * G(x) with G the series of `params` when the factor
// drift is zero, and to residue * x^shift alone when the drift is positive
// (the factor argument then carries a positive power of p).
struct Section {
    bool zero = false;
    Int residue;
    Int shift;
    HParams params;
    Int scale_exponent;  // the integer drift nu of the factor series
};

inline Section section_decomposition(const HParams& hp, long p, const Int& r) {
    if (r < 0 || r >= p) throw std::invalid_argument("digit out of range");
    if (!has_good_reduction(hp, p).first)
        throw math_error("sections require good reduction");

    SectionData sd = section_data(hp, p);
    HParams g = digit_shift(hp, p, r);
    DriftedValuation dv = drifted_valuation(g, p, Rational(sd.nu));
    if (dv.minus_infinity) throw std::logic_error("divergent section valuation");

    Rational total = Rational(valp(coefficient_at(hp, r), p)) + dv.value;
    Section out;
    out.scale_exponent = sd.nu;
    if (total > 0) {
        out.zero = true;
        return out;
    }
    if (total < 0) throw std::logic_error("negative section valuation");
    out.shift = dv.argmin;
    out.residue = reduce_mod_pow(coefficient_at(hp, r + p * out.shift), p, 1);
    for (const auto& t : g.top) out.params.top.push_back(t + Rational(out.shift));
    for (const auto& b : g.bottom) out.params.bottom.push_back(b + Rational(out.shift));
    return out;
}

/// Multiplicative class of the coefficient h_N, computed one p-digit of N at
/// a time instead of through the N-term product.
inline MultClass coefficient_class(const HParams& hp, long p, Int N) {
    require_prime(p);
    if (N < 0) throw std::invalid_argument("negative index");
    if (!has_good_reduction(hp, p).first)
        throw math_error("coefficient classes require good reduction");

    auto rational_power = [&](const Rational& base, const Int& e) {
        Rational r = 1;
        Int k = e < 0 ? Int(-e) : e;
        for (Int i = 0; i < k; ++i) r *= base;
        return e < 0 ? Rational(1 / r) : r;
    };

    MultClass out{0, 1, p};
    MultClass scale{0, 1, p};  // class of the accumulated argument scaling
    HParams params = hp;
    while (N > 0) {
        Int digit = N % p;
        N /= p;
        SectionData sd = section_data(params, p);
        out = class_product(out, class_pow(scale, digit));
        out = class_product(out, mult_class(coefficient_at(params, digit), p));
        scale = class_product(mult_class(rational_power(Rational(-p), sd.nu), p),
                              class_pow(scale, Int(p)));
        params = digit_shift(params, p, digit);
    }
    return out;
}

/// Coefficients modulo p, for series with good reduction.
inline std::vector<long> series_mod_p(const HParams& hp, long p, long K) {
    if (!has_good_reduction(hp, p).first)
        throw math_error("reduction mod p requires good reduction");
    std::vector<long> out;
    Rational h = 1;
    for (long k = 0; k < K; ++k) {
        out.push_back(reduce_mod_pow(h, p, 1).get_si());
        for (const auto& t : hp.top) h *= t + Rational(k);
        for (const auto& b : hp.bottom) {
            Rational f = b + Rational(k);
            if (f == 0) throw math_error("zero Pochhammer factor in bottom parameter");
            h /= f;
        }
    }
    return out;
}

// A series compared for congruence mod p: either the constant series 1 or a
// hypergeometric series, with parameter tuples kept sorted so that equal
// series compare equal.
struct SeriesRef {
    bool one = false;
    HParams params;

    bool operator==(const SeriesRef&) const = default;
    bool operator<(const SeriesRef& o) const {
        if (one != o.one) return one && !o.one;
        return params < o.params;
    }
};

inline SeriesRef one_series() { return SeriesRef{true, {}}; }

inline SeriesRef canonical_series(const HParams& hp) {
    SeriesRef s{false, hp};
    std::sort(s.params.top.begin(), s.params.top.end());
    std::sort(s.params.bottom.begin(), s.params.bottom.end());
    return s;
}

namespace detail {

struct SubseriesShape {
    bool zero = false;
    Int residue;
    Int shift;
    SeriesRef factor;
};

inline SubseriesShape subseries_shape(const SeriesRef& s, long p, const Int& r) {
    if (s.one) {
        if (r == 0) return SubseriesShape{false, 1, 0, one_series()};
        return SubseriesShape{true, 0, 0, {}};
    }
    Section sec = section_decomposition(s.params, p, r);
    if (sec.zero) return SubseriesShape{true, 0, 0, {}};
    SubseriesShape out{false, sec.residue, sec.shift, {}};
    if (sec.scale_exponent > 0)
        out.factor = one_series();  // factor argument divisible by p
    else if (sec.scale_exponent == 0)
        out.factor = canonical_series(sec.params);
    else
        throw std::logic_error("negative factor drift under good reduction");
    return out;
}

}  // namespace detail

/// Whether the two series have the same reduction mod p, decided by matching
/// their digit subseries recursively over the finitely many pairs that can
/// appear. The pair cap guards the worklist; exceeding it is reported rather
/// than guessed.
inline bool are_congruent(const SeriesRef& a, const SeriesRef& b, long p,
                          size_t pair_cap = 4096) {
    require_prime(p);
    std::deque<std::pair<SeriesRef, SeriesRef>> queue{{a, b}};
    std::set<std::pair<SeriesRef, SeriesRef>> checked;
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        if (x == y) continue;
        if (y < x) std::swap(x, y);
        if (!checked.emplace(x, y).second) continue;
        if (checked.size() > pair_cap)
            throw cap_error("congruence worklist exceeded the pair cap");
        for (Int r = 0; r < p; ++r) {
            auto sx = detail::subseries_shape(x, p, r);
            auto sy = detail::subseries_shape(y, p, r);
            if (sx.zero && sy.zero) continue;
            if (sx.zero != sy.zero || sx.residue != sy.residue ||
                sx.shift != sy.shift)
                return false;
            queue.emplace_back(sx.factor, sy.factor);
        }
    }
    return true;
}

inline bool are_congruent(const HParams& a, const HParams& b, long p,
                          size_t pair_cap = 4096) {
    return are_congruent(canonical_series(a), canonical_series(b), p, pair_cap);
}

}  // namespace pfq

#pragma once

#include <algorithm>
#include <map>

#include "pfq/padic.hpp"
#include "pfq/params.hpp"
#include "pfq/tropical.hpp"

namespace pfq {

// Parameters with the non-p-integral entries stripped. drift_delta is the
// per-index valuation drift they carried: for every k,
//   val_p(h_k of original) = val_p(h_k of normalized) + k * drift_delta.
struct NormalizedParams {
    HParams params;
    long p = 0;
    Rational drift_delta;  // v' - w'
    long n_prime = 0, m_prime = 0;
    long v_prime = 0, w_prime = 0;
};

inline NormalizedParams normalize_params(const HParams& hp, long p) {
    require_prime(p);
    NormalizedParams out;
    out.p = p;
    for (const auto& g : hp.top) {
        long v = valp(g, p);
        if (v >= 0) {
            out.params.top.push_back(g);
            ++out.n_prime;
        } else {
            out.v_prime += v;
        }
    }
    for (const auto& g : hp.bottom) {
        long v = valp(g, p);
        if (v >= 0) {
            out.params.bottom.push_back(g);
            ++out.m_prime;
        } else {
            out.w_prime += v;
        }
    }
    out.drift_delta = Rational(out.v_prime - out.w_prime);
    return out;
}

/// Critical drift of the normalized series: below it the drifted valuation
/// is minus infinity.
inline Rational critical_drift(const NormalizedParams& np) {
    return make_rational(Int(np.m_prime - np.n_prime), Int(np.p - 1));
}

// One level of breakpoint data. The s entries are the residues of 1 - gamma
// modulo p^r for gamma in the deduplicated set Gamma, sorted ascending (ties
// allowed: equal consecutive residues bound empty intervals). plateau[i] is
// the value of w_r on [xi[i], xi[i+1]).
struct ZigzagLevel {
    long r = 0;
    long p = 0;
    Int period;               // p^r
    std::vector<Int> xi;
    std::vector<Rational> owner;
    std::vector<long> plateau;
    long n = 0, m = 0;        // parameter counts of the normalized series

    size_t s() const { return xi.size(); }
};

inline ZigzagLevel xi_level(const NormalizedParams& np, long r) {
    if (r < 1) throw std::invalid_argument("level must be positive");
    ZigzagLevel lvl;
    lvl.r = r;
    lvl.p = np.p;
    lvl.period = pow_int(Int(np.p), (unsigned long)r);
    lvl.n = np.n_prime;
    lvl.m = np.m_prime;

    auto gammas = gamma_set(np.params);
    std::vector<std::pair<Int, Rational>> entries;
    for (const auto& g : gammas)
        entries.emplace_back(reduce_mod_pow(1 - g, np.p, (unsigned long)r), g);
    std::sort(entries.begin(), entries.end());

    // Jump of w_r when entering each residue, counted with multiplicity from
    // the original tuples. The jump at residue 0 belongs to the period wrap
    // (w_r(0) = 0 by definition) and is excluded from the plateaus.
    std::map<Int, long> jump;
    for (const auto& g : np.params.top)
        jump[reduce_mod_pow(1 - g, np.p, (unsigned long)r)] += 1;
    for (const auto& g : np.params.bottom)
        jump[reduce_mod_pow(1 - g, np.p, (unsigned long)r)] -= 1;

    long acc = 0;
    for (size_t i = 0; i < entries.size(); ++i) {
        lvl.xi.push_back(entries[i].first);
        lvl.owner.push_back(entries[i].second);
        if (entries[i].first != 0 && (i == 0 || entries[i].first != entries[i - 1].first))
            acc += jump[entries[i].first];
        lvl.plateau.push_back(acc);
    }
    return lvl;
}

/// w_r(k), folding k below p^r through the periodicity
/// w_r(k + p^r) = w_r(k) + (n - m).
inline Int w_eval(const ZigzagLevel& lvl, const Int& k) {
    if (k < 0) throw std::invalid_argument("negative index");
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), k.get_mpz_t(), lvl.period.get_mpz_t());
    // Last breakpoint <= rem (ties share one plateau value, so any works).
    size_t i = std::upper_bound(lvl.xi.begin(), lvl.xi.end(), rem) - lvl.xi.begin();
    long w = (i == 0) ? 0 : lvl.plateau[i - 1];
    return q * (lvl.n - lvl.m) + w;
}

inline Int w_eval(const NormalizedParams& np, long r, const Int& k) {
    return w_eval(xi_level(np, r), k);
}

namespace detail {

// Extended index (into the p^r-periodic prolongation of the level-(r-1)
// breakpoint list) of the first occurrence of `value`.
inline Int extended_index(const ZigzagLevel& prev, const Int& value) {
    Int base, c;
    mpz_fdiv_qr(c.get_mpz_t(), base.get_mpz_t(), value.get_mpz_t(),
                prev.period.get_mpz_t());
    auto it = std::lower_bound(prev.xi.begin(), prev.xi.end(), base);
    if (it == prev.xi.end() || *it != base)
        throw std::invalid_argument("inconsistent zigzag levels");
    return c * (long)prev.s() + (long)(it - prev.xi.begin());
}

}  // namespace detail

// Transition matrix T_r sending um_{r-1} to um_r: entry (j, i) is
// w_r(xi_{r,i}) plus the fold cost c * ((nu - nu0) p^{r-1} + nu0) of the
// unique period shifts c with j + c*s in J_{r,i}; the attached witness is
// the index offset c * p^{r-1}.
inline TropMatrix transition_matrix(const ZigzagLevel& prev, const ZigzagLevel& cur,
                                    const Rational& nu, const Rational& nu0) {
    if (prev.p != cur.p || prev.r + 1 != cur.r || prev.s() != cur.s())
        throw std::invalid_argument("inconsistent zigzag levels");
    const size_t s = cur.s();
    const Rational fold_cost = (nu - nu0) * Rational(prev.period) + nu0;

    std::vector<Int> j0(s + 1);
    for (size_t i = 0; i < s; ++i) j0[i] = detail::extended_index(prev, cur.xi[i]);
    j0[s] = detail::extended_index(prev, cur.xi[0] + cur.period);

    TropMatrix t(s, s);
    for (size_t i = 0; i < s; ++i) {
        for (Int u = j0[i]; u < j0[i + 1]; ++u) {
            Int c = u / (long)s;
            size_t j = mpz_get_ui(Int(u % (long)s).get_mpz_t());
            TropScalar cand(Rational(cur.plateau[i]) + Rational(c) * fold_cost,
                            c * prev.period);
            t.at(j, i) = oplus(t.at(j, i), cand);
        }
    }
    return t;
}

/// um_1: the minimum of sigma_1(k) = nu*k + w_1(k) over each interval of the
/// first level, with the argmin as witness. Empty intervals carry +inf.
inline TropVector initial_vector(const ZigzagLevel& lvl, const Rational& nu) {
    const size_t s = lvl.s();
    TropVector v(1, s);
    for (size_t i = 0; i < s; ++i) {
        Int lo = lvl.xi[i];
        Int hi = (i + 1 < s) ? lvl.xi[i + 1] : lvl.xi[0] + lvl.period;
        if (lo >= hi) continue;  // empty interval, stays +inf
        Int k = (nu >= 0) ? lo : Int(hi - 1);  // sigma_1 is affine with slope nu
        v.at(0, i) = TropScalar(nu * Rational(k) + lvl.plateau[i], k);
    }
    return v;
}

/// Level past which the transition matrices at nu = nu0 repeat with period
/// e = mult_order(p, denom): the smallest r with
/// r > e + log_p max{1, |1 - gamma|}.
inline long r0_bound(const NormalizedParams& np) {
    Int d = common_denominator(np.params);
    // gamma_set includes 1, so d also covers the denominators of the 1-gamma.
    long e = (long)mult_order(np.p, d);
    Rational biggest = 1;
    for (const auto& g : gamma_set(np.params)) {
        Rational a = abs(1 - g);
        if (a > biggest) biggest = a;
    }
    long r = e + 1;
    Int pw = np.p;
    while (Rational(pw) <= biggest) {
        pw *= np.p;
        ++r;
    }
    return r;
}

}  // namespace pfq

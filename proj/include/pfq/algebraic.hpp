#pragma once

#include <deque>
#include <map>
#include <set>

#include "pfq/dwork.hpp"
#include "pfq/fppoly.hpp"

namespace pfq {

// Canonical representative of parameters under the moves that leave the
// series unchanged mod p: tuples are sorted, and entries with negative p-adic
// valuation are reduced to their fractional part (an integer shift of such an
// entry rescales every coefficient by a unit congruent to 1 mod p).
inline HParams orbit_canonical(const HParams& hp, long p) {
    HParams out;
    auto reduce = [&](const Rational& g) {
        return valp(g, p) < 0 ? frac_part(g) : g;
    };
    for (const auto& t : hp.top) out.top.push_back(reduce(t));
    for (const auto& b : hp.bottom) out.bottom.push_back(reduce(b));
    std::sort(out.top.begin(), out.top.end());
    std::sort(out.bottom.begin(), out.bottom.end());
    return out;
}

/// Closure of the canonical parameters under all p digit shifts, sorted.
inline std::vector<HParams> parameter_orbit(const HParams& hp, long p,
                                            size_t orbit_cap = 512) {
    require_prime(p);
    require_supported(hp);
    std::set<HParams> seen;
    std::deque<HParams> queue;
    HParams start = orbit_canonical(hp, p);
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        HParams x = queue.front();
        queue.pop_front();
        for (Int r = 0; r < p; ++r) {
            HParams y = orbit_canonical(digit_shift(x, p, r), p);
            if (seen.insert(y).second) {
                if (seen.size() > orbit_cap)
                    throw cap_error("parameter orbit exceeded the size cap");
                queue.push_back(y);
            }
        }
    }
    return std::vector<HParams>(seen.begin(), seen.end());
}

namespace detail {

// Basis series attached to an orbit element whose valuation at zero drift is
// finite: G(x) = (1/g_t) sum_k g_{t+k} x^k with t the first minimal-valuation
// index, so G starts at 1 and has p-integral coefficients.
struct BasisSeries {
    HParams base;
    Int t;
    Rational min_val;
};

// Mod-p relation G_g = P_g + sum_{g'} Q_{g,g'} * G_{g'}^p.
struct OneStep {
    FpPoly P;
    std::vector<FpPoly> Q;  // indexed like the basis list
};

inline std::vector<Rational> base_coefficients(const HParams& hp, long count) {
    std::vector<Rational> out;
    Rational h = 1;
    for (long k = 0; k < count; ++k) {
        out.push_back(h);
        for (const auto& t : hp.top) h *= t + Rational(k);
        for (const auto& b : hp.bottom) {
            Rational f = b + Rational(k);
            if (f == 0) throw math_error("zero Pochhammer factor in bottom parameter");
            h /= f;
        }
    }
    return out;
}

inline OneStep one_step_relation(const BasisSeries& g, long p,
                                 const std::vector<BasisSeries>& basis) {
    OneStep out;
    out.Q.assign(basis.size(), poly_zero(p));

    struct Digit {
        long a, b;
        size_t target;
        long delta;
    };
    std::vector<Digit> digits;
    long max_index = 0;
    for (long r = 0; r < p; ++r) {
        Int tr = g.t + r;
        long a = Int(tr / p).get_si(), b = Int(tr % p).get_si();
        HParams next = orbit_canonical(digit_shift(g.base, p, b), p);
        size_t target = basis.size();
        for (size_t i = 0; i < basis.size(); ++i)
            if (basis[i].base == next) target = i;
        if (target == basis.size())
            throw math_error("digit subseries left the finite-valuation basis");
        long t2 = basis[target].t.get_si();
        long delta = t2 - a;
        digits.push_back({a, b, target, delta});
        max_index = std::max(max_index, std::max(p * t2 + b, p * a + b));
    }

    auto coeffs = base_coefficients(g.base, max_index + 1);
    const Rational& gt = coeffs[g.t.get_si()];
    auto red = [&](const Rational& x) {
        return reduce_mod_pow(x / gt, p, 1).get_si();
    };

    // G_g(x) = sum_r x^r L_r(x^p) with L_r the digit-r subseries; mod p each
    // L_r is a prefix plus a scalar multiple of a shifted basis series:
    // L_r = C_r + c_r x^delta G_target.
    std::vector<long> pcoef;
    for (long r = 0; r < p; ++r) {
        const Digit& d = digits[(size_t)r];
        if (d.delta < 0) {
            // The scalar index p*t'' + b lies strictly below the first
            // argmin t, so the whole digit subseries has positive valuation
            // and vanishes mod p.
            if (valp(coeffs[(size_t)((d.a + d.delta) * p + d.b)] / gt, p) <= 0)
                throw math_error("digit subseries starts before its basis series");
            continue;
        }
        for (long k = 0; k < d.delta; ++k) {
            long idx = r + p * k;
            if ((long)pcoef.size() <= idx) pcoef.resize((size_t)idx + 1, 0);
            pcoef[(size_t)idx] = red(coeffs[(size_t)((d.a + k) * p + d.b)]);
        }
        long c = red(coeffs[(size_t)((d.a + d.delta) * p + d.b)]);
        std::vector<long> mono((size_t)(r + p * d.delta) + 1, 0);
        mono.back() = c;
        out.Q[d.target] = poly_add(out.Q[d.target], make_poly(p, std::move(mono)));
    }
    out.P = make_poly(p, std::move(pcoef));
    return out;
}

inline std::vector<BasisSeries> finite_basis(const std::vector<HParams>& orbit,
                                             long p) {
    std::vector<BasisSeries> basis;
    for (const auto& x : orbit) {
        DriftedValuation dv = drifted_valuation(x, p, Rational(0));
        if (dv.minus_infinity) continue;
        basis.push_back(BasisSeries{x, dv.argmin, dv.value});
    }
    return basis;
}

}  // namespace detail

// Relation sum_e coeffs[e] * h(x)^{p^e} = 0 over F_p.
struct Annihilator {
    long p = 0;
    std::vector<FpPoly> coeffs;
};

/// Polynomial relation annihilating the Frobenius powers of the reduced
/// series. Requires good reduction. With a negative critical drift the
/// reduction is itself a polynomial and the relation is immediate; otherwise
/// it comes from eliminating the finitely many basis series of the orbit.
inline Annihilator annihilator(const HParams& hp, long p, size_t orbit_cap = 512) {
    require_prime(p);
    require_supported(hp);
    if (!has_good_reduction(hp, p).first)
        throw math_error("annihilators require good reduction");
    SectionData sd = section_data(hp, p);
    if (sd.nu0 > 0)
        throw std::logic_error("positive critical drift under good reduction");

    if (sd.nu0 < 0) {
        // Coefficients leave the unit ball at a linear rate, so the reduced
        // series is the polynomial of terms with valuation zero.
        Rational nu = sd.nu0 / 2;
        DriftedValuation dv = drifted_valuation(hp, p, nu);
        Rational need = (1 - dv.value) / (-nu);
        Int K = floor_int(need);
        if (Rational(K) < need) K += 1;
        if (K < 1) K = 1;
        FpPoly poly = make_poly(p, series_mod_p(hp, p, K.get_si()));
        // h = poly gives poly^{p-1} h - h^p = 0.
        return Annihilator{
            p, {poly_scale(poly_pow(poly, p - 1), p - 1), poly_const(p, 1)}};
    }

    auto orbit = parameter_orbit(hp, p, orbit_cap);
    auto basis = detail::finite_basis(orbit, p);
    HParams start = orbit_canonical(hp, p);
    size_t g0 = basis.size();
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].base == start) g0 = i;
    if (g0 == basis.size() || basis[g0].t != 0)
        throw std::logic_error("input series is not its own basis series");

    std::vector<detail::OneStep> table;
    for (const auto& g : basis) table.push_back(detail::one_step_relation(g, p, basis));

    // h^{p^e} = dilate(P^(E-e)) + sum dilate(Q^(E-e)) * G^{p^E}, where
    // P^(i), Q^(i) unfold i substitution rounds from h = G_{g0}.
    const size_t E = basis.size() + 1;
    std::vector<FpPoly> P(E + 1, poly_zero(p));
    std::vector<std::vector<FpPoly>> Q(E + 1,
                                       std::vector<FpPoly>(basis.size(), poly_zero(p)));
    Q[0][g0] = poly_const(p, 1);
    long pw = 1;
    for (size_t i = 0; i < E; ++i) {
        P[i + 1] = P[i];
        for (size_t g = 0; g < basis.size(); ++g) {
            if (Q[i][g].is_zero()) continue;
            P[i + 1] = poly_add(P[i + 1],
                                poly_mul(Q[i][g], poly_dilate(table[g].P, pw)));
            for (size_t g2 = 0; g2 < basis.size(); ++g2)
                Q[i + 1][g2] = poly_add(
                    Q[i + 1][g2],
                    poly_mul(Q[i][g], poly_dilate(table[g].Q[g2], pw)));
        }
        pw *= p;
    }

    std::vector<std::vector<FpPoly>> m(basis.size() + 1,
                                       std::vector<FpPoly>(E + 1, poly_zero(p)));
    pw = 1;
    for (size_t e = 0; e <= E; ++e) {
        m[0][e] = poly_dilate(P[E - e], pw);
        for (size_t g = 0; g < basis.size(); ++g)
            m[g + 1][e] = poly_dilate(Q[E - e][g], pw);
        pw *= p;
    }
    return Annihilator{p, poly_matrix_kernel(m, p)};
}

/// Truncated check of the relation against the series mod p: every
/// coefficient of sum_e v_e * (h mod x^K)^{p^e} below degree K must vanish.
inline bool verify_annihilator(const HParams& hp, const Annihilator& ann, long K) {
    if (K < 1) throw std::invalid_argument("truncation order must be positive");
    bool nonzero = false;
    for (const auto& v : ann.coeffs) nonzero = nonzero || !v.is_zero();
    if (!nonzero) return false;

    FpPoly series = make_poly(ann.p, series_mod_p(hp, ann.p, K));
    FpPoly acc = poly_zero(ann.p);
    long pw = 1;
    for (const auto& v : ann.coeffs) {
        if (!v.is_zero()) {
            // Only the first ceil(K / p^e) series terms reach degree < K.
            FpPoly head = poly_truncate(series, (K - 1) / pw + 1);
            FpPoly term = poly_truncate(poly_dilate(head, pw), K);
            acc = poly_add(acc, poly_truncate(poly_mul(v, term), K));
        }
        if (pw <= K) pw *= ann.p;
    }
    return poly_truncate(acc, K).is_zero();
}

}  // namespace pfq

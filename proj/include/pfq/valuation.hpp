#pragma once

#include "pfq/zigzag.hpp"

namespace pfq {

// Drifted valuation min_k val_p(h_k) + nu*k together with the smallest k
// attaining it. minus_infinity excludes the other fields except p and nu.
struct DriftedValuation {
    bool minus_infinity = false;
    Rational value;
    Int argmin;
    long p = 0;
    Rational nu;
};

namespace detail {

struct Recurrence {
    NormalizedParams np;
    Rational nu;       // drift seen by the normalized series
    Rational nu0;
    ZigzagLevel level; // current level r
    TropVector um;     // um_r

    void step() {
        ZigzagLevel next = xi_level(np, level.r + 1);
        um = trop_mul(um, transition_matrix(level, next, nu, nu0));
        level = std::move(next);
    }
};

inline Recurrence start_recurrence(const NormalizedParams& np, const Rational& nu) {
    Recurrence rec{np, nu, critical_drift(np), xi_level(np, 1), {}};
    rec.um = initial_vector(rec.level, nu);
    return rec;
}

}  // namespace detail

inline DriftedValuation drifted_valuation(const HParams& hp, long p, const Rational& nu) {
    require_prime(p);
    require_supported(hp);
    NormalizedParams np = normalize_params(hp, p);
    // Stripped parameters contribute k*drift_delta to val_p(h_k), which the
    // normalized series absorbs as an extra drift.
    Rational nu_eff = nu + np.drift_delta;
    Rational nu0 = critical_drift(np);

    DriftedValuation out;
    out.p = p;
    out.nu = nu;
    if (nu_eff < nu0) {
        out.minus_infinity = true;
        return out;
    }

    auto rec = detail::start_recurrence(np, nu_eff);
    const long r0 = r0_bound(np);
    const long e = (long)mult_order(p, common_denominator(np.params));

    if (nu_eff == nu0) {
        while (rec.level.r < r0) rec.step();
        TropVector um_r0 = rec.um;
        // T = T_{r0+1} odot ... odot T_{r0+e}, one full period.
        TropMatrix t;
        for (long i = 0; i < e; ++i) {
            ZigzagLevel next = xi_level(np, rec.level.r + 1);
            TropMatrix ti = transition_matrix(rec.level, next, nu_eff, nu0);
            t = (i == 0) ? ti : trop_mul(t, ti);
            rec.level = std::move(next);
        }
        Closure cl = weak_closure(t);
        if (cl.divergent) {
            out.minus_infinity = true;
            return out;
        }
        TropScalar first = trop_mul(um_r0, cl.matrix).at(0, 0);
        // (mu_{r,0}) is nonincreasing, so the closed-up value never exceeds
        // um_{r0}[0]; taking oplus also recovers the earliest witness.
        first = oplus(first, um_r0.at(0, 0));
        out.value = first.value;
        out.argmin = first.witness.value_or(0);
        return out;
    }

    // nu > nu0: iterate until the halting conditions hold.
    const Rational me(rec.np.m_prime * e);
    const long cap = r0 + 64 * e;
    for (;;) {
        if (rec.level.r >= r0) {
            bool ok = Rational(rec.level.period) * (nu_eff - nu0) + nu0 >= me;
            const TropScalar& head = rec.um.at(0, 0);
            for (size_t i = 1; ok && i < rec.um.cols; ++i) {
                const TropScalar& mi = rec.um.at(0, i);
                if (!mi.infinite && (head.infinite || mi.value < head.value + me))
                    ok = false;
            }
            if (ok) break;
        }
        if (rec.level.r >= cap)
            throw cap_error("drifted valuation did not stabilize within the level cap");
        rec.step();
    }
    const TropScalar& head = rec.um.at(0, 0);
    out.value = head.value;
    out.argmin = head.witness.value_or(0);
    return out;
}

/// Good reduction: all coefficients p-integral, i.e. the undrifted valuation
/// is nonnegative.
inline std::pair<bool, DriftedValuation> has_good_reduction(const HParams& hp, long p) {
    DriftedValuation v = drifted_valuation(hp, p, Rational(0));
    return {!v.minus_infinity && v.value >= 0, v};
}

}  // namespace pfq

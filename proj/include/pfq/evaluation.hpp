#pragma once

#include <optional>
#include <string>

#include "pfq/valuation.hpp"

namespace pfq {

// Truncation of a p-adic number to absolute precision p^target: the value is
// unit_residue * p^shift + O(p^target) with unit_residue reduced modulo
// p^(target - shift). shift = min(0, val_p of the partial sum), so
// unit_residue is an ordinary residue even when the value is not p-integral.
struct PadicApprox {
    long p = 0;
    long target = 0;
    long shift = 0;
    Int unit_residue;
    long terms = 0;  // number of series terms that were summed

    bool operator==(const PadicApprox& o) const {
        return p == o.p && target == o.target && shift == o.shift &&
               unit_residue == o.unit_residue;
    }
};

inline std::string to_string(const PadicApprox& a) {
    std::string s = a.unit_residue.get_str();
    if (a.shift != 0)
        s += " * " + std::to_string(a.p) + "^" + std::to_string(a.shift);
    return s + " + O(" + std::to_string(a.p) + "^" + std::to_string(a.target) + ")";
}

/// Drift used to bound the truncation order: interpolates between the
/// critical drift and val_p(a), approaching the critical drift as the target
/// precision grows. Near val_p(a) the per-term gain vanishes and the term
/// count blows up; at the critical drift the bound itself may diverge.
inline Rational heuristic_drift(const HParams& hp, long p, const Rational& val_a,
                                long target) {
    NormalizedParams np = normalize_params(hp, p);
    Rational nu0 = critical_drift(np) - np.drift_delta;
    Rational nu = nu0 + (val_a - nu0) / target;
    if (target < 1 || !(nu0 < nu && nu < val_a)) nu = (nu0 + val_a) / 2;
    return nu;
}

/// Value of the series at a p-adic argument a to absolute precision
/// p^target. Requires val_p(a) strictly above the critical drift, where the
/// series converges.
inline PadicApprox eval_padic(const HParams& hp, long p, const Rational& a,
                              long target,
                              const std::optional<Rational>& drift = std::nullopt) {
    require_prime(p);
    require_supported(hp);
    if (target < 1) throw std::invalid_argument("precision target must be positive");

    PadicApprox out;
    out.p = p;
    out.target = target;
    if (a == 0) {  // the series starts with h_0 = 1
        out.unit_residue = reduce_mod_pow(Rational(1), p, (unsigned long)target);
        return out;
    }

    NormalizedParams np = normalize_params(hp, p);
    Rational nu0 = critical_drift(np) - np.drift_delta;
    Rational val_a(valp(a, p));
    if (!(val_a > nu0))
        throw math_error("argument valuation must exceed the critical drift");

    Rational nu = drift ? *drift : heuristic_drift(hp, p, val_a, target);
    if (!(nu0 < nu && nu < val_a))
        throw std::invalid_argument("drift must lie strictly between the critical "
                                    "drift and the argument valuation");
    DriftedValuation dv = drifted_valuation(hp, p, nu);
    // val(h_k a^k) >= dv.value + (val_a - nu) * k, so K terms reach p^target.
    Rational need = (Rational(target) - dv.value) / (val_a - nu);
    Int K = floor_int(need);
    if (Rational(K) < need) K += 1;
    if (K < 0) K = 0;
    out.terms = K.get_si();

    Rational sum = 0, h = 1, power = 1;
    for (Int k = 0; k < K; ++k) {
        sum += h * power;
        power *= a;
        for (const auto& t : hp.top) h *= t + Rational(k);
        for (const auto& b : hp.bottom) {
            Rational f = b + Rational(k);
            if (f == 0) throw math_error("zero Pochhammer factor in bottom parameter");
            h /= f;
        }
    }

    if (sum == 0) {
        out.unit_residue = 0;
        return out;
    }
    out.shift = std::min(0L, valp(sum, p));
    Rational scaled = sum;
    if (out.shift < 0)
        scaled = sum * Rational(pow_int(Int(p), (unsigned long)(-out.shift)));
    out.unit_residue =
        reduce_mod_pow(scaled, p, (unsigned long)(target - out.shift));
    return out;
}

}  // namespace pfq

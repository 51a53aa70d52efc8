#pragma once

#include <utility>
#include <vector>

#include "pfq/padic.hpp"
#include "pfq/params.hpp"

namespace pfq {
namespace oracle {

/// First K coefficients, via the ratio h_{k+1}/h_k = prod(a+k)/prod(b+k).
inline std::vector<Rational> coefficients(const HParams& hp, long K) {
    std::vector<Rational> out;
    if (K <= 0) return out;
    Rational h = 1;
    out.push_back(h);
    for (long k = 0; k + 1 < K; ++k) {
        for (const auto& a : hp.top) h *= a + k;
        for (const auto& b : hp.bottom) {
            Rational f = b + k;
            if (f == 0) throw math_error("zero Pochhammer factor in bottom parameter");
            h /= f;
        }
        out.push_back(h);
    }
    return out;
}

// Streams val_p(h_k) for k = 0, 1, 2, ... without materializing the
// coefficients, using val(h_{k+1}) = val(h_k) + sum val(a+k) - sum val(b+k).
class ValuationStream {
  public:
    ValuationStream(const HParams& hp, long p) : p_(p), pp_(p), val_(0) {
        for (const auto& a : hp.top) factors_.push_back(make_factor(a, +1));
        for (const auto& b : hp.bottom) factors_.push_back(make_factor(b, -1));
    }

    long current() const { return val_; }  // val_p(h_k) for the current k

    void advance() {
        for (auto& f : factors_) {
            if (f.num == 0) throw math_error("zero Pochhammer factor");
            Int tmp;
            long v = (long)mpz_remove(tmp.get_mpz_t(), f.num.get_mpz_t(), pp_.get_mpz_t());
            val_ += f.sign * (v - f.den_val);
            f.num += f.den;
        }
    }

  private:
    struct Factor {
        Int num, den;  // running numerator of gamma + k, fixed denominator
        long den_val;
        int sign;
    };

    Factor make_factor(const Rational& g, int sign) {
        Factor f{g.get_num(), g.get_den(), 0, sign};
        Int tmp;
        f.den_val = (long)mpz_remove(tmp.get_mpz_t(), f.den.get_mpz_t(), pp_.get_mpz_t());
        return f;
    }

    long p_;
    Int pp_;
    long val_;
    std::vector<Factor> factors_;
};

/// val_p(h_k) by direct streaming.
inline std::vector<long> valuation_profile(const HParams& hp, long p, long K) {
    std::vector<long> out;
    if (K <= 0) return out;
    ValuationStream s(hp, p);
    out.push_back(s.current());
    for (long k = 0; k + 1 < K; ++k) {
        s.advance();
        out.push_back(s.current());
    }
    return out;
}

/// Minimum and first argmin of val_p(h_k) + nu*k over k < K.
inline std::pair<Rational, long> truncated_profile(const HParams& hp, long p,
                                                   const Rational& nu, long K) {
    if (K < 1) throw std::invalid_argument("K must be positive");
    ValuationStream s(hp, p);
    Rational best = 0;
    long best_k = 0;
    for (long k = 1; k < K; ++k) {
        s.advance();
        Rational v = Rational(s.current()) + nu * k;
        if (v < best) {
            best = v;
            best_k = k;
        }
    }
    return {best, best_k};
}

/// val_p(h_k) as the finite sum of the zigzag values w_r(k), each w_r
/// recomputed naively from its defining recurrence.
inline Rational valp_via_zigzag(const HParams& hp, long p, long k) {
    for (const auto& g : hp.top)
        if (valp(g, p) < 0) throw std::invalid_argument("parameters must be p-integral");
    for (const auto& g : hp.bottom)
        if (valp(g, p) < 0) throw std::invalid_argument("parameters must be p-integral");

    Int total = 0;
    for (unsigned long r = 1;; ++r) {
        Int pr = pow_int(Int(p), r);
        // Residues at which w_r jumps: j + gamma = 0 mod p^r, i.e. j = -gamma.
        std::vector<std::pair<Int, int>> marks;
        for (const auto& g : hp.top) marks.emplace_back(reduce_mod_pow(-g, p, r), +1);
        for (const auto& g : hp.bottom) marks.emplace_back(reduce_mod_pow(-g, p, r), -1);

        Int w = 0;
        for (Int j = 0; j < k; ++j)
            for (const auto& [res, sign] : marks)
                if (j % pr == res) w += sign;
        total += w;

        // Once every jump position (shifted by one: w jumps entering j+1)
        // strictly exceeds k at this and all later levels, the tail vanishes.
        bool done = true;
        for (const auto& [res, sign] : marks)
            if (res + 1 <= k) done = false;
        if (done) break;
    }
    return Rational(total);
}

}  // namespace oracle
}  // namespace pfq

#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "pfq/padic.hpp"
#include "pfq/rational.hpp"

namespace pfq {

// Top/bottom parameter tuples of a hypergeometric series. Order is
// preserved and repeats are allowed; no entry may be a nonpositive integer.
struct HParams {
    std::vector<Rational> top;
    std::vector<Rational> bottom;

    bool operator==(const HParams&) const = default;
    bool operator<(const HParams& o) const {
        if (top != o.top) return top < o.top;
        return bottom < o.bottom;
    }

    size_t n() const { return top.size(); }
    size_t m() const { return bottom.size(); }
};

inline bool has_nonpositive_integer(const HParams& hp) {
    for (const auto& g : hp.top)
        if (is_nonpositive_integer(g)) return true;
    for (const auto& g : hp.bottom)
        if (is_nonpositive_integer(g)) return true;
    return false;
}

inline void require_supported(const HParams& hp) {
    if (has_nonpositive_integer(hp))
        throw math_error("unsupported parameters: nonpositive integer entry");
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

inline std::string to_string(const std::vector<Rational>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s;
}

inline std::string to_string(const HParams& hp) {
    return "(" + to_string(hp.top) + ";" + to_string(hp.bottom) + ")";
}

/// Least common denominator of all parameters.
inline Int common_denominator(const HParams& hp) {
    Int d = 1;
    for (const auto& g : hp.top) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), g.get_den().get_mpz_t());
    for (const auto& g : hp.bottom) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), g.get_den().get_mpz_t());
    return d;
}

/// The set Gamma = {1} u top u bottom, deduplicated and sorted.
inline std::vector<Rational> gamma_set(const HParams& hp) {
    std::vector<Rational> g;
    g.push_back(Rational(1));
    g.insert(g.end(), hp.top.begin(), hp.top.end());
    g.insert(g.end(), hp.bottom.begin(), hp.bottom.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

/// Coefficient h_r of the hypergeometric series, by direct Pochhammer
/// products. Intended for small r.
inline Rational coefficient_at(const HParams& hp, const Int& r) {
    Rational h = 1;
    for (Int k = 0; k < r; ++k) {
        for (const auto& a : hp.top) h *= a + Rational(k);
        for (const auto& b : hp.bottom) {
            Rational f = b + Rational(k);
            if (f == 0) throw math_error("zero Pochhammer factor in bottom parameter");
            h /= f;
        }
    }
    return h;
}

}  // namespace pfq

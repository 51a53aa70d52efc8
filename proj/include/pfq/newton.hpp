#pragma once

#include <optional>
#include <utility>

#include "pfq/valuation.hpp"

namespace pfq {

// Convex region recording the drifted valuation as a function of the drift:
// its value at nu >= domain_slope is min over vertices of x*nu + y. The
// canonical form keeps exactly the vertices of the lower convex chain whose
// incident edge slopes are strictly increasing and stay below -domain_slope.
// No vertices at all encodes the function that is +inf everywhere, the
// neutral element for np_oplus and absorbing for np_odot.
struct NewtonPolygon {
    Rational domain_slope;
    std::vector<std::pair<Rational, Rational>> vertices;

    bool infinite() const { return vertices.empty(); }
    bool operator==(const NewtonPolygon&) const = default;
};

inline NewtonPolygon np_infinite(const Rational& delta) {
    return NewtonPolygon{delta, {}};
}

inline NewtonPolygon np_cone(const Rational& x, const Rational& y,
                             const Rational& delta) {
    return NewtonPolygon{delta, {{x, y}}};
}

/// Canonical form of the polygon spanned by a set of candidate vertices.
inline NewtonPolygon np_normalized(std::vector<std::pair<Rational, Rational>> pts,
                                   const Rational& delta) {
    std::sort(pts.begin(), pts.end());
    NewtonPolygon out{delta, {}};
    auto& h = out.vertices;
    auto bends_up = [](const std::pair<Rational, Rational>& a,
                       const std::pair<Rational, Rational>& b,
                       const std::pair<Rational, Rational>& c) {
        // slope(a,b) >= slope(b,c), x strictly increasing
        return (b.second - a.second) * (c.first - b.first) >=
               (c.second - b.second) * (b.first - a.first);
    };
    for (const auto& pt : pts) {
        if (!h.empty() && h.back().first == pt.first) continue;  // min y per x
        while (h.size() >= 2 && bends_up(h[h.size() - 2], h.back(), pt)) h.pop_back();
        h.push_back(pt);
    }
    // Edges at slope >= -delta never attain the minimum on [delta, inf).
    while (h.size() >= 2 &&
           h.back().second - h[h.size() - 2].second >=
               -delta * (h.back().first - h[h.size() - 2].first))
        h.pop_back();
    return out;
}

/// Pointwise minimum.
inline NewtonPolygon np_oplus(const NewtonPolygon& a, const NewtonPolygon& b) {
    if (a.domain_slope != b.domain_slope)
        throw std::invalid_argument("mismatched domain slopes");
    if (a.infinite()) return b;
    if (b.infinite()) return a;
    auto pts = a.vertices;
    pts.insert(pts.end(), b.vertices.begin(), b.vertices.end());
    return np_normalized(std::move(pts), a.domain_slope);
}

/// Pointwise sum (Minkowski sum of the regions).
inline NewtonPolygon np_odot(const NewtonPolygon& a, const NewtonPolygon& b) {
    if (a.domain_slope != b.domain_slope)
        throw std::invalid_argument("mismatched domain slopes");
    if (a.infinite() || b.infinite()) return np_infinite(a.domain_slope);
    std::vector<std::pair<Rational, Rational>> pts;
    Rational x = a.vertices[0].first + b.vertices[0].first;
    Rational y = a.vertices[0].second + b.vertices[0].second;
    pts.emplace_back(x, y);
    // Merge the two edge chains by increasing slope; both are already sorted.
    size_t i = 1, j = 1;
    auto take = [&](const NewtonPolygon& poly, size_t& k) {
        x += poly.vertices[k].first - poly.vertices[k - 1].first;
        y += poly.vertices[k].second - poly.vertices[k - 1].second;
        pts.emplace_back(x, y);
        ++k;
    };
    while (i < a.vertices.size() || j < b.vertices.size()) {
        if (j == b.vertices.size()) { take(a, i); continue; }
        if (i == a.vertices.size()) { take(b, j); continue; }
        Rational sa = (a.vertices[i].second - a.vertices[i - 1].second) *
                      (b.vertices[j].first - b.vertices[j - 1].first);
        Rational sb = (b.vertices[j].second - b.vertices[j - 1].second) *
                      (a.vertices[i].first - a.vertices[i - 1].first);
        if (sa <= sb) take(a, i); else take(b, j);
    }
    return np_normalized(std::move(pts), a.domain_slope);
}

/// Value at a drift nu in the domain; nullopt below the domain slope.
inline std::optional<Rational> np_ev(const NewtonPolygon& poly, const Rational& nu) {
    if (poly.infinite()) throw std::invalid_argument("evaluation of the empty polygon");
    if (nu < poly.domain_slope) return std::nullopt;
    Rational best = poly.vertices[0].first * nu + poly.vertices[0].second;
    for (size_t i = 1; i < poly.vertices.size(); ++i) {
        Rational v = poly.vertices[i].first * nu + poly.vertices[i].second;
        if (v < best) best = v;
    }
    return best;
}

namespace detail {

struct NPMatrix {
    size_t rows = 0, cols = 0;
    std::vector<NewtonPolygon> entries;

    NPMatrix() = default;
    NPMatrix(size_t r, size_t c, const Rational& delta)
        : rows(r), cols(c), entries(r * c, np_infinite(delta)) {}

    NewtonPolygon& at(size_t i, size_t j) { return entries[i * cols + j]; }
    const NewtonPolygon& at(size_t i, size_t j) const { return entries[i * cols + j]; }
};

inline NPMatrix np_mul(const NPMatrix& a, const NPMatrix& b, const Rational& delta) {
    if (a.cols != b.rows) throw std::invalid_argument("dimension mismatch");
    NPMatrix out(a.rows, b.cols, delta);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < b.cols; ++k) {
            NewtonPolygon acc = np_infinite(delta);
            for (size_t j = 0; j < a.cols; ++j)
                acc = np_oplus(acc, np_odot(a.at(i, j), b.at(j, k)));
            out.at(i, k) = acc;
        }
    return out;
}

// Polygon-valued counterpart of transition_matrix: each scalar entry
// w_r(xi_{r,i}) + c*((nu - nu0) p^{r-1} + nu0), seen as a function of nu,
// is the cone at (c p^{r-1}, w_r(xi_{r,i}) + c nu0 (1 - p^{r-1})).
inline NPMatrix np_transition(const ZigzagLevel& prev, const ZigzagLevel& cur,
                              const Rational& nu0, const Rational& delta) {
    if (prev.p != cur.p || prev.r + 1 != cur.r || prev.s() != cur.s())
        throw std::invalid_argument("inconsistent zigzag levels");
    const size_t s = cur.s();
    std::vector<Int> j0(s + 1);
    for (size_t i = 0; i < s; ++i) j0[i] = extended_index(prev, cur.xi[i]);
    j0[s] = extended_index(prev, cur.xi[0] + cur.period);

    NPMatrix t(s, s, delta);
    for (size_t i = 0; i < s; ++i)
        for (Int u = j0[i]; u < j0[i + 1]; ++u) {
            Int c = u / (long)s;
            size_t j = mpz_get_ui(Int(u % (long)s).get_mpz_t());
            NewtonPolygon cone = np_cone(
                Rational(c * prev.period),
                Rational(cur.plateau[i]) + Rational(c) * nu0 * (1 - Rational(prev.period)),
                delta);
            t.at(j, i) = np_oplus(t.at(j, i), cone);
        }
    return t;
}

// um_1 as polygons: on each nonempty interval [lo, hi) the function
// min_k nu*k + w_1(k) is attained at an endpoint, whichever the sign of nu.
inline NPMatrix np_initial(const ZigzagLevel& lvl, const Rational& delta) {
    const size_t s = lvl.s();
    NPMatrix v(1, s, delta);
    for (size_t i = 0; i < s; ++i) {
        Int lo = lvl.xi[i];
        Int hi = (i + 1 < s) ? lvl.xi[i + 1] : lvl.xi[0] + lvl.period;
        if (lo >= hi) continue;
        NewtonPolygon poly = np_cone(Rational(lo), Rational(lvl.plateau[i]), delta);
        poly = np_oplus(poly, np_cone(Rational(hi - 1), Rational(lvl.plateau[i]), delta));
        v.at(0, i) = poly;
    }
    return v;
}

}  // namespace detail

/// Full graph of nu -> drifted valuation as a polygon. When the valuation is
/// finite at the critical drift the domain starts there; otherwise a strictly
/// larger domain slope nu1 must be supplied.
inline NewtonPolygon newton_polygon(const HParams& hp, long p,
                                    const std::optional<Rational>& nu1 = std::nullopt) {
    require_prime(p);
    require_supported(hp);
    NormalizedParams np = normalize_params(hp, p);
    const Rational nu0 = critical_drift(np);
    const Rational dd = np.drift_delta;

    DriftedValuation dv = drifted_valuation(hp, p, Rational(nu0 - dd));
    Rational delta;
    if (dv.minus_infinity) {
        if (!nu1)
            throw math_error(
                "valuation diverges at the critical drift; a strictly larger "
                "domain slope is required");
        delta = *nu1 + dd;
        if (delta <= nu0)
            throw math_error("domain slope must exceed the critical drift");
    } else {
        delta = nu0;
    }

    ZigzagLevel lvl = xi_level(np, 1);
    detail::NPMatrix um = detail::np_initial(lvl, delta);
    NewtonPolygon acc = um.at(0, 0);

    const long r0 = r0_bound(np);
    const long e = (long)mult_order(p, common_denominator(np.params));
    const long min_levels = r0 + (long)gamma_set(np.params).size();
    const long cap = r0 + 64 * e;
    long stable = 0;
    for (long r = 2;; ++r) {
        ZigzagLevel next = xi_level(np, r);
        um = detail::np_mul(um, detail::np_transition(lvl, next, nu0, delta), delta);
        lvl = std::move(next);
        NewtonPolygon wider = np_oplus(acc, um.at(0, 0));
        stable = (wider == acc) ? stable + 1 : 0;
        acc = std::move(wider);
        if (r >= min_levels && stable >= e) break;
        if (r > cap)
            throw cap_error("polygon did not stabilize within the level cap");
    }

    // Back to the original coordinates: the stripped parameters shift every
    // line k by k*dd, a shear of the region.
    NewtonPolygon out{Rational(delta - dd), {}};
    for (const auto& [x, y] : acc.vertices)
        out.vertices.emplace_back(x, Rational(y + dd * x));
    return out;
}

}  // namespace pfq

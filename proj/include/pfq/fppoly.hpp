#pragma once

#include <cstdint>
#include <cstdlib>

#include "pfq/rational.hpp"

namespace pfq {

/// Degree cap for polynomial products, overridable via PFQ_CAP_DEGREE.
inline long poly_degree_cap() {
    static const long cap = [] {
        const char* s = std::getenv("PFQ_CAP_DEGREE");
        long v = s ? std::atol(s) : 0;
        return v > 0 ? v : 1000000L;
    }();
    return cap;
}

// Dense polynomial over F_p, coefficients in [0, p) with no trailing zeros.
struct FpPoly {
    long p = 0;
    std::vector<long> c;

    bool is_zero() const { return c.empty(); }
    long degree() const { return (long)c.size() - 1; }  // -1 for zero
    long lead() const { return c.back(); }

    bool operator==(const FpPoly&) const = default;
};

inline FpPoly make_poly(long p, std::vector<long> coeffs) {
    require_prime(p);
    for (auto& x : coeffs) {
        x %= p;
        if (x < 0) x += p;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return FpPoly{p, std::move(coeffs)};
}

inline FpPoly poly_zero(long p) { return FpPoly{p, {}}; }
inline FpPoly poly_const(long p, long a) { return make_poly(p, {a}); }

inline long inv_mod(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw std::invalid_argument("inverse of zero");
    long r = 1, e = p - 2, b = a;
    while (e) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r;
}

inline FpPoly poly_add(const FpPoly& a, const FpPoly& b) {
    if (a.p != b.p) throw std::invalid_argument("mismatched primes");
    std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return make_poly(a.p, std::move(c));
}

inline FpPoly poly_scale(const FpPoly& a, long s) {
    std::vector<long> c = a.c;
    for (auto& x : c) x *= s % a.p;
    return make_poly(a.p, std::move(c));
}

inline FpPoly poly_sub(const FpPoly& a, const FpPoly& b) {
    return poly_add(a, poly_scale(b, b.p - 1));
}

/// Product via Kronecker substitution: one 64-bit slot per coefficient, a
/// single big-integer multiply, then slotwise reduction. Falls back to the
/// schoolbook product if the slot bound does not hold.
inline FpPoly poly_mul(const FpPoly& a, const FpPoly& b) {
    if (a.p != b.p) throw std::invalid_argument("mismatched primes");
    if (a.is_zero() || b.is_zero()) return poly_zero(a.p);
    long deg = a.degree() + b.degree();
    if (deg > poly_degree_cap())
        throw cap_error("polynomial degree exceeds the configured cap");
    const long p = a.p;
    size_t n = (size_t)deg + 1;
    unsigned long long worst = (unsigned long long)std::min(a.c.size(), b.c.size()) *
                               (unsigned long long)(p - 1) * (unsigned long long)(p - 1);
    bool packable = (p - 1) == 0 ||
                    worst / ((unsigned long long)(p - 1) * (p - 1)) ==
                        (unsigned long long)std::min(a.c.size(), b.c.size());
    if (packable && worst < (1ULL << 63)) {
        std::vector<uint64_t> pa(a.c.begin(), a.c.end()), pb(b.c.begin(), b.c.end());
        Int za, zb;
        mpz_import(za.get_mpz_t(), pa.size(), -1, 8, 0, 0, pa.data());
        mpz_import(zb.get_mpz_t(), pb.size(), -1, 8, 0, 0, pb.data());
        Int zc = za * zb;
        std::vector<uint64_t> pc(n, 0);
        size_t words = 0;
        mpz_export(pc.data(), &words, -1, 8, 0, 0, zc.get_mpz_t());
        std::vector<long> c(n);
        for (size_t i = 0; i < n; ++i) c[i] = (long)(pc[i] % (uint64_t)p);
        return make_poly(p, std::move(c));
    }
    std::vector<long> c(n, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = (c[i + j] + a.c[i] * b.c[j]) % p;
    return make_poly(p, std::move(c));
}

/// q(x^m). Over F_p this is also q(x)^m when m is a power of p.
inline FpPoly poly_dilate(const FpPoly& q, long m) {
    if (m < 1) throw std::invalid_argument("dilation factor must be positive");
    if (q.is_zero()) return q;
    if (q.degree() * m > poly_degree_cap())
        throw cap_error("polynomial degree exceeds the configured cap");
    std::vector<long> c((size_t)(q.degree() * m) + 1, 0);
    for (size_t i = 0; i < q.c.size(); ++i) c[i * m] = q.c[i];
    return make_poly(q.p, std::move(c));
}

inline FpPoly poly_pow(FpPoly base, long e) {
    FpPoly acc = poly_const(base.p, 1);
    while (e > 0) {
        if (e & 1) acc = poly_mul(acc, base);
        e >>= 1;
        if (e) base = poly_mul(base, base);
    }
    return acc;
}

inline FpPoly poly_truncate(const FpPoly& a, long K) {
    if (K <= 0) return poly_zero(a.p);
    std::vector<long> c(a.c.begin(),
                        a.c.begin() + std::min<size_t>(a.c.size(), (size_t)K));
    return make_poly(a.p, std::move(c));
}

struct PolyDivMod {
    FpPoly quot, rem;
};

inline PolyDivMod poly_divmod(const FpPoly& a, const FpPoly& b) {
    if (a.p != b.p) throw std::invalid_argument("mismatched primes");
    if (b.is_zero()) throw std::invalid_argument("division by the zero polynomial");
    const long p = a.p;
    std::vector<long> r = a.c, q;
    if (a.degree() >= b.degree()) q.assign((size_t)(a.degree() - b.degree()) + 1, 0);
    long binv = inv_mod(b.lead(), p);
    for (long d = a.degree(); d >= b.degree(); --d) {
        long coef = (r[(size_t)d] * binv) % p;
        if (coef) {
            q[(size_t)(d - b.degree())] = coef;
            for (long i = 0; i <= b.degree(); ++i) {
                long& slot = r[(size_t)(d - b.degree() + i)];
                slot = (slot - coef * b.c[(size_t)i]) % p;
                if (slot < 0) slot += p;
            }
        }
    }
    return PolyDivMod{make_poly(p, std::move(q)), make_poly(p, std::move(r))};
}

/// Exact quotient; refuses when the division leaves a remainder.
inline FpPoly poly_div_exact(const FpPoly& a, const FpPoly& b) {
    PolyDivMod d = poly_divmod(a, b);
    if (!d.rem.is_zero()) throw std::logic_error("inexact polynomial division");
    return d.quot;
}

/// Monic greatest common divisor.
inline FpPoly poly_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = poly_divmod(a, b).rem;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = poly_scale(a, inv_mod(a.lead(), a.p));
    return a;
}

/// One nonzero kernel vector of a wide polynomial matrix (cols > rank),
/// with the polynomial content divided out and the first nonzero entry made
/// monic. Computed from Cramer minors on a pivot submatrix found by
/// fraction-free elimination; the result is re-checked against the matrix.
inline std::vector<FpPoly> poly_matrix_kernel(
    const std::vector<std::vector<FpPoly>>& m, long p) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    if (cols == 0) throw std::invalid_argument("empty matrix");

    // Fraction-free elimination to locate pivot rows and columns.
    std::vector<std::vector<FpPoly>> w = m;
    std::vector<size_t> row_of(rows);
    for (size_t i = 0; i < rows; ++i) row_of[i] = i;
    std::vector<size_t> pivot_rows, pivot_cols;
    FpPoly prev = poly_const(p, 1);
    size_t top = 0;
    for (size_t col = 0; col < cols && top < rows; ++col) {
        size_t sel = top;
        while (sel < rows && w[sel][col].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(w[sel], w[top]);
        std::swap(row_of[sel], row_of[top]);
        for (size_t i = top + 1; i < rows; ++i)
            for (size_t k = col + 1; k < cols; ++k)
                w[i][k] = poly_div_exact(
                    poly_sub(poly_mul(w[i][k], w[top][col]),
                             poly_mul(w[i][col], w[top][k])),
                    prev);
        for (size_t i = top + 1; i < rows; ++i) w[i][col] = poly_zero(p);
        prev = w[top][col];
        pivot_rows.push_back(row_of[top]);
        pivot_cols.push_back(col);
        ++top;
    }

    size_t free_col = cols;
    for (size_t col = 0; col < cols; ++col) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), col) ==
            pivot_cols.end()) {
            free_col = col;
            break;
        }
    }
    if (free_col == cols) throw std::invalid_argument("matrix has full column rank");

    auto minor_det = [&](const std::vector<size_t>& cs) {
        // Bareiss determinant of m[pivot_rows, cs].
        size_t n = cs.size();
        if (n == 0) return poly_const(p, 1);
        std::vector<std::vector<FpPoly>> a(n, std::vector<FpPoly>(n, poly_zero(p)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) a[i][j] = m[pivot_rows[i]][cs[j]];
        FpPoly denom = poly_const(p, 1);
        long sign = 1;
        for (size_t k = 0; k + 1 < n; ++k) {
            if (a[k][k].is_zero()) {
                size_t sel = k + 1;
                while (sel < n && a[sel][k].is_zero()) ++sel;
                if (sel == n) return poly_zero(p);
                std::swap(a[sel], a[k]);
                sign = -sign;
            }
            for (size_t i = k + 1; i < n; ++i)
                for (size_t j = k + 1; j < n; ++j)
                    a[i][j] = poly_div_exact(
                        poly_sub(poly_mul(a[i][j], a[k][k]),
                                 poly_mul(a[i][k], a[k][j])),
                        denom);
            denom = a[k][k];
        }
        return sign == 1 ? a[n - 1][n - 1] : poly_scale(a[n - 1][n - 1], p - 1);
    };

    std::vector<FpPoly> v(cols, poly_zero(p));
    v[free_col] = minor_det(pivot_cols);
    for (size_t k = 0; k < pivot_cols.size(); ++k) {
        std::vector<size_t> cs = pivot_cols;
        cs[k] = free_col;
        v[pivot_cols[k]] = poly_scale(minor_det(cs), p - 1);
    }

    FpPoly content = poly_zero(p);
    for (const auto& e : v) content = poly_gcd(content, e);
    if (!content.is_zero() && content.degree() >= 0)
        for (auto& e : v) e = poly_div_exact(e, content);
    for (const auto& e : v) {
        if (e.is_zero()) continue;
        long s = inv_mod(e.lead(), p);
        for (auto& f : v) f = poly_scale(f, s);
        break;
    }

    bool nonzero = false;
    for (const auto& e : v) nonzero = nonzero || !e.is_zero();
    if (!nonzero) throw std::logic_error("kernel computation produced zero");
    for (size_t i = 0; i < rows; ++i) {
        FpPoly acc = poly_zero(p);
        for (size_t j = 0; j < cols; ++j) acc = poly_add(acc, poly_mul(m[i][j], v[j]));
        if (!acc.is_zero()) throw std::logic_error("kernel residual is nonzero");
    }
    return v;
}

}  // namespace pfq

#pragma once

#include <optional>
#include <vector>

#include "pfq/rational.hpp"

namespace pfq {

// Element of the min-plus semiring Q u {+inf}, optionally annotated with an
// argmin witness. oplus takes the witness of the strictly smaller value and
// breaks ties toward the smaller witness; odot adds witnesses.
struct TropScalar {
    bool infinite = true;
    Rational value;
    std::optional<Int> witness;

    TropScalar() = default;
    explicit TropScalar(Rational v, std::optional<Int> w = std::nullopt)
        : infinite(false), value(std::move(v)), witness(std::move(w)) {}

    static TropScalar inf() { return TropScalar{}; }
    static TropScalar zero() { return TropScalar(Rational(0)); }

    bool operator==(const TropScalar& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return value == o.value;
    }
};

inline TropScalar oplus(const TropScalar& a, const TropScalar& b) {
    if (a.infinite) return b;
    if (b.infinite) return a;
    if (a.value < b.value) return a;
    if (b.value < a.value) return b;
    if (a.witness && b.witness) return *a.witness <= *b.witness ? a : b;
    return a.witness ? a : b;
}

inline TropScalar odot(const TropScalar& a, const TropScalar& b) {
    if (a.infinite || b.infinite) return TropScalar::inf();
    TropScalar r(a.value + b.value);
    if (a.witness && b.witness)
        r.witness = *a.witness + *b.witness;
    else if (a.witness)
        r.witness = a.witness;
    else if (b.witness)
        r.witness = b.witness;
    return r;
}

struct TropMatrix {
    size_t rows = 0, cols = 0;
    std::vector<TropScalar> entries;  // row-major

    TropMatrix() = default;
    TropMatrix(size_t r, size_t c) : rows(r), cols(c), entries(r * c) {}

    TropScalar& at(size_t i, size_t j) { return entries[i * cols + j]; }
    const TropScalar& at(size_t i, size_t j) const { return entries[i * cols + j]; }

    static TropMatrix identity(size_t n) {
        TropMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = TropScalar::zero();
        return m;
    }

    bool operator==(const TropMatrix& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (size_t i = 0; i < entries.size(); ++i)
            if (!(entries[i] == o.entries[i])) return false;
        return true;
    }
};

using TropVector = TropMatrix;  // 1 x s row vector

inline TropMatrix trop_mul(const TropMatrix& a, const TropMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("tropical dimension mismatch");
    TropMatrix out(a.rows, b.cols);
    for (size_t i = 0; i < a.rows; ++i)
        for (size_t k = 0; k < b.cols; ++k) {
            TropScalar acc = TropScalar::inf();
            for (size_t j = 0; j < a.cols; ++j)
                acc = oplus(acc, odot(a.at(i, j), b.at(j, k)));
            out.at(i, k) = acc;
        }
    return out;
}

inline TropMatrix trop_add(const TropMatrix& a, const TropMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("tropical dimension mismatch");
    TropMatrix out(a.rows, a.cols);
    for (size_t i = 0; i < a.entries.size(); ++i)
        out.entries[i] = oplus(a.entries[i], b.entries[i]);
    return out;
}

// Result of the weak transitive closure T + T^2 + T^3 + ...; the sum
// diverges exactly when T has a negative-weight cycle.
struct Closure {
    bool divergent = false;
    TropMatrix matrix;
};

inline Closure weak_closure(const TropMatrix& t) {
    if (t.rows != t.cols) throw std::invalid_argument("closure of non-square matrix");
    const size_t n = t.rows;
    TropMatrix d = t;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                d.at(i, j) = oplus(d.at(i, j), odot(d.at(i, k), d.at(k, j)));
    for (size_t i = 0; i < n; ++i)
        if (!d.at(i, i).infinite && d.at(i, i).value < 0) return Closure{true, {}};
    return Closure{false, std::move(d)};
}

}  // namespace pfq

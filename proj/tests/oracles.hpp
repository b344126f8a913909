#pragma once

// Brute-force reference implementations used only by tests. They share the Field
// element tables with the library but none of its linear algebra.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "soclelab/gf.hpp"

namespace oracle {

using soclelab::Elem;
using soclelab::Field;
using V = std::vector<Elem>;

/// Schoolbook product of two coefficient lists reduced by a monic modulus over F_p.
inline std::vector<unsigned> poly_mulmod(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                         const std::vector<unsigned>& mod, unsigned p) {
    std::vector<unsigned> prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    const std::size_t e = mod.size() - 1;
    for (std::size_t d = prod.size(); d-- > e;) {
        const unsigned c = prod[d];
        if (c == 0) continue;
        for (std::size_t k = 0; k <= e; ++k) prod[d - e + k] = (prod[d - e + k] + (p - c) * mod[k]) % p;
    }
    prod.resize(e);
    return prod;
}

/// Every vector of F_q^n, index order.
inline std::vector<V> all_vectors(const Field& f, std::size_t n) {
    std::vector<V> out;
    V v(n, 0);
    while (true) {
        out.push_back(v);
        std::size_t k = 0;
        while (k < n && ++v[k] == f.q()) v[k++] = 0;
        if (k == n) break;
    }
    return out;
}

inline V add(const Field& f, const V& a, const V& b) {
    V out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

inline V scale(const Field& f, Elem s, const V& a) {
    V out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(s, a[i]);
    return out;
}

inline bool nonzero(const V& v) {
    return std::any_of(v.begin(), v.end(), [](Elem x) { return x != 0; });
}

/// Plain forward elimination; returns the rank.
inline std::size_t rank(const Field& f, std::vector<V> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const Elem inv = f.inv(rows[r][c]);
        for (std::size_t k = r + 1; k < rows.size(); ++k) {
            if (rows[k][c] == 0) continue;
            const Elem factor = f.neg(f.mul(rows[k][c], inv));
            for (std::size_t j = 0; j < cols; ++j) rows[k][j] = f.add(rows[k][j], f.mul(factor, rows[r][j]));
        }
        ++r;
    }
    return r;
}

inline bool in_span(const Field& f, const std::vector<V>& basis, const V& v) {
    auto with = basis;
    with.push_back(v);
    return rank(f, with) == rank(f, basis);
}

/// Set of all elements of span(gens).
inline std::set<V> span_elements(const Field& f, std::size_t n, const std::vector<V>& gens) {
    std::set<V> s{V(n, 0)};
    for (const auto& g : gens) {
        std::set<V> next;
        for (const auto& x : s)
            for (unsigned a = 0; a < f.q(); ++a) next.insert(add(f, x, scale(f, static_cast<Elem>(a), g)));
        s = std::move(next);
    }
    return s;
}

/// Every subspace of F_q^n as its element set, found by closing {0} under adjoining
/// single vectors.
inline std::set<std::set<V>> all_subspaces(const Field& f, std::size_t n) {
    const auto vecs = all_vectors(f, n);
    std::set<std::set<V>> seen{{V(n, 0)}};
    std::vector<std::set<V>> frontier{{V(n, 0)}};
    while (!frontier.empty()) {
        std::vector<std::set<V>> next;
        for (const auto& s : frontier)
            for (const auto& v : vecs) {
                if (s.count(v)) continue;
                std::set<V> t;
                for (const auto& x : s)
                    for (unsigned a = 0; a < f.q(); ++a) t.insert(add(f, x, scale(f, static_cast<Elem>(a), v)));
                if (seen.insert(t).second) next.push_back(std::move(t));
            }
        frontier = std::move(next);
    }
    return seen;
}

/// b (x) c flattened row-major.
inline V tensor(const Field& f, const V& b, const V& c) {
    V out;
    for (auto x : b)
        for (auto y : c) out.push_back(f.mul(x, y));
    return out;
}

/// Every nonzero b has a nonzero c with b (x) c in span(basis); all vectors tried.
inline bool cover_b(const Field& f, std::size_t m, std::size_t n, const std::vector<V>& basis) {
    const auto bs = all_vectors(f, m);
    const auto cs = all_vectors(f, n);
    for (const auto& b : bs) {
        if (!nonzero(b)) continue;
        bool ok = false;
        for (const auto& c : cs)
            if (nonzero(c) && in_span(f, basis, tensor(f, b, c))) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

inline bool cover_c(const Field& f, std::size_t m, std::size_t n, const std::vector<V>& basis) {
    const auto bs = all_vectors(f, m);
    const auto cs = all_vectors(f, n);
    for (const auto& c : cs) {
        if (!nonzero(c)) continue;
        bool ok = false;
        for (const auto& b : bs)
            if (nonzero(b) && in_span(f, basis, tensor(f, b, c))) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }
    return true;
}

/// Row-major matrix product of square n x n matrices.
inline V matmul(const Field& f, std::size_t n, const V& a, const V& b) {
    V out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i * n + k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out[i * n + j] = f.add(out[i * n + j], f.mul(a[i * n + k], b[k * n + j]));
        }
    return out;
}

/// Product in an algebra given by structure constants, index (i*d + j)*d + k.
inline V alg_mul(const Field& f, std::size_t d, const std::vector<Elem>& mult, const V& a, const V& b) {
    V out(d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Elem s = f.mul(a[i], b[j]);
            if (s == 0) continue;
            for (std::size_t k = 0; k < d; ++k) out[k] = f.add(out[k], f.mul(s, mult[(i * d + j) * d + k]));
        }
    return out;
}

inline bool alg_nilpotent(const Field& f, std::size_t d, const std::vector<Elem>& mult, const V& x) {
    V p = x;
    for (std::size_t k = 0; k < d && nonzero(p); ++k) p = alg_mul(f, d, mult, p, x);
    return !nonzero(p);
}

/// Radical as the set of x whose left ideal Rx is nil. Returns every member, not a basis.
inline std::set<V> radical_nil_ideal(const Field& f, std::size_t d, const std::vector<Elem>& mult) {
    const auto all = all_vectors(f, d);
    std::set<V> out;
    for (const auto& x : all) {
        bool nil = true;
        for (const auto& r : all)
            if (!alg_nilpotent(f, d, mult, alg_mul(f, d, mult, r, x))) {
                nil = false;
                break;
            }
        if (nil) out.insert(x);
    }
    return out;
}

}  // namespace oracle

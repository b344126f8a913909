#include "soclelab/gf.hpp"

#include <algorithm>

#include "soclelab/errors.hpp"

namespace soclelab {

namespace {

using Poly = std::vector<unsigned>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic b, coefficients mod p.
Poly poly_mod(Poly a, const Poly& b, unsigned p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const unsigned lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t k = 0; k <= db; ++k)
            a[shift + k] = (a[shift + k] + (p - lead) * b[k]) % p;
        trim(a);
    }
    return a;
}

Poly digits(unsigned index, unsigned p, unsigned len) {
    Poly d(len);
    for (unsigned k = 0; k < len; ++k) {
        d[k] = index % p;
        index /= p;
    }
    return d;
}

}  // namespace

bool is_prime(unsigned n) noexcept {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible_mod_p(std::span<const unsigned> poly, unsigned p) {
    Poly f(poly.begin(), poly.end());
    for (auto& c : f) c %= p;
    trim(f);
    if (f.size() < 2 || f.back() != 1) return false;
    const unsigned deg = static_cast<unsigned>(f.size() - 1);
    // Trial division by every monic polynomial of degree 1..deg/2.
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        unsigned count = 1;
        for (unsigned k = 0; k < d; ++k) count *= p;
        for (unsigned idx = 0; idx < count; ++idx) {
            Poly g = digits(idx, p, d);
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

Field Field::make(unsigned p, unsigned e, std::optional<std::vector<unsigned>> modulus,
                  unsigned max_order) {
    if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
    if (e == 0) throw InputError("field extension degree must be at least 1");
    max_order = std::min(max_order, kHardMaxOrder);
    unsigned long long q = 1;
    for (unsigned k = 0; k < e; ++k) {
        q *= p;
        if (q > max_order)
            throw InputError("field order " + std::to_string(p) + "^" + std::to_string(e) +
                             " exceeds the configured bound " + std::to_string(max_order));
    }

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->e = e;
    t->q = static_cast<unsigned>(q);

    if (e > 1) {
        if (modulus && !modulus->empty()) {
            Poly m = *modulus;
            if (m.size() != e + 1 || m.back() != 1)
                throw InputError("modulus must list e+1 coefficients of a monic degree-e polynomial");
            for (auto c : m)
                if (c >= p) throw InputError("modulus coefficient out of range [0, p)");
            if (!is_irreducible_mod_p(m, p)) throw InputError("supplied modulus is reducible over F_p");
            t->modulus = m;
        } else {
            unsigned count = t->q;
            for (unsigned idx = 0; idx < count; ++idx) {
                Poly m = digits(idx, p, e);
                m.push_back(1);
                if (is_irreducible_mod_p(m, p)) {
                    t->modulus = m;
                    break;
                }
            }
        }
    }

    const unsigned qq = t->q;
    t->add.resize(qq * qq);
    t->mul.resize(qq * qq);
    t->neg.resize(qq);
    t->inv.assign(qq, 0);
    auto index_of = [&](const Poly& c) {
        unsigned idx = 0;
        for (std::size_t k = c.size(); k-- > 0;) idx = idx * p + c[k];
        return idx;
    };
    for (unsigned a = 0; a < qq; ++a) {
        const Poly ca = digits(a, p, e);
        Poly n(e);
        for (unsigned k = 0; k < e; ++k) n[k] = (p - ca[k]) % p;
        t->neg[a] = static_cast<Elem>(index_of(n));
        for (unsigned b = 0; b < qq; ++b) {
            const Poly cb = digits(b, p, e);
            Poly s(e);
            for (unsigned k = 0; k < e; ++k) s[k] = (ca[k] + cb[k]) % p;
            t->add[a * qq + b] = static_cast<Elem>(index_of(s));
            Poly prod(2 * e - 1, 0);
            for (unsigned i = 0; i < e; ++i)
                for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
            Poly r = e > 1 ? poly_mod(prod, t->modulus, p) : Poly{prod[0] % p};
            r.resize(e, 0);
            t->mul[a * qq + b] = static_cast<Elem>(index_of(r));
        }
    }
    for (unsigned a = 1; a < qq; ++a)
        for (unsigned b = 1; b < qq; ++b)
            if (t->mul[a * qq + b] == 1) t->inv[a] = static_cast<Elem>(b);
    return Field(std::move(t));
}

Field Field::of_order(unsigned q, unsigned max_order) {
    for (unsigned p = 2; p <= q; ++p) {
        if (!is_prime(p) || q % p != 0) continue;
        unsigned e = 0, r = q;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        if (r != 1) break;
        return make(p, e, std::nullopt, max_order);
    }
    throw InputError("no finite field has order " + std::to_string(q));
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw PreconditionError("inversion of zero");
    return t_->inv[a];
}

Elem Field::pow(Elem a, std::uint64_t k) const noexcept {
    Elem r = 1;
    Elem b = a;
    while (k > 0) {
        if (k & 1u) r = mul(r, b);
        b = mul(b, b);
        k >>= 1u;
    }
    return r;
}

std::vector<unsigned> Field::coeffs(Elem a) const { return digits(a, t_->p, t_->e); }

Elem Field::from_coeffs(std::span<const unsigned> c) const {
    if (c.size() != t_->e) throw InputError("scalar must have exactly e coefficients");
    unsigned idx = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] >= t_->p) throw InputError("scalar coefficient out of range [0, p)");
        idx = idx * t_->p + c[k];
    }
    return static_cast<Elem>(idx);
}

Elem Field::from_int(long long v) const noexcept {
    const long long p = t_->p;
    return static_cast<Elem>(((v % p) + p) % p);
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> out(t_->q);
    for (unsigned i = 0; i < t_->q; ++i) out[i] = static_cast<Elem>(i);
    return out;
}

std::string Field::to_string(Elem a) const {
    if (t_->e == 1) return std::to_string(a);
    std::string s;
    const auto c = coeffs(a);
    for (std::size_t k = c.size(); k-- > 0;) {
        if (c[k] == 0) continue;
        if (!s.empty()) s += "+";
        if (c[k] != 1 || k == 0) s += std::to_string(c[k]);
        if (k >= 1) s += "x";
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
}

bool operator==(const Field& a, const Field& b) noexcept {
    if (a.t_ == b.t_) return true;
    return a.t_->p == b.t_->p && a.t_->e == b.t_->e && a.t_->modulus == b.t_->modulus;
}

Scalar::Scalar(Field field, Elem value) : field_(std::move(field)), value_(value) {
    if (value_ >= field_.q()) throw InputError("scalar index out of range for its field");
}

Scalar Scalar::from_coeffs(const Field& field, std::span<const unsigned> c) {
    return Scalar(field, field.from_coeffs(c));
}

void Scalar::require_same(const Scalar& o) const {
    if (!(field_ == o.field_)) throw PreconditionError("arithmetic between scalars of different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same(o);
    return {field_, field_.add(value_, o.value_)};
}
Scalar Scalar::operator-(const Scalar& o) const {
    require_same(o);
    return {field_, field_.sub(value_, o.value_)};
}
Scalar Scalar::operator*(const Scalar& o) const {
    require_same(o);
    return {field_, field_.mul(value_, o.value_)};
}
Scalar Scalar::operator-() const { return {field_, field_.neg(value_)}; }
Scalar Scalar::inverse() const { return {field_, field_.inv(value_)}; }

}  // namespace soclelab

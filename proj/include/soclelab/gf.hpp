#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace soclelab {

/// A finite field element, stored as its index in the owning Field's enumeration.
using Elem = std::uint8_t;

/// The finite field F_q, q = p^e, realised as F_p[x]/(modulus).
///
/// Element i has coefficient list (c_0, ..., c_{e-1}) with i = sum c_k p^k, so the
/// enumeration order 0, 1, ..., q-1 is lexicographic on (c_{e-1}, ..., c_0). Index 0
/// is zero and index 1 is one. All arithmetic goes through precomputed q x q tables;
/// copies share them.
class Field {
public:
    static constexpr unsigned kDefaultMaxOrder = 9;
    static constexpr unsigned kHardMaxOrder = 256;

    /// Build F_{p^e}. `modulus` lists e+1 little-endian coefficients of a monic
    /// irreducible polynomial (ignored and may be empty when e = 1). When it is omitted
    /// and e > 1 the first monic irreducible in enumeration order is used.
    /// Throws InputError for non-prime p, e = 0, a bad modulus, or q > max_order.
    static Field make(unsigned p, unsigned e = 1,
                      std::optional<std::vector<unsigned>> modulus = std::nullopt,
                      unsigned max_order = kDefaultMaxOrder);

    /// The field of prime order p, or of prime-power order q with the default modulus.
    static Field of_order(unsigned q, unsigned max_order = kDefaultMaxOrder);

    unsigned p() const noexcept { return t_->p; }
    unsigned e() const noexcept { return t_->e; }
    unsigned q() const noexcept { return t_->q; }
    const std::vector<unsigned>& modulus() const noexcept { return t_->modulus; }
    /// True when q = 2; linear algebra takes a bit-packed path then.
    bool is_binary() const noexcept { return t_->q == 2; }

    Elem add(Elem a, Elem b) const noexcept { return t_->add[a * t_->q + b]; }
    Elem sub(Elem a, Elem b) const noexcept { return t_->add[a * t_->q + t_->neg[b]]; }
    Elem mul(Elem a, Elem b) const noexcept { return t_->mul[a * t_->q + b]; }
    Elem neg(Elem a) const noexcept { return t_->neg[a]; }
    /// Throws PreconditionError on zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t k) const noexcept;
    /// a -> a^p.
    Elem frobenius(Elem a) const noexcept { return pow(a, t_->p); }

    std::vector<unsigned> coeffs(Elem a) const;
    Elem from_coeffs(std::span<const unsigned> coeffs) const;
    /// Reduces an integer mod p into the prime subfield.
    Elem from_int(long long v) const noexcept;

    std::vector<Elem> elements() const;
    std::string to_string(Elem a) const;

    friend bool operator==(const Field& a, const Field& b) noexcept;

private:
    struct Tables {
        unsigned p = 0, e = 0, q = 0;
        std::vector<unsigned> modulus;
        std::vector<Elem> add, mul, neg, inv;
    };
    explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
    std::shared_ptr<const Tables> t_;
};

bool is_prime(unsigned n) noexcept;

/// Irreducibility over F_p of a monic polynomial given little-endian.
bool is_irreducible_mod_p(std::span<const unsigned> poly, unsigned p);

/// A field element that remembers its field; mixing fields throws.
class Scalar {
public:
    Scalar(Field field, Elem value);
    static Scalar from_coeffs(const Field& field, std::span<const unsigned> coeffs);

    const Field& field() const noexcept { return field_; }
    Elem value() const noexcept { return value_; }
    std::vector<unsigned> coeffs() const { return field_.coeffs(value_); }
    bool is_zero() const noexcept { return value_ == 0; }

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;

    friend bool operator==(const Scalar& a, const Scalar& b) noexcept {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

private:
    void require_same(const Scalar& o) const;
    Field field_;
    Elem value_;
};

}  // namespace soclelab

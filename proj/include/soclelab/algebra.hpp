#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soclelab/errors.hpp"
#include "soclelab/exactla.hpp"
#include "soclelab/graph.hpp"
#include "soclelab/limits.hpp"

namespace soclelab {

/// Rejection of an algebra or certificate, with the offending basis indices.
class AlgebraRejected : public InputError {
public:
    enum class Kind { shape, not_closed, non_associative, identity, bad_certificate };
    AlgebraRejected(Kind kind, const std::string& what, std::vector<std::size_t> witness = {})
        : InputError(what), kind_(kind), witness_(std::move(witness)) {}
    Kind kind() const noexcept { return kind_; }
    const std::vector<std::size_t>& witness() const noexcept { return witness_; }

private:
    Kind kind_;
    std::vector<std::size_t> witness_;
};

/// One simple factor of R/J: a lift of its central idempotent and n x n matrix
/// units (row-major), all as coordinate vectors in R.
struct BlockCertificate {
    Vec idempotent;
    std::size_t size = 1;
    std::vector<Vec> matrix_units;

    const Vec& unit(std::size_t a, std::size_t b) const { return matrix_units.at(a * size + b); }
};

struct Certificate {
    Subspace radical;
    std::vector<BlockCertificate> blocks;
    bool split = false;
};

/// A finite-dimensional associative unital algebra over F_q, given by structure
/// constants on a basis e_0..e_{d-1}: e_i e_j = sum_k c(i,j,k) e_k.
class Algebra {
public:
    /// `mult` has d^3 entries, index (i*d + j)*d + k.
    static Algebra from_structure_constants(Field field, std::size_t dim, std::vector<Elem> mult, Vec one,
                                            std::optional<Certificate> cert = std::nullopt);
    /// Span of square matrices closed under products and containing the identity.
    static Algebra from_matrix_basis(std::vector<Mat> basis, std::optional<Certificate> cert = std::nullopt);

    const Field& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return dim_; }
    Elem mult(std::size_t i, std::size_t j, std::size_t k) const { return mult_[(i * dim_ + j) * dim_ + k]; }
    const std::vector<Elem>& structure_constants() const noexcept { return mult_; }
    const Vec& one() const noexcept { return one_; }
    const std::optional<std::vector<Mat>>& matrix_basis() const noexcept { return matrix_basis_; }
    bool has_certificate() const noexcept { return cert_.has_value(); }
    /// Throws PreconditionError when absent.
    const Certificate& certificate() const;
    /// Throws PreconditionError unless a certificate claims a split R/J.
    const Certificate& split_certificate() const;
    /// Verifies and attaches a certificate.
    Algebra with_certificate(Certificate cert) const;

    Vec basis_vector(std::size_t i) const;
    Vec multiply(std::span<const Elem> a, std::span<const Elem> b) const;
    /// Matrix of x -> a x (resp. x -> x a) in basis coordinates.
    Mat left_mult(std::span<const Elem> a) const;
    Mat right_mult(std::span<const Elem> a) const;
    /// span{a b : a in x, b in y}.
    Subspace product(const Subspace& x, const Subspace& y) const;
    bool is_two_sided_ideal(const Subspace& s) const;

private:
    Algebra() = default;
    void verify_structure() const;
    void verify_certificate(const Certificate& c) const;

    Field field_ = Field::of_order(2);
    std::size_t dim_ = 0;
    std::vector<Elem> mult_;
    Vec one_;
    std::optional<std::vector<Mat>> matrix_basis_;
    std::optional<Certificate> cert_;
};

/// {x : 1 - r x is a unit for every r}, by enumerating all q^dim elements. Verified to
/// be a nilpotent two-sided ideal. BudgetExceeded past limits.radical_elements.
Subspace radical_bruteforce(const Algebra& r, const Limits& limits = {});
/// The certified radical when present, the brute-force one otherwise.
Subspace radical(const Algebra& r, const Limits& limits = {});

struct Socles {
    Subspace left, right, two_sided;
};

/// left = {x : J x = 0}, right = {x : x J = 0}, two_sided = their intersection.
Socles socles(const Algebra& r, const Limits& limits = {});

/// Length of a two-sided ideal killed by J on both sides, as a bimodule: the sum over
/// block pairs of dim(e_f I e_e) / (n_f n_e). Requires a split certificate.
std::size_t bimodule_length(const Algebra& r, const Subspace& ideal);

/// Bipartite graph with left vertices the blocks f with f soc(R) != 0, right vertices
/// the blocks e with soc(R) e != 0 and edges where f soc(R) e != 0.
SocleGraph socle_graph(const Algebra& r);

/// socle_len + chi when chi >= 0, otherwise socle_len minus the -chi smallest edge lengths.
long improved_bound(const SocleGraph& g, long socle_len);

/// x r = r x for every socle basis vector x and algebra basis vector r.
bool socle_is_central(const Algebra& r, const Limits& limits = {});
/// One split block of size 1, i.e. R/J = F_q.
bool is_split_local(const Algebra& r);

struct AlgebraAnalysis {
    std::size_t dim = 0;
    Subspace radical;
    Socles socles;
    bool split = false;
    bool socle_central = false;
    std::optional<SocleGraph> graph{};
    std::optional<std::size_t> socle_bimodule_length{};
    std::optional<long> improved_bound{};
    std::optional<bool> radical_matches_bruteforce{};  // set when the oracle fits the budget
};

AlgebraAnalysis analyze(const Algebra& r, const Limits& limits = {});

}  // namespace soclelab

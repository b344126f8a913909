#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "soclelab/exactla.hpp"
#include "soclelab/limits.hpp"
#include "soclelab/strongness.hpp"

namespace soclelab {

/// A subspace A of B (x) C = F_q^m (x) F_q^n, viewed as a space of m x n matrices.
/// The rank-one tensor b (x) c is the matrix with entries b_i c_j.
class TensorSubspace {
public:
    /// Throws InputError unless every matrix is m x n over `field` and they are independent.
    TensorSubspace(Field field, std::size_t m, std::size_t n, std::vector<Mat> basis);
    static TensorSubspace from_flat(std::size_t m, std::size_t n, const Subspace& flat);
    static TensorSubspace full(const Field& field, std::size_t m, std::size_t n);

    const Field& field() const noexcept { return flat_.field(); }
    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<Mat>& basis() const noexcept { return basis_; }
    /// A as a subspace of F_q^{mn} (row-major flattening), in canonical form.
    const Subspace& flat() const noexcept { return flat_; }

    bool contains(const Mat& x) const;
    /// A^T inside C (x) B.
    TensorSubspace transpose() const;
    std::vector<TensorSubspace> hyperplanes() const;

    friend bool operator==(const TensorSubspace& a, const TensorSubspace& b) noexcept {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.flat_ == b.flat_;
    }

private:
    std::size_t m_, n_;
    std::vector<Mat> basis_;
    Subspace flat_;
};

/// The m x n matrix b c^T.
Mat outer(const Field& f, std::span<const Elem> b, std::span<const Elem> c);

struct CoverWitness {
    Vec point;                   // projective point b (or c for the transposed condition)
    std::optional<Vec> partner;  // a nonzero c with b (x) c in A; empty when none exists
};

struct ConditionResult {
    bool holds = false;
    std::vector<CoverWitness> witnesses;  // one per projective point, enumeration order
    std::optional<Vec> failing;           // first point without a partner
};

/// Every nonzero b in B has a nonzero c with b (x) c in A. Checked on projective
/// points, which is lossless because membership of b (x) c is scale invariant.
ConditionResult check_cond_b(const TensorSubspace& a);
/// The transposed condition, computed as check_cond_b of A^T.
ConditionResult check_cond_c(const TensorSubspace& a);
/// Short-circuiting predicates for the search kernels.
bool satisfies_cond_b(const TensorSubspace& a);
bool satisfies_cond_c(const TensorSubspace& a);
bool satisfies_both(const TensorSubspace& a);

struct CoverageReport {
    ConditionResult cond_b, cond_c;
    std::size_t dim_a = 0, m = 0, n = 0;
    bool bound_holds = false;  // dim A >= m + n - 1
    std::optional<bool> minimal;
    std::optional<TensorSubspace> violating_hyperplane;
};

/// Runs both condition checks and the dimension bound; re-verifies every witness.
/// Throws TheoremViolation if both conditions hold but the bound fails.
CoverageReport check_bound(const TensorSubspace& a, bool with_minimality = false);

struct MinimalityResult {
    bool minimal = false;
    std::optional<TensorSubspace> violating_hyperplane;
};

/// Both conditions are preserved under enlarging A, so A is minimal among satisfying
/// subspaces iff none of its hyperplanes satisfies them. Requires A to satisfy both.
MinimalityResult check_minimal(const TensorSubspace& a);
/// Walks down through satisfying hyperplanes until a minimal satisfying subspace remains.
TensorSubspace descend_to_minimal(const TensorSubspace& a);

struct SearchResult {
    std::vector<TensorSubspace> minimal;  // sorted by (dim, canonical basis)
    bool complete = false;
    std::uint64_t examined = 0;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> satisfying_by_dim;  // index = dim
    std::optional<TensorSubspace> bound_counterexample;
};

/// Exhaustively enumerates subspaces of B (x) C by increasing dimension and returns
/// every satisfying subspace with no satisfying hyperplane. Stops with complete = false
/// once `limits.subspaces` would be exceeded.
SearchResult search_minimal(std::size_t m, std::size_t n, const Field& field, const Limits& limits = {});

/// Reinterprets each basis matrix a as the map x -> x^T a from F_q^m to F_q^n, a
/// system with a single one-dimensional block on each side.
BilinearSystem to_bilinear(const TensorSubspace& a);

}  // namespace soclelab

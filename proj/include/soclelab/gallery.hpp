#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soclelab/algebra.hpp"
#include "soclelab/modrep.hpp"
#include "soclelab/strongness.hpp"
#include "soclelab/tensorcover.hpp"

namespace soclelab {

/// B (x) c + b (x) C; b and c default to the first basis vectors.
TensorSubspace make_cross(std::size_t m, std::size_t n, const Field& field, std::optional<Vec> b = std::nullopt,
                          std::optional<Vec> c = std::nullopt);

/// Corner family A_t: matrices supported in the first t rows and the first t columns
/// whose first t diagonal entries agree. Requires 1 <= t <= min(m, n).
TensorSubspace make_corner_family(std::size_t m, std::size_t n, std::size_t t, const Field& field);

/// Upper triangular n x n matrices, or those with scalar main diagonal.
Algebra make_triangular(std::size_t n, const Field& field, bool scalar_diagonal = false);
/// Matr_n(F_q) on matrix units.
Algebra make_full_matrix(std::size_t n, const Field& field);
/// F_q[x]/(x^k), basis 1, x, ..., x^{k-1}.
Algebra make_truncated_polynomial(const Field& field, std::size_t k);
/// F_q[x_1..x_r]/(x_1..x_r)^2, basis 1, x_1, ..., x_r.
Algebra make_square_zero(const Field& field, std::size_t r);

/// K[x; theta]/(x^{n+1}) over F_p, K = F_{p^d}, theta the Frobenius, x a = theta(a) x.
/// Basis index j*d + i is alpha^i x^j. The socle k x^n is central exactly when d | n.
Algebra make_twisted_truncated(unsigned p, unsigned d, std::size_t n);

/// S = A = B = k^P, T = k, C = k^d with P = (q^d - 1)/(q - 1): the P components act by
/// rank-one maps onto the one-dimensional subspaces of C in enumeration order.
BilinearSystem make_small_field_system(const Field& field, std::size_t d, const Limits& limits = {});

struct RingAndModule {
    Algebra ring;
    ModuleRep module;
};

/// The 6-dimensional ring of 4 x 4 matrices over F_2 supported on the first row and the
/// diagonal with equal (1,1), (2,2) entries, and its 5-dimensional minimal faithful module.
RingAndModule make_4x4_example();

/// The characteristic-zero number-field example. Always throws OutOfScope.
[[noreturn]] void make_number_field_example();

struct GalleryEntry {
    std::string name;
    std::string params;
    std::string description;
};

std::vector<GalleryEntry> gallery_list();

struct NamedAlgebra {
    std::string name;
    Algebra algebra;
};

/// Every gallery algebra over the parameter ranges used for regression runs.
std::vector<NamedAlgebra> gallery_algebras();

}  // namespace soclelab

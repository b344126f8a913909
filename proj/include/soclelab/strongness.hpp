#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "soclelab/exactla.hpp"
#include "soclelab/graph.hpp"
#include "soclelab/limits.hpp"

namespace soclelab {

enum class Side { left, right };

/// The maps f_j A e_i for one pair of blocks, in multiplicity-space form: each
/// matrix is a map k^{b_mult[s_block]} -> k^{c_mult[t_block]} (c_mult rows).
struct SystemComponent {
    std::size_t t_block = 0;
    std::size_t s_block = 0;
    std::vector<Mat> maps;  // images of an abstract basis of A'; may be dependent
};

/// Fully materialised form of a BilinearSystem: actual vector spaces B, C, the
/// abstract basis of A with its images h(a_k, -), and matrix units of S and T acting
/// on B, C and on A's coordinates.
struct ExpandedSystem {
    struct Unit {
        std::size_t block, row, col;
        Mat on_module;  // action on B (for S) or C (for T)
        Mat on_a;       // action on A's coordinates: right multiplication for S, left for T
    };
    std::size_t dim_b = 0, dim_c = 0, dim_a = 0;
    std::vector<Unit> s_units, t_units;
    std::vector<Mat> a_maps;  // dim_c x dim_b each
    /// Per (t_block, s_block) the abstract coordinates spanning f_j A e_i.
    std::vector<std::vector<std::vector<std::size_t>>> block_coords;
};

/// h: A x B -> C for split semisimple S = prod Matr_{s_i}(k), T = prod Matr_{t_j}(k).
///
/// Stored Morita-reduced: B = sum_i k^{s_i} (x) k^{b_mult[i]}, C = sum_j k^{t_j} (x)
/// k^{c_mult[j]}, and f_j A e_i = Matr_{t_j x s_i}(A'_{ji}) with A'_{ji} given by the
/// component maps. Submodule lattices of B, C and sub-bimodules of A correspond to
/// subspaces of the multiplicity spaces, which is where every predicate is evaluated.
class BilinearSystem {
public:
    BilinearSystem(Field field, std::vector<std::size_t> s_sizes, std::vector<std::size_t> t_sizes,
                   std::vector<std::size_t> b_mult, std::vector<std::size_t> c_mult,
                   std::vector<SystemComponent> components);

    const Field& field() const noexcept { return field_; }
    std::size_t s_block_count() const noexcept { return s_sizes_.size(); }
    std::size_t t_block_count() const noexcept { return t_sizes_.size(); }
    const std::vector<std::size_t>& s_sizes() const noexcept { return s_sizes_; }
    const std::vector<std::size_t>& t_sizes() const noexcept { return t_sizes_; }
    const std::vector<std::size_t>& b_mult() const noexcept { return b_mult_; }
    const std::vector<std::size_t>& c_mult() const noexcept { return c_mult_; }
    /// Sorted by (t_block, s_block); components with no maps are dropped.
    const std::vector<SystemComponent>& components() const noexcept { return components_; }
    /// Maps of A'_{ji}; empty when f_j A e_i = 0.
    const std::vector<Mat>& maps(std::size_t t_block, std::size_t s_block) const;

    std::size_t length_b() const;
    std::size_t length_c() const;
    /// Bimodule length of A: the sum of dim A'_{ji}.
    std::size_t length_a() const;

    ExpandedSystem expand() const;

private:
    Field field_;
    std::vector<std::size_t> s_sizes_, t_sizes_, b_mult_, c_mult_;
    std::vector<SystemComponent> components_;
};

/// True iff t.a.s acts as t o h(a) o s for every abstract basis vector and matrix units.
bool verify_balanced(const ExpandedSystem& x);

struct SystemPredicates {
    bool nondeg = false, cond_b = false, cond_c = false;
    std::optional<std::pair<std::size_t, std::size_t>> nondeg_failure;  // (t_block, s_block)
    std::optional<std::size_t> cond_b_failure_block;
    std::optional<Subspace> cond_b_failing_hyperplane;  // in k^{b_mult}
    std::optional<std::size_t> cond_c_failure_block;
    std::optional<Vec> cond_c_failing_point;  // in k^{c_mult}
};

/// nondeg: every nonzero a acts nonzero. cond_b: every maximal submodule of B is the
/// kernel of some nonzero a. cond_c: every simple submodule of C is the image of some
/// nonzero a.
SystemPredicates predicates(const BilinearSystem& sys);

struct SmallConditions {
    bool mxs = false, both = false, either = false;
    struct PairResult {
        std::size_t t_block, s_block;
        bool image_to_kernel;  // simple image => some a' in TaS with maximal kernel
        bool kernel_to_image;  // maximal kernel => some a' in TaS with simple image
    };
    std::vector<PairResult> pairs;
};

/// Evaluates the two transfer properties literally on the expanded system, for every
/// a in each f_j A e_i up to scalars. mxs is recorded (every system here is split).
/// Throws TheoremViolation if mxs => both => either fails, BudgetExceeded past
/// limits.elements.
SmallConditions small_conditions(const BilinearSystem& sys, const Limits& limits = {});

/// A set of maps given as a union of linear spans ("parts"), all with the same
/// domain (right side) or codomain (left side).
struct MapFamily {
    Field field;
    std::size_t domain_dim = 0, codomain_dim = 0;
    std::vector<std::vector<Mat>> parts;
};

/// Parts f_j A e_i over all i (left, codomain C'_j) or over all j (right, domain B'_i).
MapFamily left_family(const BilinearSystem& sys, std::size_t t_block);
MapFamily right_family(const BilinearSystem& sys, std::size_t s_block);
MapFamily block_family(const BilinearSystem& sys, std::size_t t_block, std::size_t s_block);

constexpr double kInfiniteN = std::numeric_limits<double>::infinity();

struct StrengthResult {
    bool strong = false;
    /// When not strong: a family of <= N hyperplanes (left) or points (right) that blocks W.
    std::vector<Subspace> blocking_family;
    std::uint64_t families_checked = 0;
};

/// Left: for every family of <= N proper submodules of the codomain some w has simple
/// image outside all of them. Right: for every family of <= N nonzero submodules of
/// the domain some w has maximal kernel containing none of them. Families are of
/// floor(N) members, and only hyperplanes (left) or points (right) are tried:
/// enlarging a proper member, or shrinking a nonzero one, only makes it block more.
StrengthResult n_strong(const MapFamily& w, Side side, double n, const Limits& limits = {});

struct UnionSplitResult {
    bool union_strong = false;
    std::optional<std::size_t> index;  // a part that is (N/d)-strong
    std::vector<Subspace> union_blocking_family;
};

/// If the union of the parts is N-strong, returns a part that is (N/d)-strong, d the
/// number of parts; throws TheoremViolation if none is.
UnionSplitResult union_split(const MapFamily& w, Side side, double n, const Limits& limits = {});

struct CoverCheck {
    std::size_t family_size = 0;
    bool no_cover_by_proper = false;       // no family of proper subspaces covers Y
    bool no_cover_of_maximals = false;     // no family of nonzero subspaces meets every hyperplane
    std::vector<Subspace> covering_family;  // first covering family found, if any
    std::vector<Subspace> transversal_family;
};

/// Checks on F_q^dim that no family of <= N proper subspaces has union Y and no family
/// of <= N nonzero subspaces has a member inside every maximal subspace. Throws
/// TheoremViolation if N <= q and either fails.
CoverCheck no_union_cover(const Field& field, std::size_t dim, std::size_t n, const Limits& limits = {});

struct StrengthBudget {
    std::size_t n_s = 0, n_t = 0;  // smallest division ring orders; q in the split case
    std::size_t d_s = 0, d_t = 0;  // largest number of partner blocks
    std::size_t l_s = 0, l_t = 0;  // largest block lengths of B and C
    bool card_d_ok = false;        // n_t >= d_t l_s and n_s >= d_s l_t
};

StrengthBudget strength_budget(const BilinearSystem& sys);
/// Right vertices: S-blocks with e B != 0; left vertices: T-blocks with f C != 0;
/// edges (f, e) between vertices with f A e != 0, weighted by dim A'_{fe}.
SocleGraph system_graph(const BilinearSystem& sys);

struct Prop41Report {
    StrengthBudget budget;
    SocleGraph graph;
    std::size_t length_b = 0, length_c = 0, length_a = 0;
    long lhs = 0, rhs = 0;
    bool holds = false;
    struct Hypotheses {
        bool nondeg = false, cond_b = false, cond_c = false, small_either = false, card_d = false;
        bool all() const noexcept { return nondeg && cond_b && cond_c && small_either && card_d; }
    } hypotheses;
    SystemPredicates predicates;
    SmallConditions small;
};

/// Evaluates lt(B) + lt(C) <= lt(A) + chi(G) together with every hypothesis under
/// which it is a theorem. Throws TheoremViolation if all hypotheses hold and it fails.
Prop41Report prop41_check(const BilinearSystem& sys, const Limits& limits = {});

/// Left N-strength relative to Y' (a subspace of the codomain), defined by recursion
/// on dim Y': dimension 1 needs a nonzero w with image in Y'; dimension r+1 needs,
/// for every Y'' of dimension r-1 inside Y', more than N intermediate subspaces of
/// dimension r relative to which W is N-strong.
bool relative_n_strong(const MapFamily& w, const Subspace& y_prime, double n, const Limits& limits = {});

/// A nonzero map in span(part) with image inside `target`, if any.
std::optional<Mat> map_into(const std::vector<Mat>& part, const Subspace& target);
/// A nonzero map in span(part) vanishing on `sub`, if any.
std::optional<Mat> map_killing(const std::vector<Mat>& part, const Subspace& sub);

}  // namespace soclelab

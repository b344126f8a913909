#pragma once

#include <optional>
#include <vector>

#include "soclelab/algebra.hpp"
#include "soclelab/strongness.hpp"

namespace soclelab {

class ModuleRejected : public InputError {
public:
    enum class Kind { shape, relation, identity };
    ModuleRejected(Kind kind, const std::string& what, std::vector<std::size_t> witness = {})
        : InputError(what), kind_(kind), witness_(std::move(witness)) {}
    Kind kind() const noexcept { return kind_; }
    const std::vector<std::size_t>& witness() const noexcept { return witness_; }

private:
    Kind kind_;
    std::vector<std::size_t> witness_;
};

/// Which precondition of a module check failed.
class CheckPrecondition : public PreconditionError {
public:
    enum class Reason { not_split, not_local, socle_not_central, not_faithful, not_minimal };
    CheckPrecondition(Reason reason, const std::string& what) : PreconditionError(what), reason_(reason) {}
    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

/// A finite-dimensional left module: one dim x dim matrix per algebra basis element.
class ModuleRep {
public:
    /// Verifies rho(e_i) rho(e_j) = sum_k c(i,j,k) rho(e_k) and rho(1) = 1.
    static ModuleRep make(Algebra algebra, std::vector<Mat> action);
    /// As make(), but returns nullopt when a relation fails. Shape errors still throw.
    static std::optional<ModuleRep> try_make(const Algebra& algebra, std::vector<Mat> action);
    static ModuleRep regular(const Algebra& algebra);

    const Algebra& algebra() const noexcept { return algebra_; }
    const Field& field() const noexcept { return algebra_.field(); }
    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Mat>& action() const noexcept { return action_; }
    /// rho(a) for a in coordinates of the algebra basis.
    Mat act(std::span<const Elem> a) const;

    bool is_submodule(const Subspace& s) const;
    /// The smallest submodule containing the given vectors.
    Subspace generate(const std::vector<Vec>& vectors) const;
    /// Action on a submodule, in the coordinates of its canonical basis.
    ModuleRep restrict_to(const Subspace& sub) const;
    /// Action on M/sub, in coordinates at the non-pivot positions of sub.
    ModuleRep quotient(const Subspace& sub) const;
    ModuleRep direct_sum(const ModuleRep& other) const;

private:
    ModuleRep(Algebra algebra, std::size_t dim, std::vector<Mat> action)
        : algebra_(std::move(algebra)), dim_(dim), action_(std::move(action)) {}
    static std::optional<ModuleRejected> check(const Algebra& algebra, std::size_t dim, const std::vector<Mat>& action);

    Algebra algebra_;
    std::size_t dim_;
    std::vector<Mat> action_;
};

/// Coordinates of v in M/sub, matching ModuleRep::quotient.
Vec quotient_coordinates(const Subspace& sub, std::span<const Elem> v);
/// A vector of M mapping to the given quotient coordinates.
Vec quotient_lift(const Subspace& sub, std::span<const Elem> coords);

/// J N for a submodule N (the whole module by default).
Subspace radical_times(const ModuleRep& m, const std::optional<Subspace>& sub = std::nullopt);
/// {v : J v = 0}.
Subspace module_socle(const ModuleRep& m);

struct Faithfulness {
    bool faithful = false;
    Subspace annihilator;
};

Faithfulness faithful(const ModuleRep& m);
/// {r : r N = 0}.
Subspace annihilator_of_submodule(const ModuleRep& m, const Subspace& sub);
/// {r : r M is contained in sub}, the annihilator of M/sub.
Subspace annihilator_of_quotient(const ModuleRep& m, const Subspace& sub);

struct TopSocle {
    std::size_t top_length = 0;
    std::size_t socle_length = 0;
    Subspace jm;
    Subspace soc;
};

/// Lengths over R/J computed blockwise. Requires a split certificate.
TopSocle top_socle(const ModuleRep& m);
/// lt(N / J N) for a submodule N.
std::size_t top_length(const ModuleRep& m, const Subspace& sub);

/// All maximal submodules of N (default M), through hyperplanes of the top
/// multiplicity spaces. BudgetExceeded past limits.subspaces.
std::vector<Subspace> maximal_submodules(const ModuleRep& m, const std::optional<Subspace>& sub = std::nullopt,
                                         const Limits& limits = {});
/// All simple submodules, through points of the socle multiplicity spaces.
std::vector<Subspace> simple_submodules(const ModuleRep& m, const Limits& limits = {});

struct MinimalFaithful {
    bool no_faithful_max_submodule = true;
    bool no_faithful_simple_quotient = true;
    std::optional<Subspace> faithful_submodule;  // a faithful maximal submodule
    std::optional<Subspace> faithful_quotient_by;  // a simple L with M/L faithful
    bool minimal() const noexcept { return no_faithful_max_submodule && no_faithful_simple_quotient; }
};

/// Requires a faithful module and a split certificate.
MinimalFaithful minimal_faithful(const ModuleRep& m, const Limits& limits = {});

struct ModuleReport {
    bool faithful = false;
    std::size_t top_length = 0, socle_length = 0;
    bool no_faithful_max_submodule = false, no_faithful_simple_quotient = false;
    long lhs = 0, rhs = 0;
    bool holds = false;
    /// Set by main_check: every hypothesis of the inequality except an infinite field holds.
    bool hypotheses_met_except_field_size = false;
    std::size_t socle_bimodule_length = 0;
    long chi = 0;
    long improved_rhs = 0;
};

/// Local split algebra with central socle, faithful minimal M:
/// top + socle <= dim soc(R) + 1, else TheoremViolation.
ModuleReport gulliksen_check(const ModuleRep& m, const Limits& limits = {});
/// top + socle against bimodule length of soc(R) + chi(G). A failure is a legitimate
/// outcome over a finite field and is reported, not thrown.
ModuleReport main_check(const ModuleRep& m, const Limits& limits = {});

struct ShrinkResult {
    ModuleRep module;
    /// The submodule taken, in the input's coordinates (shrink_submodule, shrink_subfactor).
    std::optional<Subspace> submodule;
    /// The kernel divided out, in the coordinates of the submodule when one was taken.
    std::optional<Subspace> kernel;
    std::size_t bound = 0;  // bimodule length of soc(R)
    std::size_t parts = 0;  // summands or subdirect factors used
};

ShrinkResult shrink_submodule(const ModuleRep& m, const Limits& limits = {});
ShrinkResult shrink_quotient(const ModuleRep& m, const Limits& limits = {});
ShrinkResult shrink_subfactor(const ModuleRep& m, const Limits& limits = {});

/// The balanced map soc(R) x M/JM -> soc(M) in reduced form over S = T = R/J.
/// Requires a split certificate.
BilinearSystem system_from_module(const ModuleRep& m);

}  // namespace soclelab

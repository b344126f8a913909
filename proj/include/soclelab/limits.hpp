#pragma once

#include <cstdint>

namespace soclelab {

/// Enumeration caps shared by every exhaustive routine.
struct Limits {
    unsigned max_field_order = 9;
    /// Largest q^dim for which the quasi-regularity radical oracle runs.
    std::uint64_t radical_elements = 1u << 16;
    /// Cap on families examined by one N-strong or covering predicate call.
    std::uint64_t combinations = 1'000'000;
    /// Cap on subspaces visited by one exhaustive subspace search.
    std::uint64_t subspaces = 1'000'000;
    /// Cap on individual elements enumerated by literal quantifier checks.
    std::uint64_t elements = 1'000'000;
    unsigned threads = 1;

    /// Defaults, with every count cap replaced by SOCLELAB_BUDGET when that is set.
    static Limits from_environment();
    /// Replace every count cap by `budget`.
    Limits with_budget(std::uint64_t budget) const;
};

/// Overflow-safe q^k, saturating at UINT64_MAX.
std::uint64_t checked_pow(std::uint64_t q, unsigned k);

}  // namespace soclelab

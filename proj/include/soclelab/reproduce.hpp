#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "soclelab/io.hpp"

namespace soclelab::reproduce {

using io::Json;

struct Options {
    Limits limits;
    std::uint64_t seed = 20240611;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    /// pass, fail, violation or budget. A time overrun counts as budget.
    std::string verdict = "fail";
    Json details = Json::object();
    double seconds = 0;
    double time_limit = 0;  // seconds; 0 when the criterion has none
    /// The criterion reproduces a legitimate failure of an inequality over a small field.
    bool counterexample = false;

    bool passed() const noexcept { return verdict == "pass"; }
    Json to_json(bool timing) const;
};

CriterionResult run_criterion(int id, const Options& options = {});
constexpr int kCriterionCount = 11;

/// Target names: all, paper-2, paper-4, paper-5.1, paper-6.
const std::vector<std::string>& targets();
/// Criterion ids making up a target; InputError for unknown names.
std::vector<int> battery(const std::string& target);

struct Bundle {
    std::string target;
    std::vector<CriterionResult> results;

    Json to_json(bool timing) const;
    /// Overall verdict: violation, budget, counterexample or pass.
    std::string verdict() const;
    /// 4 for a failed or violated criterion, 3 for budget, 1 when a reproduced
    /// counterexample is part of the battery, 0 otherwise.
    int exit_code() const;
    /// Fixed-width table, one row per criterion.
    std::string table(bool timing) const;
};

Bundle run_battery(const std::string& target, const Options& options = {});

// ---- corpora shared with the tests ----

/// Every n x n matrix X over f with X^2 = 0, by enumerating all q^(n^2) matrices.
std::vector<Mat> square_zero_matrices(const Field& f, std::size_t n);

struct ModuleCensus {
    std::string ring;
    std::uint64_t tuples = 0, modules = 0, faithful = 0, minimal = 0;
    long max_lhs = 0;
    long rhs = 0;
    std::vector<std::string> violations;
};

/// Enumerates every module of dimension 1..max_dim over the named local ring by
/// running through action tuples built from square-zero matrices and filtering them
/// with the module relations; checks the local inequality on each minimal faithful one.
/// Rings: trunc2-F2, trunc2-F3, sqzero2-F2, scalar-tri2-F2, scalar-tri3-F2.
ModuleCensus local_inequality_census(const std::string& ring, std::size_t max_dim, const Limits& limits = {});
const std::vector<std::string>& census_rings();

/// Random subquotients of free modules over small split algebras, plus the regular
/// modules and the 4 x 4 example. Only faithful modules are returned.
std::vector<ModuleRep> faithful_module_corpus(std::size_t count, std::size_t max_dim, std::uint64_t seed);

/// A random split system with one or two blocks on each side of sizes and
/// multiplicities at most 2. Some have zero components or fail the conditions. The
/// dimension of each A'_{ji} is capped so that f_j A e_i has at most
/// `max_block_elements` elements whenever a single map allows it.
BilinearSystem random_split_system(const Field& f, std::mt19937_64& rng, std::uint64_t max_block_elements = 200000);

}  // namespace soclelab::reproduce

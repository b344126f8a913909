#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "soclelab/errors.hpp"
#include "soclelab/tensorcover.hpp"

using namespace soclelab;

namespace {

// B (x) c + b (x) C with b, c the first basis vectors, built directly from matrix units.
TensorSubspace cross(const Field& f, std::size_t m, std::size_t n) {
    std::vector<Mat> basis;
    for (std::size_t j = 0; j < n; ++j) basis.push_back(Mat::unit(f, m, n, 0, j));
    for (std::size_t i = 1; i < m; ++i) basis.push_back(Mat::unit(f, m, n, i, 0));
    return TensorSubspace(f, m, n, basis);
}

// Matrices supported on the first t rows and columns whose first t diagonal entries agree.
TensorSubspace corner(const Field& f, std::size_t m, std::size_t n, std::size_t t) {
    std::vector<Mat> basis;
    Mat diag(f, m, n);
    for (std::size_t i = 0; i < t; ++i) diag.set(i, i, 1);
    basis.push_back(diag);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((i < t || j < t) && !(i == j && i < t)) basis.push_back(Mat::unit(f, m, n, i, j));
    return TensorSubspace(f, m, n, basis);
}

std::vector<oracle::V> flat_basis(const TensorSubspace& a) {
    std::vector<oracle::V> out;
    for (const auto& x : a.basis()) out.push_back(x.entries());
    return out;
}

TensorSubspace random_tensor_subspace(const Field& f, std::size_t m, std::size_t n, std::mt19937_64& rng) {
    const std::size_t k = rng() % (m * n + 1);
    Mat g(f, k, m * n);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < m * n; ++c) g.set(r, c, static_cast<Elem>(rng() % f.q()));
    return TensorSubspace::from_flat(m, n, Subspace::row_space(g));
}

}  // namespace

TEST_CASE("construction validates the basis") {
    const Field f = Field::of_order(2);
    CHECK_THROWS_AS(TensorSubspace(f, 2, 2, {Mat::unit(f, 2, 2, 0, 0), Mat::unit(f, 2, 2, 0, 0)}), InputError);
    CHECK_THROWS_AS(TensorSubspace(f, 2, 2, {Mat::unit(f, 2, 3, 0, 0)}), InputError);
    const auto a = TensorSubspace::full(f, 2, 3);
    CHECK(a.dim() == 6);
    CHECK(a.transpose().m() == 3);
}

TEST_CASE("cond_b examples") {
    const Field f2 = Field::of_order(2);
    CHECK(check_cond_b(TensorSubspace::full(f2, 2, 3)).holds);
    const TensorSubspace single(f2, 2, 2, {Mat::unit(f2, 2, 2, 0, 0)});
    const auto r = check_cond_b(single);
    CHECK_FALSE(r.holds);
    REQUIRE(r.failing);
    CHECK(*r.failing == Vec{0, 1});
    CHECK(check_cond_b(cross(f2, 2, 2)).holds);
}

TEST_CASE("cond_c examples") {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    CHECK(check_cond_c(TensorSubspace::full(f2, 2, 2)).holds);
    CHECK(check_cond_c(corner(f3, 3, 3, 2)).holds);
    CHECK_FALSE(check_cond_c(TensorSubspace(f2, 2, 2, {Mat::unit(f2, 2, 2, 0, 0)})).holds);
}

TEST_CASE("check_bound examples") {
    const Field f2 = Field::of_order(2);
    const auto r = check_bound(cross(f2, 3, 4));
    CHECK(r.cond_b.holds);
    CHECK(r.cond_c.holds);
    CHECK(r.dim_a == 6);
    CHECK(r.bound_holds);
    const auto full = check_bound(TensorSubspace::full(f2, 2, 2));
    CHECK(full.bound_holds);
    CHECK(full.dim_a == 4);
    for (const auto& w : r.cond_b.witnesses) {
        REQUIRE(w.partner);
        CHECK(cross(f2, 3, 4).contains(outer(f2, w.point, *w.partner)));
    }
}

TEST_CASE("minimality examples") {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    CHECK(check_minimal(cross(f3, 2, 2)).minimal);
    const auto full = check_minimal(TensorSubspace::full(f2, 2, 2));
    CHECK_FALSE(full.minimal);
    REQUIRE(full.violating_hyperplane);
    CHECK(satisfies_both(*full.violating_hyperplane));
    const auto a3 = check_minimal(corner(f2, 3, 3, 3));
    CHECK_FALSE(a3.minimal);
    REQUIRE(a3.violating_hyperplane);
    CHECK(a3.violating_hyperplane->dim() == 6);
    CHECK(satisfies_both(*a3.violating_hyperplane));
    CHECK(check_minimal(corner(f3, 3, 3, 2)).minimal);
    CHECK_THROWS_AS(check_minimal(TensorSubspace(f2, 2, 2, {Mat::unit(f2, 2, 2, 0, 0)})), PreconditionError);
    const auto down = descend_to_minimal(TensorSubspace::full(f2, 3, 2));
    CHECK(check_minimal(down).minimal);
    CHECK(down.dim() >= 4);
}

TEST_CASE("search_minimal examples") {
    const Field f2 = Field::of_order(2);
    const auto r22 = search_minimal(2, 2, f2);
    CHECK(r22.complete);
    CHECK(r22.examined == 67);
    CHECK_FALSE(r22.minimal.empty());
    for (const auto& a : r22.minimal) CHECK(a.dim() == 3);
    CHECK_FALSE(r22.bound_counterexample);

    const auto r21 = search_minimal(2, 1, f2);
    REQUIRE(r21.minimal.size() == 1);
    CHECK(r21.minimal[0] == TensorSubspace::full(f2, 2, 1));

    const auto r11 = search_minimal(1, 1, Field::of_order(3));
    REQUIRE(r11.minimal.size() == 1);
    CHECK(r11.minimal[0].dim() == 1);

    Limits tight;
    tight.subspaces = 20;
    const auto partial = search_minimal(2, 2, f2, tight);
    CHECK_FALSE(partial.complete);
    CHECK(partial.total == 67);
}

TEST_CASE("search results do not depend on the thread count") {
    const Field f3 = Field::of_order(3);
    Limits one, four;
    four.threads = 4;
    const auto a = search_minimal(2, 2, f3, one), b = search_minimal(2, 2, f3, four);
    CHECK(a.minimal == b.minimal);
    CHECK(a.satisfying_by_dim == b.satisfying_by_dim);
}

TEST_CASE("conditions agree with the brute-force oracle") {
    std::mt19937_64 rng(11);
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (int trial = 0; trial < 150; ++trial) {
            const std::size_t m = 1 + rng() % 3, n = 1 + rng() % 3;
            const auto a = random_tensor_subspace(f, m, n, rng);
            CHECK(satisfies_cond_b(a) == oracle::cover_b(f, m, n, flat_basis(a)));
            CHECK(satisfies_cond_c(a) == oracle::cover_c(f, m, n, flat_basis(a)));
            CHECK(check_cond_b(a).holds == satisfies_cond_b(a));
        }
    }
}

TEST_CASE("transpose duality") {
    std::mt19937_64 rng(12);
    const Field f = Field::of_order(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_tensor_subspace(f, 1 + rng() % 3, 1 + rng() % 3, rng);
        CHECK(satisfies_cond_b(a) == satisfies_cond_c(a.transpose()));
        CHECK(check_cond_c(a).holds == check_cond_b(a.transpose()).holds);
    }
}

TEST_CASE("conditions are upward monotone on nested pairs") {
    std::mt19937_64 rng(13);
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (int trial = 0; trial < 150; ++trial) {
            const std::size_t m = 1 + rng() % 3, n = 1 + rng() % 3;
            const auto small = random_tensor_subspace(f, m, n, rng);
            const auto extra = random_tensor_subspace(f, m, n, rng);
            const auto big = TensorSubspace::from_flat(m, n, small.flat() + extra.flat());
            if (satisfies_cond_b(small)) CHECK(satisfies_cond_b(big));
            if (satisfies_cond_c(small)) CHECK(satisfies_cond_c(big));
        }
    }
}

TEST_CASE("hyperplane minimality agrees with checking every proper subspace") {
    std::mt19937_64 rng(14);
    const Field f = Field::of_order(2);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 40; ++trial) {
        const auto a = random_tensor_subspace(f, 2, 2 + rng() % 2, rng);
        if (!satisfies_both(a) || a.dim() == 0) continue;
        ++checked;
        bool proper_satisfies = false;
        for (std::size_t k = 0; k < a.dim(); ++k)
            for (const auto& s : a.flat().subspaces(k)) {
                std::vector<oracle::V> vs;
                for (const auto& v : s.vectors()) vs.push_back(v);
                if (oracle::cover_b(f, a.m(), a.n(), vs) && oracle::cover_c(f, a.m(), a.n(), vs)) proper_satisfies = true;
            }
        CHECK(check_minimal(a).minimal == !proper_satisfies);
    }
    CHECK(checked > 10);
}

TEST_CASE("no subspace below the bound satisfies both conditions (small oracle)") {
    for (auto [q, m, n] : {std::tuple{2u, 2u, 2u}, std::tuple{2u, 2u, 3u}, std::tuple{2u, 3u, 2u}, std::tuple{3u, 2u, 2u}}) {
        const Field f = Field::of_order(q);
        for (const auto& s : oracle::all_subspaces(f, m * n)) {
            std::vector<oracle::V> elems(s.begin(), s.end());
            // A spanning set is enough for the oracle's rank test.
            if (oracle::cover_b(f, m, n, elems) && oracle::cover_c(f, m, n, elems))
                CHECK(oracle::rank(f, elems) + 1 >= m + n);
        }
    }
}

TEST_CASE("to_bilinear translates the coverage conditions") {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    const auto p = predicates(to_bilinear(cross(f2, 2, 3)));
    CHECK(p.nondeg);
    CHECK(p.cond_b);
    CHECK(p.cond_c);

    const auto single = predicates(to_bilinear(TensorSubspace(f2, 2, 2, {Mat::unit(f2, 2, 2, 0, 0)})));
    CHECK(single.nondeg);
    CHECK_FALSE(single.cond_b);

    const auto at = predicates(to_bilinear(corner(f3, 3, 3, 2)));
    CHECK(at.nondeg);
    CHECK(at.cond_b);
    CHECK(at.cond_c);

    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 120; ++trial) {
        const auto a = random_tensor_subspace(f3, 1 + rng() % 3, 1 + rng() % 3, rng);
        const auto pr = predicates(to_bilinear(a));
        CHECK(pr.cond_b == satisfies_cond_b(a));
        CHECK(pr.cond_c == satisfies_cond_c(a));
        CHECK(pr.nondeg);
    }
}

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "soclelab/errors.hpp"
#include "soclelab/exactla.hpp"
#include "soclelab/limits.hpp"

using namespace soclelab;

namespace {

Mat random_mat(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::vector<Elem> e(r * c);
    for (auto& x : e) x = static_cast<Elem>(rng() % f.q());
    return Mat(f, r, c, e);
}

Subspace random_subspace(const Field& f, std::size_t n, std::mt19937_64& rng) {
    const std::size_t k = rng() % (n + 1);
    return Subspace::row_space(random_mat(f, k, n, rng));
}

}  // namespace

TEST_CASE("rref examples") {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    const Rref id = rref(Mat::identity(f2, 3));
    CHECK(id.rank() == 3);
    CHECK(id.reduced == Mat::identity(f2, 3));
    const Rref z = rref(Mat(f2, 2, 4));
    CHECK(z.rank() == 0);
    CHECK(z.reduced.is_zero());
    CHECK(rank(Mat::from_ints(f3, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples") {
    const Field f2 = Field::of_order(2);
    CHECK(kernel(Mat::identity(f2, 3)).dim() == 0);
    CHECK(kernel(Mat(f2, 3, 3)).dim() == 3);
    const Subspace k = kernel(Mat::from_ints(f2, {{1, 1, 0}}));
    CHECK(k.dim() == 2);
    CHECK(k.contains(Vec{1, 1, 0}));
}

TEST_CASE("subspace lattice examples") {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    const Subspace l1 = Subspace::span(f2, 2, {{1, 0}}), l2 = Subspace::span(f2, 2, {{0, 1}});
    CHECK((l1 + l2) == Subspace::full(f2, 2));
    const Subspace diag = Subspace::span(f2, 2, {{1, 1}});
    CHECK(Subspace::full(f2, 2).intersect(diag) == diag);
    const Subspace p1 = Subspace::span(f3, 3, {{1, 0, 0}, {0, 1, 0}});
    const Subspace p2 = Subspace::span(f3, 3, {{0, 1, 0}, {0, 0, 1}});
    CHECK(p1.intersect(p2).dim() == 1);
    CHECK(p1.intersect(p2).contains(Vec{0, 1, 0}));
    CHECK(p1.contains(p1.intersect(p2)));
    CHECK_FALSE(p1 == p2);
}

TEST_CASE("points and hyperplanes counts") {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    CHECK(Subspace::full(f2, 2).points().size() == 3);
    CHECK(Subspace::full(f3, 2).points().size() == 4);
    const Subspace plane = Subspace::span(f2, 3, {{1, 1, 0}, {0, 1, 1}});
    const auto pts = plane.points();
    CHECK(pts.size() == 3);
    for (const auto& p : pts) CHECK(plane.contains(p));
    CHECK(Subspace::full(f2, 2).hyperplanes().size() == 3);
    CHECK(Subspace::full(f3, 3).hyperplanes().size() == 13);
    const auto h1 = Subspace::span(f3, 3, {{1, 2, 0}}).hyperplanes();
    REQUIRE(h1.size() == 1);
    CHECK(h1[0].is_zero());
    CHECK_THROWS_AS(Subspace(f2, 3).points(), PreconditionError);
    CHECK_THROWS_AS(Subspace(f2, 3).hyperplanes(), PreconditionError);
}

TEST_CASE("every nonzero vector is proportional to exactly one point") {
    for (unsigned q : {2u, 3u, 4u}) {
        const Field f = Field::of_order(q);
        for (std::size_t d = 1; d <= 3; ++d) {
            const auto pts = projective_points(f, d);
            CHECK(pts.size() == (checked_pow(q, d) - 1) / (q - 1));
            for (const auto& v : oracle::all_vectors(f, d)) {
                if (!oracle::nonzero(v)) continue;
                int hits = 0;
                for (const auto& p : pts)
                    for (Elem s = 1; s < q; ++s)
                        if (oracle::scale(f, s, p) == v) ++hits;
                CHECK(hits == 1);
            }
        }
    }
}

TEST_CASE("subspace enumeration matches the span-closure oracle") {
    struct Case {
        unsigned q;
        std::size_t n;
        std::size_t expected;
    };
    for (const auto& c : {Case{2, 4, 67}, Case{3, 4, 212}, Case{2, 3, 16}, Case{4, 2, 7}}) {
        const Field f = Field::of_order(c.q);
        const auto oracle_set = oracle::all_subspaces(f, c.n);
        CHECK(oracle_set.size() == c.expected);
        std::set<std::set<oracle::V>> ours;
        std::size_t total = 0;
        for (std::size_t k = 0; k <= c.n; ++k) {
            const auto subs = enumerate_subspaces(f, c.n, k);
            CHECK(subs.size() == gaussian_binomial(c.q, static_cast<unsigned>(c.n), static_cast<unsigned>(k)));
            total += subs.size();
            for (const auto& s : subs) {
                CHECK(s.dim() == k);
                ours.insert(oracle::span_elements(f, c.n, s.vectors()));
            }
        }
        CHECK(total == c.expected);
        CHECK(ours == oracle_set);
    }
}

TEST_CASE("gaussian binomials") {
    CHECK(gaussian_binomial(2, 4, 2) == 35);
    CHECK(gaussian_binomial(3, 3, 1) == 13);
    CHECK(gaussian_binomial(2, 5, 0) == 1);
    CHECK(gaussian_binomial(2, 5, 6) == 0);
}

TEST_CASE("dimension formula on random pairs") {
    std::mt19937_64 rng(20240101);
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = 1 + rng() % 6;
            const Subspace a = random_subspace(f, n, rng), b = random_subspace(f, n, rng);
            const Subspace s = a + b, i = a.intersect(b);
            CHECK(a.dim() + b.dim() == s.dim() + i.dim());
            CHECK(s.contains(a));
            CHECK(a.contains(i));
            CHECK(b.contains(i));
            for (const auto& v : i.vectors()) CHECK(oracle::in_span(f, a.vectors(), v));
        }
    }
}

TEST_CASE("packed F_2 elimination agrees with the generic path") {
    std::mt19937_64 rng(7);
    const Field f2 = Field::of_order(2);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t r = 1 + rng() % 12, c = 1 + rng() % 150;
        const Mat m = random_mat(f2, r, c, rng);
        const Rref a = rref_generic(m), b = rref_packed(m);
        CHECK(a.reduced == b.reduced);
        CHECK(a.pivots == b.pivots);
        CHECK(a.rank() == oracle::rank(f2, [&] {
                  std::vector<oracle::V> rows;
                  for (std::size_t i = 0; i < r; ++i) rows.push_back(m.row_vec(i));
                  return rows;
              }()));
    }
}

TEST_CASE("kernel and rank agree with the oracle over larger fields") {
    std::mt19937_64 rng(99);
    for (unsigned q : {3u, 4u, 5u, 7u, 9u}) {
        const Field f = Field::of_order(q);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
            const Mat m = random_mat(f, r, c, rng);
            std::vector<oracle::V> rows;
            for (std::size_t i = 0; i < r; ++i) rows.push_back(m.row_vec(i));
            const std::size_t rk = oracle::rank(f, rows);
            CHECK(rank(m) == rk);
            const Subspace k = kernel(m);
            CHECK(k.dim() == c - rk);
            for (const auto& v : k.vectors()) CHECK_FALSE(oracle::nonzero(m.apply(v)));
        }
    }
}

TEST_CASE("canonical form: equal subspaces have identical bases") {
    std::mt19937_64 rng(3);
    const Field f = Field::of_order(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Subspace a = random_subspace(f, 5, rng);
        // Re-span from random combinations of the basis.
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < a.dim() + 2; ++i) {
            Vec c(a.dim());
            for (auto& x : c) x = static_cast<Elem>(rng() % 3);
            gens.push_back(a.dim() ? a.combine(c) : Vec(5, 0));
        }
        for (const auto& v : a.vectors()) gens.push_back(v);
        const Subspace b = Subspace::span(f, 5, gens);
        CHECK(a == b);
        CHECK(SubspaceHash{}(a) == SubspaceHash{}(b));
        CHECK(a.annihilator().annihilator() == a);
        CHECK(a.annihilator().dim() + a.dim() == 5);
    }
}

TEST_CASE("coordinates, image and column space") {
    const Field f = Field::of_order(5);
    const Subspace s = Subspace::span(f, 3, {{1, 2, 3}, {0, 1, 4}});
    const Vec v = {2, 0, 1};
    REQUIRE(s.contains(Vec{1, 2, 3}));
    const Vec w = s.combine(Vec{3, 4});
    CHECK(s.coordinates(w) == Vec{3, 4});
    const Mat m = Mat::from_ints(f, {{1, 0, 0}, {0, 0, 0}, {0, 0, 1}});
    CHECK(Subspace::column_space(m).dim() == 2);
    CHECK(Subspace::full(f, 3).image_under(m) == Subspace::column_space(m));
    CHECK(s.reduce(v).size() == 3);
}

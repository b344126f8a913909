#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "soclelab/errors.hpp"
#include "soclelab/strongness.hpp"
#include "soclelab/tensorcover.hpp"

using namespace soclelab;

namespace {

Mat column(const Field& f, std::vector<long long> v) {
    std::vector<std::vector<long long>> rows;
    for (auto x : v) rows.push_back({x});
    return Mat::from_ints(f, rows);
}

// S = k^3, B = k^3, T = k, C = k^2, the i-th factor of A sending 1 to the i-th line of C.
BilinearSystem three_lines() {
    const Field f = Field::of_order(2);
    std::vector<SystemComponent> comps;
    const std::vector<std::vector<long long>> lines = {{1, 0}, {0, 1}, {1, 1}};
    for (std::size_t i = 0; i < 3; ++i) comps.push_back({0, i, {column(f, lines[i])}});
    return BilinearSystem(f, {1, 1, 1}, {1}, {1, 1, 1}, {2}, comps);
}

std::vector<Mat> all_maps_basis(const Field& f, std::size_t rows, std::size_t cols) {
    std::vector<Mat> out;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out.push_back(Mat::unit(f, rows, cols, r, c));
    return out;
}

std::vector<Mat> random_part(const Field& f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    const std::size_t k = 1 + rng() % 2;
    std::vector<Mat> out;
    for (std::size_t i = 0; i < k; ++i) {
        Mat m(f, rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<Elem>(rng() % f.q()));
        out.push_back(m);
    }
    return out;
}

// Brute force over every element of every part and every family of proper subspaces.
bool oracle_left_strong(const MapFamily& w, std::size_t n) {
    const Field& f = w.field;
    const std::size_t dim = w.codomain_dim;
    std::vector<std::set<oracle::V>> simple_images;  // element sets of 1-dim images
    for (const auto& part : w.parts) {
        const std::size_t dom = part.front().cols();
        for (const auto& c : oracle::all_vectors(f, part.size())) {
            Mat m(f, dim, dom);
            for (std::size_t k = 0; k < part.size(); ++k) m = m + part[k].scaled(c[k]);
            std::vector<oracle::V> cols;
            for (std::size_t j = 0; j < dom; ++j) cols.push_back(m.col_vec(j));
            if (oracle::rank(f, cols) == 1) simple_images.push_back(oracle::span_elements(f, dim, cols));
        }
    }
    std::vector<std::set<oracle::V>> proper;
    for (const auto& s : oracle::all_subspaces(f, dim))
        if (s.size() < checked_pow(f.q(), dim)) proper.push_back(s);
    // Families of exactly min(n, |proper|) distinct members; smaller ones are subfamilies.
    const std::size_t k = std::min(n, proper.size());
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        bool escapes = false;
        for (const auto& img : simple_images) {
            bool inside = false;
            for (auto i : idx)
                inside = inside || std::includes(proper[i].begin(), proper[i].end(), img.begin(), img.end());
            if (!inside) {
                escapes = true;
                break;
            }
        }
        if (!escapes) return false;
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == proper.size() - k + pos - 1) --pos;
        if (pos == 0) return true;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

}  // namespace

TEST_CASE("three-lines system predicates") {
    const auto sys = three_lines();
    const auto p = predicates(sys);
    CHECK(p.nondeg);
    CHECK(p.cond_b);
    CHECK(p.cond_c);
    CHECK(verify_balanced(sys.expand()));
}

TEST_CASE("zero A") {
    const Field f = Field::of_order(2);
    const BilinearSystem sys(f, {1}, {1}, {2}, {1}, {});
    const auto p = predicates(sys);
    CHECK(p.nondeg);
    CHECK_FALSE(p.cond_b);
    CHECK_FALSE(p.cond_c);
    const auto sc = small_conditions(sys);
    CHECK(sc.mxs);
    CHECK(sc.either);
    CHECK(sc.pairs.empty());
}

TEST_CASE("dependent maps break nondegeneracy") {
    const Field f = Field::of_order(3);
    const BilinearSystem sys(f, {1}, {1}, {1}, {2}, {{0, 0, {column(f, {1, 2}), column(f, {2, 1})}}});
    const auto p = predicates(sys);
    CHECK_FALSE(p.nondeg);
    REQUIRE(p.nondeg_failure);
    CHECK(p.nondeg_failure->first == 0);
}

TEST_CASE("system construction errors") {
    const Field f = Field::of_order(2);
    CHECK_THROWS_AS(BilinearSystem(f, {1}, {1}, {1, 1}, {1}, {}), InputError);
    CHECK_THROWS_AS(BilinearSystem(f, {1}, {1}, {1}, {1}, {{0, 1, {column(f, {1})}}}), InputError);
    CHECK_THROWS_AS(BilinearSystem(f, {1}, {1}, {2}, {1}, {{0, 0, {column(f, {1})}}}), InputError);
    CHECK_THROWS_AS(BilinearSystem(f, {1}, {1}, {1}, {1}, {{0, 0, {column(f, {1})}}, {0, 0, {column(f, {1})}}}),
                    InputError);
}

TEST_CASE("three-lines Prop 4.1 report") {
    const auto r = prop41_check(three_lines());
    CHECK(r.lhs == 5);
    CHECK(r.rhs == 4);
    CHECK_FALSE(r.holds);
    CHECK(r.budget.n_t == 2);
    CHECK(r.budget.d_t == 3);
    CHECK(r.budget.l_s == 1);
    CHECK(r.budget.d_s == 1);
    CHECK(r.budget.l_t == 2);
    CHECK_FALSE(r.hypotheses.card_d);
    CHECK(r.hypotheses.nondeg);
    CHECK(r.hypotheses.cond_b);
    CHECK(r.hypotheses.cond_c);
    CHECK(r.hypotheses.small_either);
    CHECK(r.graph.chi() == 1);
    CHECK(r.length_a == 3);
}

TEST_CASE("cross space over F_3 satisfies the system inequality") {
    const Field f = Field::of_order(3);
    std::vector<Mat> basis{Mat::unit(f, 2, 2, 0, 0), Mat::unit(f, 2, 2, 0, 1), Mat::unit(f, 2, 2, 1, 0)};
    const auto r = prop41_check(to_bilinear(TensorSubspace(f, 2, 2, basis)));
    CHECK(r.lhs == 4);
    CHECK(r.rhs == 4);
    CHECK(r.holds);
}

TEST_CASE("three-lines strength analysis") {
    const auto sys = three_lines();
    CHECK(n_strong(left_family(sys, 0), Side::left, 2).strong);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto r = n_strong(block_family(sys, 0, i), Side::left, 1);
        CHECK_FALSE(r.strong);
        REQUIRE(r.blocking_family.size() == 1);
        CHECK(r.blocking_family[0].dim() == 1);
    }
    CHECK_FALSE(n_strong(left_family(sys, 0), Side::left, 3).strong);

    const auto u = union_split(left_family(sys, 0), Side::left, 2);
    CHECK(u.union_strong);
    REQUIRE(u.index);
    CHECK(*u.index == 0);
}

TEST_CASE("full map spaces are N-strong for N <= q") {
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (std::size_t x = 1; x <= 3; ++x)
            for (std::size_t y = 1; y <= 3; ++y) {
                const MapFamily w{f, x, y, {all_maps_basis(f, y, x)}};
                for (std::size_t n = 1; n <= q; ++n) {
                    CHECK(n_strong(w, Side::left, static_cast<double>(n)).strong);
                    CHECK(n_strong(w, Side::right, static_cast<double>(n)).strong);
                }
            }
    }
}

TEST_CASE("single parts and empty families") {
    const Field f = Field::of_order(2);
    const MapFamily empty{f, 2, 2, {}};
    CHECK_FALSE(n_strong(empty, Side::left, 0.5).strong);
    const MapFamily one{f, 2, 2, {{Mat::unit(f, 2, 2, 0, 0)}}};
    CHECK(n_strong(one, Side::left, 0.5).strong);
    CHECK(n_strong(one, Side::right, 0.5).strong);
    CHECK_FALSE(n_strong(one, Side::right, 1).strong);
    const auto u = union_split(one, Side::left, 1);
    CHECK_FALSE(u.union_strong);
    CHECK_FALSE(u.index);
    CHECK(n_strong(MapFamily{f, 1, 1, {{Mat::unit(f, 1, 1, 0, 0)}}}, Side::left, kInfiniteN).strong);
}

TEST_CASE("two full map spaces split at N = q") {
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        const MapFamily w{f, 2, 2, {all_maps_basis(f, 2, 2), all_maps_basis(f, 2, 2)}};
        const auto r = union_split(w, Side::left, q);
        CHECK(r.union_strong);
        REQUIRE(r.index);
        CHECK(n_strong(MapFamily{f, 2, 2, {w.parts[*r.index]}}, Side::left, q / 2.0).strong);
    }
}

TEST_CASE("Lemma 3.4 instances") {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    const auto a = no_union_cover(f2, 2, 2);
    CHECK(a.no_cover_by_proper);
    CHECK(a.no_cover_of_maximals);
    const auto b = no_union_cover(f3, 2, 3);
    CHECK(b.no_cover_by_proper);
    const auto c = no_union_cover(f2, 2, 3);
    CHECK_FALSE(c.no_cover_by_proper);
    CHECK(c.covering_family.size() == 3);
    for (unsigned q : {2u, 3u})
        for (std::size_t dim = 1; dim <= 3; ++dim)
            for (std::size_t n = 1; n <= q; ++n) {
                const auto r = no_union_cover(Field::of_order(q), dim, n);
                CHECK(r.no_cover_by_proper);
                CHECK(r.no_cover_of_maximals);
            }
}

TEST_CASE("maximal-family reduction agrees with all proper families") {
    std::mt19937_64 rng(21);
    const Field f = Field::of_order(2);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t y = 1 + rng() % 3, x = 1 + rng() % 2;
        MapFamily w{f, 0, y, {}};
        const std::size_t parts = 1 + rng() % 3;
        for (std::size_t p = 0; p < parts; ++p) w.parts.push_back(random_part(f, y, x, rng));
        for (std::size_t n : {1u, 2u, 3u}) {
            CAPTURE(trial);
            CAPTURE(n);
            CHECK(n_strong(w, Side::left, static_cast<double>(n)).strong == oracle_left_strong(w, n));
        }
    }
}

TEST_CASE("strength is monotone in N") {
    std::mt19937_64 rng(22);
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (int trial = 0; trial < 40; ++trial) {
            const std::size_t y = 1 + rng() % 3, x = 1 + rng() % 3;
            MapFamily w{f, x, y, {}};
            for (std::size_t p = 0; p < 1 + rng() % 4; ++p) w.parts.push_back(random_part(f, y, x, rng));
            for (Side side : {Side::left, Side::right}) {
                bool prev = true;
                for (double n : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) {
                    const bool s = n_strong(w, side, n).strong;
                    if (!prev) CHECK_FALSE(s);
                    prev = s;
                }
            }
        }
    }
}

TEST_CASE("union law on exhaustive small cases") {
    std::mt19937_64 rng(23);
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t y = 1 + rng() % 3, x = 1 + rng() % 3;
            MapFamily w{f, x, y, {}};
            for (std::size_t p = 0; p < 1 + rng() % 3; ++p) w.parts.push_back(random_part(f, y, x, rng));
            for (Side side : {Side::left, Side::right})
                for (double n : {1.0, 2.0, 3.0}) {
                    UnionSplitResult r;
                    CHECK_NOTHROW(r = union_split(w, side, n));
                    if (r.index) {
                        MapFamily single{f, x, y, {w.parts[*r.index]}};
                        CHECK(n_strong(single, side, n / w.parts.size()).strong);
                    }
                }
        }
    }
}

TEST_CASE("small conditions on random split systems") {
    std::mt19937_64 rng(24);
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (int trial = 0; trial < 25; ++trial) {
            const std::size_t ns = 1 + rng() % 2, nt = 1 + rng() % 2;
            std::vector<std::size_t> s, t, b, c;
            for (std::size_t i = 0; i < ns; ++i) {
                s.push_back(1 + rng() % 2);
                b.push_back(1 + rng() % 2);
            }
            for (std::size_t j = 0; j < nt; ++j) {
                t.push_back(1 + rng() % 2);
                c.push_back(1 + rng() % 2);
            }
            std::vector<SystemComponent> comps;
            for (std::size_t j = 0; j < nt; ++j)
                for (std::size_t i = 0; i < ns; ++i)
                    if (rng() % 3) comps.push_back({j, i, {random_part(f, c[j], b[i], rng).front()}});
            const BilinearSystem sys(f, s, t, b, c, comps);
            CHECK(verify_balanced(sys.expand()));
            const auto sc = small_conditions(sys);
            CHECK(sc.mxs);
            CHECK(sc.both);
            CHECK(sc.either);
        }
    }
}

TEST_CASE("expanded system dimensions") {
    const Field f = Field::of_order(2);
    const BilinearSystem sys(f, {2}, {3}, {1}, {2}, {{0, 0, {column(f, {1, 1})}}});
    const auto x = sys.expand();
    CHECK(x.dim_b == 2);
    CHECK(x.dim_c == 6);
    CHECK(x.dim_a == 6);
    CHECK(x.s_units.size() == 4);
    CHECK(x.t_units.size() == 9);
    CHECK(verify_balanced(x));
}

TEST_CASE("budget caps are reported") {
    const Field f = Field::of_order(3);
    const MapFamily w{f, 3, 3, {all_maps_basis(f, 3, 3)}};
    Limits tight;
    tight.combinations = 5;
    CHECK_THROWS_AS(n_strong(w, Side::left, 3, tight), BudgetExceeded);
    Limits tiny;
    tiny.elements = 3;
    const BilinearSystem sys(f, {1}, {1}, {2}, {2}, {{0, 0, all_maps_basis(f, 2, 2)}});
    CHECK_THROWS_AS(small_conditions(sys, tiny), BudgetExceeded);
}

TEST_CASE("relative strength") {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    const MapFamily line{f2, 1, 2, {{column(f2, {1, 0})}}};
    CHECK(relative_n_strong(line, Subspace::span(f2, 2, {{1, 0}}), 1));
    CHECK_FALSE(relative_n_strong(line, Subspace::span(f2, 2, {{0, 1}}), 1));
    CHECK(relative_n_strong(line, Subspace::full(f2, 2), 0));
    CHECK_FALSE(relative_n_strong(line, Subspace::full(f2, 2), 1));

    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (std::size_t y = 1; y <= 3; ++y) {
            const MapFamily w{f, 2, y, {all_maps_basis(f, y, 2)}};
            for (std::size_t k = 1; k <= y; ++k)
                for (const auto& yp : enumerate_subspaces(f, y, k))
                    for (std::size_t n = 0; n < q; ++n) CHECK(relative_n_strong(w, yp, static_cast<double>(n)));
        }
    }

    // Every simple submodule receives a map and q >= N.
    const auto sys = three_lines();
    CHECK(relative_n_strong(left_family(sys, 0), Subspace::full(f2, 2), 2));
    CHECK_FALSE(relative_n_strong(left_family(sys, 0), Subspace::full(f2, 2), 3));
    const MapFamily three{f3, 1, 2, {{column(f3, {1, 0})}, {column(f3, {0, 1})}, {column(f3, {1, 1})}, {column(f3, {1, 2})}}};
    CHECK(relative_n_strong(three, Subspace::full(f3, 2), 3));
    CHECK_THROWS_AS(relative_n_strong(three, Subspace(f3, 2), 1), PreconditionError);
}

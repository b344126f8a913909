#include "doctest.h"
#include "oracles.hpp"
#include "soclelab/gallery.hpp"

using namespace soclelab;

namespace {

using Elements = std::set<oracle::V>;

std::vector<oracle::V> flat_basis(const TensorSubspace& a) {
    std::vector<oracle::V> out;
    for (const auto& b : a.basis()) out.push_back(b.entries());
    return out;
}

// Rank-one coverage of both factors, with membership looked up in an element set.
bool covers_both(const Field& f, std::size_t m, std::size_t n, const Elements& a) {
    const auto bs = oracle::all_vectors(f, m), cs = oracle::all_vectors(f, n);
    auto side = [&](const std::vector<oracle::V>& xs, const std::vector<oracle::V>& ys, bool left) {
        for (const auto& x : xs) {
            if (!oracle::nonzero(x)) continue;
            bool found = false;
            for (const auto& y : ys)
                if (oracle::nonzero(y) && a.count(left ? oracle::tensor(f, x, y) : oracle::tensor(f, y, x))) {
                    found = true;
                    break;
                }
            if (!found) return false;
        }
        return true;
    };
    return side(bs, cs, true) && side(cs, bs, false);
}

Vec unit_vec(std::size_t d, std::size_t i) {
    Vec v(d, 0);
    v[i] = 1;
    return v;
}

// Index of the matrix unit e_ij inside a matrix basis.
std::size_t unit_index(const Algebra& r, std::size_t i, std::size_t j) {
    const auto& basis = *r.matrix_basis();
    const std::size_t n = basis[0].rows();
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (basis[k] == Mat::unit(r.field(), n, n, i, j)) return k;
    FAIL("matrix unit missing");
    return 0;
}

Subspace units_span(const Algebra& r, const std::vector<std::pair<std::size_t, std::size_t>>& units) {
    std::vector<Vec> vs;
    for (auto [i, j] : units) vs.push_back(unit_vec(r.dim(), unit_index(r, i, j)));
    return Subspace::span(r.field(), r.dim(), vs);
}

Elements elements(const Subspace& s) { return oracle::span_elements(s.field(), s.ambient_dim(), s.vectors()); }

// {x : j x = 0 for all j in J} (left) or {x : x j = 0} (right), J given by its elements.
Elements oracle_socle(const Algebra& r, const Elements& rad, bool left) {
    const Field& f = r.field();
    Elements out;
    for (const auto& x : oracle::all_vectors(f, r.dim())) {
        bool ok = true;
        for (const auto& j : rad) {
            const auto p = left ? oracle::alg_mul(f, r.dim(), r.structure_constants(), j, x)
                                : oracle::alg_mul(f, r.dim(), r.structure_constants(), x, j);
            if (oracle::nonzero(p)) {
                ok = false;
                break;
            }
        }
        if (ok) out.insert(x);
    }
    return out;
}

oracle::V alg(const Algebra& r, const oracle::V& a, const oracle::V& b) {
    return oracle::alg_mul(r.field(), r.dim(), r.structure_constants(), a, b);
}

}  // namespace

TEST_CASE("cross spaces") {
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (std::size_t m = 1; m <= 3; ++m)
            for (std::size_t n = 1; n <= 3; ++n) {
                const TensorSubspace a = make_cross(m, n, f);
                CHECK(a.dim() == m + n - 1);
                CHECK(oracle::cover_b(f, m, n, flat_basis(a)));
                CHECK(oracle::cover_c(f, m, n, flat_basis(a)));
            }
    }
    const Field f2 = Field::of_order(2);
    CHECK(make_cross(2, 2, f2).dim() == 3);
    CHECK(make_cross(1, 1, Field::of_order(3)).dim() == 1);
    const TensorSubspace big = make_cross(3, 4, f2);
    CHECK(big.dim() == 6);
    CHECK(satisfies_both(big));

    const Field f3 = Field::of_order(3);
    const TensorSubspace custom = make_cross(2, 3, f3, Vec{1, 2}, Vec{0, 1, 1});
    CHECK(custom.dim() == 4);
    CHECK(custom.contains(outer(f3, Vec{1, 2}, Vec{1, 0, 0})));
    CHECK(custom.contains(outer(f3, Vec{0, 1}, Vec{0, 1, 1})));
    CHECK(oracle::cover_b(f3, 2, 3, flat_basis(custom)));
    CHECK_THROWS_AS(make_cross(2, 2, f3, Vec{0, 0}), InputError);
    CHECK_THROWS_AS(make_cross(0, 2, f3), InputError);
}

TEST_CASE("corner family") {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t n = 1; n <= 3; ++n) {
            CHECK(make_corner_family(m, n, 1, f2).flat() == make_cross(m, n, f2).flat());
            for (std::size_t t = 1; t <= std::min(m, n); ++t) {
                const TensorSubspace a = make_corner_family(m, n, t, f3);
                CHECK(a.dim() == t * (m + n - t) - (t - 1));
                // Support and diagonal pattern, re-checked entrywise on every basis matrix.
                for (const auto& b : a.basis())
                    for (std::size_t i = 0; i < m; ++i)
                        for (std::size_t j = 0; j < n; ++j) {
                            if (i >= t && j >= t) CHECK(b.at(i, j) == 0);
                            if (i == j && i < t) CHECK(b.at(i, j) == b.at(0, 0));
                        }
                CHECK(oracle::cover_b(f3, m, n, flat_basis(a)));
                CHECK(oracle::cover_c(f3, m, n, flat_basis(a)));
            }
        }
    CHECK_THROWS_AS(make_corner_family(3, 3, 0, f2), InputError);
    CHECK_THROWS_AS(make_corner_family(2, 3, 3, f2), InputError);
}

TEST_CASE("corner family minimality against a hyperplane oracle") {
    const Field f3 = Field::of_order(3), f2 = Field::of_order(2);
    const TensorSubspace a = make_corner_family(3, 3, 2, f3);
    const auto hyper = a.flat().hyperplanes();
    const std::uint64_t expected = (checked_pow(3, static_cast<unsigned>(a.dim())) - 1) / 2;
    CHECK(hyper.size() == expected);
    bool some_cover = false;
    for (const auto& h : hyper) {
        CHECK(a.flat().contains(h));
        if (covers_both(f3, 3, 3, elements(h))) some_cover = true;
    }
    CHECK_FALSE(some_cover);
    CHECK(check_minimal(a).minimal);

    const TensorSubspace b = make_corner_family(3, 3, 3, f2);
    const MinimalityResult r = check_minimal(b);
    CHECK_FALSE(r.minimal);
    REQUIRE(r.violating_hyperplane);
    CHECK(r.violating_hyperplane->dim() + 1 == b.dim());
    CHECK(b.flat().contains(r.violating_hyperplane->flat()));
    CHECK(covers_both(f2, 3, 3, elements(r.violating_hyperplane->flat())));
}

TEST_CASE("triangular algebras") {
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (std::size_t n = 1; n <= 4; ++n) {
            CAPTURE(n);
            const Algebra r = make_triangular(n, f);
            CHECK(r.dim() == n * (n + 1) / 2);
            std::vector<std::pair<std::size_t, std::size_t>> strict, top, last;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) strict.push_back({i, j});
            for (std::size_t j = 0; j < n; ++j) top.push_back({0, j});
            for (std::size_t i = 0; i < n; ++i) last.push_back({i, n - 1});
            CHECK(radical(r) == units_span(r, strict));
            const Socles s = socles(r);
            CHECK(s.left == units_span(r, top));
            CHECK(s.right == units_span(r, last));
            CHECK(s.two_sided == units_span(r, {{0, n - 1}}));
            CHECK(r.certificate().blocks.size() == n);
            CHECK(r.certificate().split);
        }
    }
    // The algebra of 1 x 1 triangular matrices is the field.
    const Algebra one = make_triangular(1, Field::of_order(2));
    CHECK(one.dim() == 1);
    CHECK(radical(one).dim() == 0);
}

TEST_CASE("triangular socles against brute force") {
    for (unsigned q : {2u, 3u})
        for (std::size_t n = 2; n <= 3; ++n)
            for (bool scalar : {false, true}) {
                CAPTURE(q);
                CAPTURE(n);
                CAPTURE(scalar);
                const Algebra r = make_triangular(n, Field::of_order(q), scalar);
                const auto rad = oracle::radical_nil_ideal(r.field(), r.dim(), r.structure_constants());
                CHECK(elements(radical(r)) == rad);
                const Socles s = socles(r);
                const Elements left = oracle_socle(r, rad, true), right = oracle_socle(r, rad, false);
                Elements both;
                std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                                      std::inserter(both, both.begin()));
                CHECK(elements(s.left) == left);
                CHECK(elements(s.right) == right);
                CHECK(elements(s.two_sided) == both);
            }
}

TEST_CASE("scalar-diagonal triangular algebras") {
    const Field f3 = Field::of_order(3);
    const Algebra r = make_triangular(2, f3, true);
    CHECK(r.dim() == 2);
    CHECK(r.certificate().blocks.size() == 1);
    CHECK(is_split_local(r));
    CHECK(socles(r).two_sided == units_span(r, {{0, 1}}));
    CHECK(socle_is_central(r));
    const Algebra r3 = make_triangular(3, Field::of_order(2), true);
    CHECK(r3.dim() == 4);
    CHECK(is_split_local(r3));
    CHECK(socles(r3).two_sided == units_span(r3, {{0, 2}}));
}

TEST_CASE("full matrix algebras") {
    for (unsigned q : {2u, 3u})
        for (std::size_t n = 1; n <= 3; ++n) {
            const Algebra r = make_full_matrix(n, Field::of_order(q));
            CHECK(r.dim() == n * n);
            CHECK(radical(r).dim() == 0);
            const Subspace soc = socles(r).two_sided;
            CHECK(soc.dim() == n * n);
            CHECK(bimodule_length(r, soc) == 1);
        }
}

TEST_CASE("truncated polynomial and square-zero algebras") {
    const Field f3 = Field::of_order(3);
    for (std::size_t k = 1; k <= 4; ++k) {
        const Algebra r = make_truncated_polynomial(f3, k);
        CHECK(r.dim() == k);
        // x^i x^j = x^{i+j}, zero past k - 1.
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t l = 0; l < k; ++l) CHECK(r.mult(i, j, l) == (i + j == l ? 1 : 0));
        const auto rad = oracle::radical_nil_ideal(f3, k, r.structure_constants());
        CHECK(elements(radical(r)) == rad);
        CHECK(socles(r).two_sided.dim() == 1);
    }
    const Field f2 = Field::of_order(2);
    for (std::size_t s = 1; s <= 3; ++s) {
        const Algebra r = make_square_zero(f2, s);
        CHECK(r.dim() == s + 1);
        CHECK(elements(radical(r)) == oracle::radical_nil_ideal(f2, s + 1, r.structure_constants()));
        CHECK(socles(r).two_sided.dim() == s);
        CHECK(is_split_local(r));
    }
}

TEST_CASE("twisted truncated rings") {
    for (unsigned p : {2u, 3u})
        for (unsigned d : {1u, 2u})
            for (std::size_t n = 1; n <= 4; ++n) {
                CAPTURE(p);
                CAPTURE(d);
                CAPTURE(n);
                const Algebra r = make_twisted_truncated(p, d, n);
                CHECK(r.dim() == d * (n + 1));
                CHECK(r.field().q() == p);
                auto e = [&](std::size_t i, std::size_t j) { return oracle::V(unit_vec(r.dim(), j * d + i)); };
                const oracle::V x = e(0, 1);
                // x^n != 0 = x^{n+1}
                oracle::V power = e(0, 0);
                for (std::size_t k = 0; k < n; ++k) power = alg(r, power, x);
                CHECK(oracle::nonzero(power));
                CHECK_FALSE(oracle::nonzero(alg(r, power, x)));
                // x a = a^p x for every a in K.
                for (const auto& c : oracle::all_vectors(r.field(), d)) {
                    oracle::V a(r.dim(), 0);
                    for (std::size_t i = 0; i < d; ++i) a[i] = c[i];
                    oracle::V frob = e(0, 0);
                    for (unsigned k = 0; k < p; ++k) frob = alg(r, frob, a);
                    CHECK(alg(r, x, a) == alg(r, frob, x));
                }
                // Centrality of the socle K x^n, checked against every basis element.
                const Subspace soc = socles(r).two_sided;
                CHECK(soc.dim() == d);
                bool central = true;
                for (const auto& s : soc.vectors())
                    for (std::size_t b = 0; b < r.dim(); ++b) {
                        const oracle::V eb = unit_vec(r.dim(), b);
                        if (alg(r, s, eb) != alg(r, eb, s)) central = false;
                    }
                CHECK(central == (n % d == 0));
                CHECK(socle_is_central(r) == central);
                CHECK(r.certificate().split == (d == 1));
            }
    CHECK(socle_is_central(make_twisted_truncated(2, 2, 2)));
    CHECK_FALSE(socle_is_central(make_twisted_truncated(2, 2, 1)));
}

TEST_CASE("small field systems") {
    struct Case {
        unsigned q;
        std::size_t d;
    };
    for (Case c : {Case{2, 2}, Case{3, 2}, Case{2, 3}}) {
        CAPTURE(c.q);
        CAPTURE(c.d);
        const Field f = Field::of_order(c.q);
        const BilinearSystem sys = make_small_field_system(f, c.d);
        const std::size_t points = (checked_pow(c.q, static_cast<unsigned>(c.d)) - 1) / (c.q - 1);
        CHECK(sys.s_block_count() == points);
        CHECK(sys.t_block_count() == 1);
        CHECK(sys.c_mult()[0] == c.d);
        CHECK(sys.components().size() == points);

        // Each component is a rank-one map onto a different line, and every line occurs.
        std::set<Elements> lines;
        for (const auto& comp : sys.components()) {
            REQUIRE(comp.maps.size() == 1);
            const Mat& m = comp.maps[0];
            oracle::V col;
            for (std::size_t i = 0; i < m.rows(); ++i) col.push_back(m.at(i, 0));
            CHECK(oracle::nonzero(col));
            lines.insert(oracle::span_elements(f, c.d, {col}));
        }
        CHECK(lines.size() == points);

        const Prop41Report rep = prop41_check(sys);
        CHECK(rep.lhs == static_cast<long>(points + c.d));
        CHECK(rep.rhs == static_cast<long>(points + 1));
        CHECK_FALSE(rep.holds);
        CHECK(rep.hypotheses.nondeg);
        CHECK(rep.hypotheses.cond_b);
        CHECK(rep.hypotheses.cond_c);
        CHECK(rep.small.mxs);
        CHECK_FALSE(rep.hypotheses.card_d);
        CHECK(rep.graph.chi() == 1);
    }
    const Prop41Report f2 = prop41_check(make_small_field_system(Field::of_order(2), 2));
    CHECK(f2.lhs == 5);
    CHECK(f2.rhs == 4);
    CHECK(f2.budget.n_t == 2);
    CHECK(f2.budget.d_t == 3);
    CHECK(f2.budget.l_s == 1);
    CHECK_THROWS_AS(make_small_field_system(Field::of_order(2), 1), InputError);
    Limits tiny;
    tiny.combinations = 2;
    tiny.elements = 2;
    tiny.subspaces = 2;
    CHECK_THROWS_AS(make_small_field_system(Field::of_order(3), 3, tiny), BudgetExceeded);
}

TEST_CASE("the 4 x 4 example") {
    const auto [r, m] = make_4x4_example();
    const Field& f = r.field();
    CHECK(r.dim() == 6);
    CHECK(r.certificate().blocks.size() == 3);
    const auto rad = oracle::radical_nil_ideal(f, 6, r.structure_constants());
    CHECK(elements(radical(r)) == rad);
    CHECK(radical(r) == units_span(r, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(radical_bruteforce(r) == radical(r));

    // Rebuild M from matrix units: left multiplication on span{e11, e12, e13, e21, e32, e43}
    // modulo e11 + e12 + e13, and compare module invariants computed by enumeration.
    const std::vector<std::pair<std::size_t, std::size_t>> span_units{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 1}, {3, 2}};
    auto coords = [&](const Mat& x) {
        oracle::V v;
        for (auto [i, j] : span_units) v.push_back(x.at(i, j));
        Mat check(f, 4, 4);
        for (std::size_t k = 0; k < span_units.size(); ++k)
            if (v[k]) check = check + Mat::unit(f, 4, 4, span_units[k].first, span_units[k].second);
        REQUIRE(check == x);
        return v;
    };
    const Elements kill = oracle::span_elements(f, 6, {{1, 1, 1, 0, 0, 0}});
    const auto& basis = *r.matrix_basis();
    // The annihilator of M: ring elements sending every element of the span into `kill`.
    std::size_t annihilating = 0;
    for (const auto& a : oracle::all_vectors(f, 6)) {
        Mat ra(f, 4, 4);
        for (std::size_t i = 0; i < 6; ++i)
            if (a[i]) ra = ra + basis[i];
        bool kills = true;
        for (auto [i, j] : span_units)
            if (!kill.count(coords(ra * Mat::unit(f, 4, 4, i, j)))) kills = false;
        if (kills) ++annihilating;
    }
    CHECK(annihilating == 1);  // faithful

    const TopSocle ts = top_socle(m);
    CHECK(m.dim() == 5);
    CHECK(ts.top_length == 3);
    CHECK(ts.socle_length == 2);
    CHECK(ts.jm == ts.soc);
    CHECK(ts.soc.dim() == 2);
    CHECK(minimal_faithful(m).minimal());

    const Subspace soc = socles(r).two_sided;
    CHECK(bimodule_length(r, soc) == 3);
    const SocleGraph g = socle_graph(r);
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 3);
    CHECK(g.chi() == 1);
    const ModuleReport rep = main_check(m);
    CHECK(rep.lhs == 5);
    CHECK(rep.rhs == 4);
    CHECK_FALSE(rep.holds);
}

TEST_CASE("catalogue") {
    CHECK_THROWS_AS(make_number_field_example(), OutOfScope);
    const auto list = gallery_list();
    std::set<std::string> names;
    for (const auto& e : list) names.insert(e.name);
    for (const char* n : {"cross", "corner", "triangular", "full-matrix", "truncated", "square-zero", "twisted",
                          "small-field-system", "4x4", "number-field"})
        CHECK(names.count(n) == 1);
    const auto algebras = gallery_algebras();
    CHECK(algebras.size() >= 40);
    for (const auto& a : algebras) {
        CAPTURE(a.name);
        CHECK(a.algebra.has_certificate());
        CHECK(a.algebra.is_two_sided_ideal(radical(a.algebra)));
    }
}

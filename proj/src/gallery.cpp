#include "soclelab/gallery.hpp"

#include <sstream>

namespace soclelab {

namespace {

Vec unit_vec(std::size_t d, std::size_t i) {
    Vec v(d, 0);
    v.at(i) = 1;
    return v;
}

BlockCertificate scalar_block(std::size_t d, std::size_t idx) { return {unit_vec(d, idx), 1, {unit_vec(d, idx)}}; }

std::string field_name(const Field& f) { return "F_" + std::to_string(f.q()); }

void expect(bool ok, const std::string& what) {
    if (!ok) throw TheoremViolation("gallery self-check failed: " + what);
}

}  // namespace

TensorSubspace make_cross(std::size_t m, std::size_t n, const Field& field, std::optional<Vec> b, std::optional<Vec> c) {
    if (m == 0 || n == 0) throw InputError("cross space needs m, n >= 1");
    const Vec bv = b ? *b : unit_vec(m, 0);
    const Vec cv = c ? *c : unit_vec(n, 0);
    if (bv.size() != m || cv.size() != n || is_zero(bv) || is_zero(cv))
        throw InputError("cross space needs nonzero b in F_q^m and c in F_q^n");
    std::vector<Vec> flat;
    for (std::size_t i = 0; i < m; ++i) flat.push_back(outer(field, unit_vec(m, i), cv).entries());
    for (std::size_t j = 0; j < n; ++j) flat.push_back(outer(field, bv, unit_vec(n, j)).entries());
    TensorSubspace a = TensorSubspace::from_flat(m, n, Subspace::span(field, m * n, flat));
    expect(a.dim() == m + n - 1, "cross space dimension");
    return a;
}

TensorSubspace make_corner_family(std::size_t m, std::size_t n, std::size_t t, const Field& field) {
    if (t < 1 || t > std::min(m, n)) throw InputError("corner family needs 1 <= t <= min(m, n)");
    std::vector<Mat> basis;
    Mat diag(field, m, n);
    for (std::size_t i = 0; i < t; ++i) diag.set(i, i, 1);
    basis.push_back(diag);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((i < t || j < t) && !(i == j && i < t)) basis.push_back(Mat::unit(field, m, n, i, j));
    TensorSubspace a(field, m, n, std::move(basis));
    expect(a.dim() == t * (m + n - t) - (t - 1), "corner family dimension");
    expect(satisfies_both(a), "corner family coverage conditions");
    return a;
}

Algebra make_triangular(std::size_t n, const Field& field, bool scalar_diagonal) {
    if (n == 0) throw InputError("triangular algebra needs n >= 1");
    std::vector<Mat> basis;
    std::vector<bool> radical_member;
    if (scalar_diagonal) {
        basis.push_back(Mat::identity(field, n));
        radical_member.push_back(false);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (scalar_diagonal && i == j) continue;
            basis.push_back(Mat::unit(field, n, n, i, j));
            radical_member.push_back(i < j);
        }
    const std::size_t d = basis.size();
    Certificate cert{Subspace(field, d), {}, true};
    std::vector<Vec> rad;
    for (std::size_t k = 0; k < d; ++k) {
        if (radical_member[k]) rad.push_back(unit_vec(d, k));
        else cert.blocks.push_back(scalar_block(d, k));
    }
    cert.radical = Subspace::span(field, d, rad);
    return Algebra::from_matrix_basis(std::move(basis), std::move(cert));
}

Algebra make_full_matrix(std::size_t n, const Field& field) {
    if (n == 0) throw InputError("matrix algebra needs n >= 1");
    std::vector<Mat> basis;
    BlockCertificate block{Vec(n * n, 0), n, {}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            basis.push_back(Mat::unit(field, n, n, i, j));
            block.matrix_units.push_back(unit_vec(n * n, i * n + j));
        }
    for (std::size_t i = 0; i < n; ++i) block.idempotent[i * n + i] = 1;
    return Algebra::from_matrix_basis(std::move(basis), Certificate{Subspace(field, n * n), {block}, true});
}

Algebra make_truncated_polynomial(const Field& field, std::size_t k) {
    if (k == 0) throw InputError("truncated polynomial ring needs k >= 1");
    std::vector<Elem> mult(k * k * k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; i + j < k; ++j) mult[(i * k + j) * k + i + j] = 1;
    std::vector<Vec> rad;
    for (std::size_t i = 1; i < k; ++i) rad.push_back(unit_vec(k, i));
    Certificate cert{Subspace::span(field, k, rad), {scalar_block(k, 0)}, true};
    return Algebra::from_structure_constants(field, k, std::move(mult), unit_vec(k, 0), std::move(cert));
}

Algebra make_square_zero(const Field& field, std::size_t r) {
    const std::size_t d = r + 1;
    std::vector<Elem> mult(d * d * d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        mult[(0 * d + i) * d + i] = 1;
        mult[(i * d + 0) * d + i] = 1;
    }
    std::vector<Vec> rad;
    for (std::size_t i = 1; i < d; ++i) rad.push_back(unit_vec(d, i));
    Certificate cert{Subspace::span(field, d, rad), {scalar_block(d, 0)}, true};
    return Algebra::from_structure_constants(field, d, std::move(mult), unit_vec(d, 0), std::move(cert));
}

Algebra make_twisted_truncated(unsigned p, unsigned d, std::size_t n) {
    if (d == 0 || n == 0) throw InputError("twisted truncated ring needs d, n >= 1");
    const Field base = Field::of_order(p);
    const Field big = Field::make(p, d);
    const std::size_t dim = d * (n + 1);
    const Elem alpha = d == 1 ? Elem{1} : big.from_coeffs(std::vector<unsigned>{0, 1});
    std::vector<Elem> powers(d);
    for (unsigned i = 0; i < d; ++i) powers[i] = big.pow(alpha, i);
    auto twist = [&](Elem a, std::size_t j) {
        for (std::size_t s = 0; s < j; ++s) a = big.frobenius(a);
        return a;
    };
    std::vector<Elem> mult(dim * dim * dim, 0);
    for (std::size_t j = 0; j <= n; ++j)
        for (unsigned i = 0; i < d; ++i)
            for (std::size_t l = 0; j + l <= n; ++l)
                for (unsigned k = 0; k < d; ++k) {
                    // (alpha^i x^j)(alpha^k x^l) = alpha^i theta^j(alpha^k) x^{j+l}
                    const Elem prod = big.mul(powers[i], twist(powers[k], j));
                    const auto coeffs = big.coeffs(prod);
                    const std::size_t row = ((j * d + i) * dim + (l * d + k)) * dim;
                    for (unsigned c = 0; c < d; ++c) mult[row + (j + l) * d + c] = static_cast<Elem>(coeffs[c]);
                }
    std::vector<Vec> rad;
    for (std::size_t idx = d; idx < dim; ++idx) rad.push_back(unit_vec(dim, idx));
    BlockCertificate block{unit_vec(dim, 0), 1, {}};
    if (d == 1) block.matrix_units = {unit_vec(dim, 0)};
    Certificate cert{Subspace::span(base, dim, rad), {block}, d == 1};
    Algebra r = Algebra::from_structure_constants(base, dim, std::move(mult), unit_vec(dim, 0), std::move(cert));
    const Subspace soc = socles(r).two_sided;
    expect(soc.dim() == d, "twisted ring socle is K x^n");
    expect(socle_is_central(r) == (n % d == 0), "twisted ring socle centrality");
    return r;
}

BilinearSystem make_small_field_system(const Field& field, std::size_t d, const Limits& limits) {
    if (d < 2) throw InputError("small-field system needs d >= 2");
    const std::uint64_t count = (checked_pow(field.q(), static_cast<unsigned>(d)) - 1) / (field.q() - 1);
    if (count > limits.elements) throw BudgetExceeded("small-field system has too many components");
    const auto points = projective_points(field, d);
    std::vector<SystemComponent> comps;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Mat map(field, d, 1);
        for (std::size_t r = 0; r < d; ++r) map.set(r, 0, points[i][r]);
        comps.push_back({0, i, {map}});
    }
    const std::vector<std::size_t> ones(points.size(), 1);
    BilinearSystem sys(field, ones, {1}, ones, {d}, std::move(comps));
    const Prop41Report rep = prop41_check(sys, limits);
    expect(rep.hypotheses.nondeg && rep.hypotheses.cond_b && rep.hypotheses.cond_c, "small-field system predicates");
    expect(rep.small.mxs, "small-field system is split");
    expect(!rep.hypotheses.card_d, "small-field system fails the cardinality condition");
    expect(!rep.holds, "small-field system violates the inequality");
    return sys;
}

RingAndModule make_4x4_example() {
    const Field f = Field::of_order(2);
    Mat e(f, 4, 4);
    e.set(0, 0, 1);
    e.set(1, 1, 1);
    std::vector<Mat> basis{e, Mat::unit(f, 4, 4, 0, 1), Mat::unit(f, 4, 4, 0, 2), Mat::unit(f, 4, 4, 0, 3),
                           Mat::unit(f, 4, 4, 2, 2), Mat::unit(f, 4, 4, 3, 3)};
    Certificate cert{Subspace::span(f, 6, {unit_vec(6, 1), unit_vec(6, 2), unit_vec(6, 3)}),
                     {scalar_block(6, 0), scalar_block(6, 4), scalar_block(6, 5)},
                     true};
    Algebra r = Algebra::from_matrix_basis(basis, std::move(cert));

    // Left multiplication on 4 x 3 matrices, coordinates row-major.
    std::vector<Mat> action;
    for (const auto& b : basis) {
        Mat a(f, 12, 12);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t l = 0; l < 4; ++l)
                if (b.at(i, l))
                    for (std::size_t j = 0; j < 3; ++j) a.set(i * 3 + j, l * 3 + j, b.at(i, l));
        action.push_back(std::move(a));
    }
    const ModuleRep big = ModuleRep::make(r, std::move(action));
    const Subspace span6 = Subspace::span(
        f, 12, {unit_vec(12, 0), unit_vec(12, 1), unit_vec(12, 2), unit_vec(12, 3), unit_vec(12, 7), unit_vec(12, 11)});
    const ModuleRep sub = big.restrict_to(span6);
    Vec top_row(12, 0);
    top_row[0] = top_row[1] = top_row[2] = 1;
    const Subspace kill = Subspace::span(f, 6, {span6.coordinates(top_row)});
    ModuleRep m = sub.quotient(kill);

    expect(m.dim() == 5, "module dimension");
    expect(radical(r).dim() == 3, "ring radical");
    expect(faithful(m).faithful, "module faithful");
    const TopSocle ts = top_socle(m);
    expect(ts.jm == ts.soc && ts.soc.dim() == 2, "J M = soc M of dimension 2");
    expect(ts.top_length == 3 && ts.socle_length == 2, "top 3, socle 2");
    return {std::move(r), std::move(m)};
}

void make_number_field_example() {
    throw OutOfScope(
        "the characteristic-zero example over Q(2^(1/3), omega) has no finite-field analogue here and is not implemented");
}

std::vector<GalleryEntry> gallery_list() {
    return {
        {"cross", "m n q", "B (x) c + b (x) C, dimension m + n - 1, both coverage conditions"},
        {"corner", "m n t q", "corner family A_t: first t rows and columns, equal first t diagonal entries"},
        {"triangular", "n q [scalar]", "upper triangular n x n matrices (scalar: scalar main diagonal)"},
        {"full-matrix", "n q", "Matr_n(F_q), its own socle, bimodule length 1"},
        {"truncated", "k q", "F_q[x]/(x^k)"},
        {"square-zero", "r q", "F_q[x_1..x_r]/(x_1..x_r)^2"},
        {"twisted", "p d n", "F_{p^d}[x; Frobenius]/(x^{n+1}) over F_p, socle central iff d | n"},
        {"small-field-system", "q d", "rank-one maps onto every line of k^d; the inequality fails"},
        {"4x4", "", "6-dimensional ring over F_2 and its 5-dimensional minimal faithful module"},
        {"number-field", "", "characteristic-zero example: out of scope"},
    };
}

std::vector<NamedAlgebra> gallery_algebras() {
    std::vector<NamedAlgebra> out;
    auto add = [&](std::string name, Algebra a) { out.push_back({std::move(name), std::move(a)}); };
    for (unsigned q : {2u, 3u, 4u}) {
        const Field f = Field::of_order(q);
        const std::string fn = field_name(f);
        for (std::size_t n = 1; n <= 4; ++n) {
            add("triangular(" + std::to_string(n) + "," + fn + ")", make_triangular(n, f));
            add("triangular-scalar(" + std::to_string(n) + "," + fn + ")", make_triangular(n, f, true));
        }
        for (std::size_t n = 1; n <= (q == 2 ? 4u : 3u); ++n)
            add("full-matrix(" + std::to_string(n) + "," + fn + ")", make_full_matrix(n, f));
        for (std::size_t k = 1; k <= 5; ++k)
            add("truncated(" + std::to_string(k) + "," + fn + ")", make_truncated_polynomial(f, k));
        for (std::size_t r = 1; r <= 3; ++r)
            add("square-zero(" + std::to_string(r) + "," + fn + ")", make_square_zero(f, r));
    }
    for (unsigned p : {2u, 3u})
        for (unsigned d : {1u, 2u})
            for (std::size_t n = 1; n <= 4; ++n) {
                std::ostringstream os;
                os << "twisted(" << p << "," << d << "," << n << ")";
                add(os.str(), make_twisted_truncated(p, d, n));
            }
    add("4x4", make_4x4_example().ring);
    return out;
}

}  // namespace soclelab

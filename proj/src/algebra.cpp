#include "soclelab/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "soclelab/parallel.hpp"

namespace soclelab {

namespace {

using Kind = AlgebraRejected::Kind;

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
    std::ostringstream os;
    os << "(e" << i << ", e" << j << ", e" << k << ")";
    return os.str();
}

Vec sub_vec(const Field& f, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

Vec add_vec(const Field& f, const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

// a == b modulo the subspace j.
bool congruent(const Field& f, const Subspace& j, const Vec& a, const Vec& b) {
    return j.contains(sub_vec(f, a, b));
}

void check_coords(const Field& f, std::size_t d, const Vec& v, const std::string& what) {
    if (v.size() != d) throw AlgebraRejected(Kind::shape, what + " has the wrong length");
    for (Elem e : v)
        if (e >= f.q()) throw AlgebraRejected(Kind::shape, what + " has an entry outside the field");
}

// Stack the matrices of x -> b x (or x -> x b) over the basis b of s.
Mat stacked_action(const Algebra& r, const Subspace& s, bool left) {
    Mat out(r.field(), 0, r.dim());
    for (const auto& b : s.vectors()) out = out.vstack(left ? r.left_mult(b) : r.right_mult(b));
    return out;
}

bool is_nilpotent(const Algebra& r, const Subspace& s) {
    Subspace power = s;
    for (std::size_t k = 0; k <= r.dim() && !power.is_zero(); ++k) power = r.product(power, s);
    return power.is_zero();
}

Subspace sandwich(const Algebra& r, const Vec& left, const Subspace& x, const Vec& right) {
    std::vector<Vec> gens;
    for (const auto& v : x.vectors()) gens.push_back(r.multiply(r.multiply(left, v), right));
    return Subspace::span(r.field(), r.dim(), gens);
}

std::size_t blockwise(std::size_t dim, std::size_t denom, const char* what) {
    if (dim % denom != 0) {
        std::ostringstream os;
        os << what << ": block dimension " << dim << " is not a multiple of " << denom;
        throw TheoremViolation(os.str());
    }
    return dim / denom;
}

}  // namespace

Algebra Algebra::from_structure_constants(Field field, std::size_t dim, std::vector<Elem> mult, Vec one,
                                          std::optional<Certificate> cert) {
    if (dim == 0) throw AlgebraRejected(Kind::shape, "algebra dimension must be positive");
    if (mult.size() != dim * dim * dim)
        throw AlgebraRejected(Kind::shape, "structure constants must have dim^3 entries");
    for (Elem e : mult)
        if (e >= field.q()) throw AlgebraRejected(Kind::shape, "structure constant outside the field");
    check_coords(field, dim, one, "identity");
    Algebra a;
    a.field_ = std::move(field);
    a.dim_ = dim;
    a.mult_ = std::move(mult);
    a.one_ = std::move(one);
    a.verify_structure();
    if (cert) {
        a.verify_certificate(*cert);
        a.cert_ = std::move(cert);
    }
    return a;
}

Algebra Algebra::from_matrix_basis(std::vector<Mat> basis, std::optional<Certificate> cert) {
    if (basis.empty()) throw AlgebraRejected(Kind::shape, "matrix basis is empty");
    const Field f = basis.front().field();
    const std::size_t n = basis.front().rows();
    const std::size_t d = basis.size();
    Mat cols(f, n * n, d);
    for (std::size_t i = 0; i < d; ++i) {
        const Mat& b = basis[i];
        if (!(b.field() == f) || b.rows() != n || b.cols() != n)
            throw AlgebraRejected(Kind::shape, "matrix basis elements must be square of one size over one field", {i});
        for (std::size_t e = 0; e < n * n; ++e) cols.set(e, i, b.entries()[e]);
    }
    if (rank(cols) != d) throw AlgebraRejected(Kind::shape, "matrix basis is linearly dependent");

    std::vector<Elem> mult(d * d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Mat p = basis[i] * basis[j];
            const auto c = solve(cols, p.entries());
            if (!c) {
                std::ostringstream os;
                os << "span is not closed: e" << i << " * e" << j << " lies outside it";
                throw AlgebraRejected(Kind::not_closed, os.str(), {i, j});
            }
            std::copy(c->begin(), c->end(), mult.begin() + static_cast<std::ptrdiff_t>((i * d + j) * d));
        }
    const auto one = solve(cols, Mat::identity(f, n).entries());
    if (!one) throw AlgebraRejected(Kind::identity, "identity matrix is not in the span");

    Algebra a = from_structure_constants(f, d, std::move(mult), *one);
    a.matrix_basis_ = std::move(basis);
    if (cert) {
        a.verify_certificate(*cert);
        a.cert_ = std::move(cert);
    }
    return a;
}

const Certificate& Algebra::certificate() const {
    if (!cert_) throw PreconditionError("algebra carries no certificate");
    return *cert_;
}

const Certificate& Algebra::split_certificate() const {
    const Certificate& c = certificate();
    if (!c.split) throw PreconditionError("operation requires a split certificate (R/J a product of matrix algebras)");
    return c;
}

Algebra Algebra::with_certificate(Certificate cert) const {
    verify_certificate(cert);
    Algebra out = *this;
    out.cert_ = std::move(cert);
    return out;
}

Vec Algebra::basis_vector(std::size_t i) const {
    Vec v(dim_, 0);
    v.at(i) = 1;
    return v;
}

Vec Algebra::multiply(std::span<const Elem> a, std::span<const Elem> b) const {
    if (a.size() != dim_ || b.size() != dim_) throw PreconditionError("algebra element has the wrong length");
    Vec out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j] == 0) continue;
            const Elem s = field_.mul(a[i], b[j]);
            axpy(field_, out, s, std::span<const Elem>(mult_).subspan((i * dim_ + j) * dim_, dim_));
        }
    }
    return out;
}

Mat Algebra::left_mult(std::span<const Elem> a) const {
    if (a.size() != dim_) throw PreconditionError("algebra element has the wrong length");
    Mat m(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) {
                const Elem c = mult_[(i * dim_ + j) * dim_ + k];
                if (c) m.set(k, j, field_.add(m.at(k, j), field_.mul(a[i], c)));
            }
    }
    return m;
}

Mat Algebra::right_mult(std::span<const Elem> a) const {
    if (a.size() != dim_) throw PreconditionError("algebra element has the wrong length");
    Mat m(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) {
                const Elem c = mult_[(j * dim_ + i) * dim_ + k];
                if (c) m.set(k, j, field_.add(m.at(k, j), field_.mul(a[i], c)));
            }
    }
    return m;
}

Subspace Algebra::product(const Subspace& x, const Subspace& y) const {
    std::vector<Vec> gens;
    const auto xs = x.vectors(), ys = y.vectors();
    for (const auto& a : xs)
        for (const auto& b : ys) gens.push_back(multiply(a, b));
    return Subspace::span(field_, dim_, gens);
}

bool Algebra::is_two_sided_ideal(const Subspace& s) const {
    if (s.ambient_dim() != dim_) return false;
    for (const auto& x : s.vectors())
        for (std::size_t i = 0; i < dim_; ++i) {
            const Vec e = basis_vector(i);
            if (!s.contains(multiply(e, x)) || !s.contains(multiply(x, e))) return false;
        }
    return true;
}

void Algebra::verify_structure() const {
    const std::size_t d = dim_;
    std::vector<Vec> prod(d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            prod[i * d + j] = Vec(mult_.begin() + static_cast<std::ptrdiff_t>((i * d + j) * d),
                                  mult_.begin() + static_cast<std::ptrdiff_t>((i * d + j + 1) * d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                // (e_i e_j) e_k and e_i (e_j e_k), expanded through the stored products.
                Vec lhs(d, 0), rhs(d, 0);
                const Vec& ij = prod[i * d + j];
                const Vec& jk = prod[j * d + k];
                for (std::size_t l = 0; l < d; ++l) {
                    if (ij[l]) axpy(field_, lhs, ij[l], prod[l * d + k]);
                    if (jk[l]) axpy(field_, rhs, jk[l], prod[i * d + l]);
                }
                if (lhs != rhs) throw AlgebraRejected(Kind::non_associative, "associativity fails on " + triple(i, j, k), {i, j, k});
            }
    for (std::size_t i = 0; i < d; ++i) {
        const Vec e = basis_vector(i);
        if (multiply(one_, e) != e || multiply(e, one_) != e) {
            std::ostringstream os;
            os << "identity law fails on e" << i;
            throw AlgebraRejected(Kind::identity, os.str(), {i});
        }
    }
}

void Algebra::verify_certificate(const Certificate& c) const {
    auto bad = [](const std::string& what, std::vector<std::size_t> w = {}) {
        return AlgebraRejected(Kind::bad_certificate, "certificate: " + what, std::move(w));
    };
    const Subspace& j = c.radical;
    if (j.ambient_dim() != dim_ || !(j.field() == field_)) throw bad("radical lives in the wrong space");
    if (!is_two_sided_ideal(j)) throw bad("radical is not a two-sided ideal");
    if (!is_nilpotent(*this, j)) throw bad("radical is not nilpotent");
    if (c.blocks.empty()) throw bad("no blocks");

    Vec total(dim_, 0);
    std::size_t sum_sq = 0;
    for (std::size_t f = 0; f < c.blocks.size(); ++f) {
        const auto& b = c.blocks[f];
        check_coords(field_, dim_, b.idempotent, "block idempotent");
        const Vec& e = b.idempotent;
        if (j.contains(e)) throw bad("block idempotent vanishes modulo the radical", {f});
        if (!congruent(field_, j, multiply(e, e), e)) throw bad("block idempotent is not idempotent", {f});
        for (std::size_t i = 0; i < dim_; ++i) {
            const Vec r = basis_vector(i);
            if (!congruent(field_, j, multiply(e, r), multiply(r, e))) throw bad("block idempotent is not central", {f, i});
        }
        for (std::size_t g = 0; g < c.blocks.size(); ++g)
            if (g != f && !j.contains(multiply(e, c.blocks[g].idempotent)))
                throw bad("block idempotents are not orthogonal", {f, g});
        total = add_vec(field_, total, e);

        if (b.size == 0) throw bad("block size must be positive", {f});
        if (b.matrix_units.empty()) {
            if (c.split) throw bad("split certificate needs matrix units", {f});
            continue;
        }
        const std::size_t n = b.size;
        if (b.matrix_units.size() != n * n) throw bad("block needs size^2 matrix units", {f});
        for (const auto& u : b.matrix_units) check_coords(field_, dim_, u, "matrix unit");
        const Vec zero(dim_, 0);
        Vec diag(dim_, 0);
        for (std::size_t a1 = 0; a1 < n; ++a1) {
            diag = add_vec(field_, diag, b.unit(a1, a1));
            for (std::size_t b1 = 0; b1 < n; ++b1)
                for (std::size_t a2 = 0; a2 < n; ++a2)
                    for (std::size_t b2 = 0; b2 < n; ++b2) {
                        const Vec p = multiply(b.unit(a1, b1), b.unit(a2, b2));
                        const Vec& want = b1 == a2 ? b.unit(a1, b2) : zero;
                        if (!congruent(field_, j, p, want))
                            throw bad("matrix unit relation fails", {f, a1 * n + b1, a2 * n + b2});
                    }
        }
        if (!congruent(field_, j, diag, e)) throw bad("diagonal matrix units do not sum to the block idempotent", {f});
        sum_sq += n * n;
    }
    if (!congruent(field_, j, total, one_)) throw bad("block idempotents do not sum to 1");
    if (c.split && sum_sq + j.dim() != dim_) throw bad("split claim: sum of n_f^2 differs from dim R - dim J");
}

Subspace radical_bruteforce(const Algebra& r, const Limits& limits) {
    const Field& f = r.field();
    const std::size_t d = r.dim();
    const unsigned q = f.q();
    const std::uint64_t total = checked_pow(q, static_cast<unsigned>(d));
    if (total > limits.radical_elements) {
        std::ostringstream os;
        os << "radical oracle needs q^dim = " << total << " elements, cap " << limits.radical_elements;
        throw BudgetExceeded(os.str());
    }
    std::vector<std::uint64_t> place(d);
    for (std::size_t i = 0; i < d; ++i) place[i] = checked_pow(q, static_cast<unsigned>(i));

    // Units are the elements with invertible left multiplication.
    std::vector<char> unit(total);
    parallel_for(total, limits.threads, [&](std::size_t idx) {
        unit[idx] = rank(r.left_mult(vector_from_index(f, d, idx))) == d;
    });

    std::vector<char> in_radical(total, 0);
    parallel_for(total, limits.threads, [&](std::size_t xi) {
        const Vec x = vector_from_index(f, d, xi);
        std::vector<Vec> cols(d);
        for (std::size_t i = 0; i < d; ++i) cols[i] = r.multiply(r.basis_vector(i), x);
        // s = 1 - r x as r runs through all elements in odometer order.
        Vec s = r.one();
        std::uint64_t sidx = 0;
        for (std::size_t k = 0; k < d; ++k) sidx += s[k] * place[k];
        Vec digits(d, 0);
        for (std::uint64_t step = 0;; ++step) {
            if (!unit[sidx]) return;
            if (step + 1 == total) break;
            std::size_t pos = 0;
            while (digits[pos] == q - 1) {
                // digit rolls over from q-1 to 0: s -= (0 - (q-1)) * col
                const Elem delta = f.sub(0, static_cast<Elem>(q - 1));
                for (std::size_t k = 0; k < d; ++k) {
                    if (!cols[pos][k]) continue;
                    const Elem old = s[k];
                    s[k] = f.sub(s[k], f.mul(delta, cols[pos][k]));
                    sidx = sidx - old * place[k] + s[k] * place[k];
                }
                digits[pos] = 0;
                ++pos;
            }
            const Elem delta = f.sub(static_cast<Elem>(digits[pos] + 1), digits[pos]);
            for (std::size_t k = 0; k < d; ++k) {
                if (!cols[pos][k]) continue;
                const Elem old = s[k];
                s[k] = f.sub(s[k], f.mul(delta, cols[pos][k]));
                sidx = sidx - old * place[k] + s[k] * place[k];
            }
            ++digits[pos];
        }
        in_radical[xi] = 1;
    });

    std::vector<Vec> members;
    for (std::uint64_t i = 0; i < total; ++i)
        if (in_radical[i]) members.push_back(vector_from_index(f, d, i));
    const Subspace j = Subspace::span(f, d, members);
    if (checked_pow(q, static_cast<unsigned>(j.dim())) != members.size())
        throw TheoremViolation("quasi-regular elements do not form a subspace");
    if (!r.is_two_sided_ideal(j)) throw TheoremViolation("quasi-regular elements do not form a two-sided ideal");
    if (!is_nilpotent(r, j)) throw TheoremViolation("quasi-regular ideal is not nilpotent");
    return j;
}

Subspace radical(const Algebra& r, const Limits& limits) {
    if (r.has_certificate()) return r.certificate().radical;
    return radical_bruteforce(r, limits);
}

Socles socles(const Algebra& r, const Limits& limits) {
    const Subspace j = radical(r, limits);
    if (j.is_zero()) {
        const Subspace all = Subspace::full(r.field(), r.dim());
        return {all, all, all};
    }
    Socles s{kernel(stacked_action(r, j, true)), kernel(stacked_action(r, j, false)), Subspace(r.field(), r.dim())};
    s.two_sided = s.left.intersect(s.right);
    return s;
}

std::size_t bimodule_length(const Algebra& r, const Subspace& ideal) {
    const Certificate& c = r.split_certificate();
    if (!r.is_two_sided_ideal(ideal)) throw PreconditionError("bimodule length needs a two-sided ideal");
    if (!r.product(c.radical, ideal).is_zero() || !r.product(ideal, c.radical).is_zero())
        throw PreconditionError("bimodule length needs an ideal killed by the radical on both sides");
    std::size_t len = 0;
    for (const auto& bf : c.blocks)
        for (const auto& be : c.blocks)
            len += blockwise(sandwich(r, bf.idempotent, ideal, be.idempotent).dim(), bf.size * be.size,
                             "bimodule length");
    return len;
}

SocleGraph socle_graph(const Algebra& r) {
    const Certificate& c = r.split_certificate();
    const Subspace soc = socles(r).two_sided;
    const Vec one = r.one();
    SocleGraph g;
    for (std::size_t f = 0; f < c.blocks.size(); ++f)
        if (!sandwich(r, c.blocks[f].idempotent, soc, one).is_zero()) g.left_vertices.push_back(f);
    for (std::size_t e = 0; e < c.blocks.size(); ++e)
        if (!sandwich(r, one, soc, c.blocks[e].idempotent).is_zero()) g.right_vertices.push_back(e);
    for (std::size_t f : g.left_vertices)
        for (std::size_t e : g.right_vertices) {
            const std::size_t dim = sandwich(r, c.blocks[f].idempotent, soc, c.blocks[e].idempotent).dim();
            if (dim == 0) continue;
            g.edges.push_back({f, e, blockwise(dim, c.blocks[f].size * c.blocks[e].size, "edge length")});
        }
    return g;
}

long improved_bound(const SocleGraph& g, long socle_len) {
    const long chi = g.chi();
    if (chi >= 0) return socle_len + chi;
    if (-chi > g.edge_count()) throw PreconditionError("graph has fewer edges than -chi");
    auto lengths = g.edge_lengths();
    std::sort(lengths.begin(), lengths.end());
    long out = socle_len;
    for (long i = 0; i < -chi; ++i) out -= static_cast<long>(lengths[static_cast<std::size_t>(i)]);
    return out;
}

bool socle_is_central(const Algebra& r, const Limits& limits) {
    const Subspace soc = socles(r, limits).two_sided;
    for (const auto& x : soc.vectors())
        for (std::size_t i = 0; i < r.dim(); ++i) {
            const Vec e = r.basis_vector(i);
            if (r.multiply(x, e) != r.multiply(e, x)) return false;
        }
    return true;
}

bool is_split_local(const Algebra& r) {
    if (!r.has_certificate()) return false;
    const Certificate& c = r.certificate();
    return c.split && c.blocks.size() == 1 && c.blocks[0].size == 1;
}

AlgebraAnalysis analyze(const Algebra& r, const Limits& limits) {
    AlgebraAnalysis a{.dim = r.dim(), .radical = radical(r, limits), .socles = socles(r, limits)};
    a.split = r.has_certificate() && r.certificate().split;
    a.socle_central = socle_is_central(r, limits);
    if (a.split) {
        a.graph = socle_graph(r);
        a.socle_bimodule_length = bimodule_length(r, a.socles.two_sided);
        a.improved_bound = improved_bound(*a.graph, static_cast<long>(*a.socle_bimodule_length));
    }
    if (r.has_certificate() && checked_pow(r.field().q(), static_cast<unsigned>(r.dim())) <= limits.radical_elements)
        a.radical_matches_bruteforce = radical_bruteforce(r, limits) == a.radical;
    return a;
}

}  // namespace soclelab

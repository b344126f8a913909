#include "soclelab/tensorcover.hpp"

#include <algorithm>
#include <unordered_set>

#include "soclelab/errors.hpp"
#include "soclelab/parallel.hpp"

namespace soclelab {

namespace {

Mat reshape(const Field& f, std::size_t m, std::size_t n, std::span<const Elem> flat) {
    return Mat(f, m, n, Vec(flat.begin(), flat.end()));
}

std::vector<Vec> flatten(const std::vector<Mat>& mats) {
    std::vector<Vec> out;
    out.reserve(mats.size());
    for (const auto& x : mats) out.push_back(x.entries());
    return out;
}

/// For a point b, the matrix whose kernel is {c : b (x) c in A}: row k applies the
/// k-th annihilator functional of A to b c^T.
Mat partner_system(const Field& f, const Subspace& ann, std::size_t m, std::size_t n, std::span<const Elem> b) {
    Mat sys(f, ann.dim(), n);
    for (std::size_t k = 0; k < ann.dim(); ++k) {
        const auto phi = ann.basis().row(k);
        for (std::size_t j = 0; j < n; ++j) {
            Elem s = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (b[i] != 0) s = f.add(s, f.mul(phi[i * n + j], b[i]));
            sys.set(k, j, s);
        }
    }
    return sys;
}

bool cond_b_flat(const Subspace& flat, std::size_t m, std::size_t n) {
    const Field& f = flat.field();
    if (flat.dim() == m * n) return true;
    const Subspace ann = flat.annihilator();
    for (const auto& b : projective_points(f, m))
        if (kernel(partner_system(f, ann, m, n, b)).is_zero()) return false;
    return true;
}

Subspace transpose_flat(const Subspace& flat, std::size_t m, std::size_t n) {
    std::vector<Vec> vs;
    for (std::size_t r = 0; r < flat.dim(); ++r) {
        const auto row = flat.basis().row(r);
        Vec t(m * n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) t[j * m + i] = row[i * n + j];
        vs.push_back(std::move(t));
    }
    return Subspace::span(flat.field(), m * n, vs);
}

bool both_flat(const Subspace& flat, std::size_t m, std::size_t n) {
    return cond_b_flat(flat, m, n) && cond_b_flat(transpose_flat(flat, m, n), n, m);
}

void require_nonempty(const TensorSubspace& a) {
    if (a.m() == 0 || a.n() == 0) throw PreconditionError("coverage conditions need m, n >= 1");
}

}  // namespace

TensorSubspace::TensorSubspace(Field field, std::size_t m, std::size_t n, std::vector<Mat> basis)
    : m_(m), n_(n), basis_(std::move(basis)), flat_(field, m * n) {
    for (const auto& x : basis_) {
        if (!(x.field() == field)) throw InputError("basis matrix over a different field");
        if (x.rows() != m || x.cols() != n) throw InputError("basis matrix is not " + std::to_string(m) + "x" + std::to_string(n));
    }
    flat_ = Subspace::span(field, m * n, flatten(basis_));
    if (flat_.dim() != basis_.size()) throw InputError("basis matrices are linearly dependent");
}

TensorSubspace TensorSubspace::from_flat(std::size_t m, std::size_t n, const Subspace& flat) {
    if (flat.ambient_dim() != m * n) throw InputError("flattened subspace has the wrong ambient dimension");
    std::vector<Mat> basis;
    for (std::size_t r = 0; r < flat.dim(); ++r) basis.push_back(reshape(flat.field(), m, n, flat.basis().row(r)));
    return TensorSubspace(flat.field(), m, n, std::move(basis));
}

TensorSubspace TensorSubspace::full(const Field& field, std::size_t m, std::size_t n) {
    return from_flat(m, n, Subspace::full(field, m * n));
}

bool TensorSubspace::contains(const Mat& x) const {
    if (x.rows() != m_ || x.cols() != n_) return false;
    return flat_.contains(x.entries());
}

TensorSubspace TensorSubspace::transpose() const {
    std::vector<Mat> t;
    t.reserve(basis_.size());
    for (const auto& x : basis_) t.push_back(x.transpose());
    return TensorSubspace(field(), n_, m_, std::move(t));
}

std::vector<TensorSubspace> TensorSubspace::hyperplanes() const {
    std::vector<TensorSubspace> out;
    for (const auto& h : flat_.hyperplanes()) out.push_back(from_flat(m_, n_, h));
    return out;
}

Mat outer(const Field& f, std::span<const Elem> b, std::span<const Elem> c) {
    Mat out(f, b.size(), c.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) out.set(i, j, f.mul(b[i], c[j]));
    return out;
}

ConditionResult check_cond_b(const TensorSubspace& a) {
    require_nonempty(a);
    const Field& f = a.field();
    const Subspace ann = a.flat().annihilator();
    ConditionResult out;
    out.holds = true;
    for (const auto& b : projective_points(f, a.m())) {
        const Subspace partners = kernel(partner_system(f, ann, a.m(), a.n(), b));
        CoverWitness w{b, std::nullopt};
        if (partners.is_zero()) {
            if (out.holds) out.failing = b;
            out.holds = false;
        } else {
            w.partner = partners.vector(0);
        }
        out.witnesses.push_back(std::move(w));
    }
    return out;
}

ConditionResult check_cond_c(const TensorSubspace& a) { return check_cond_b(a.transpose()); }

bool satisfies_cond_b(const TensorSubspace& a) {
    require_nonempty(a);
    return cond_b_flat(a.flat(), a.m(), a.n());
}

bool satisfies_cond_c(const TensorSubspace& a) { return satisfies_cond_b(a.transpose()); }

bool satisfies_both(const TensorSubspace& a) { return satisfies_cond_b(a) && satisfies_cond_c(a); }

CoverageReport check_bound(const TensorSubspace& a, bool with_minimality) {
    CoverageReport r;
    r.cond_b = check_cond_b(a);
    r.cond_c = check_cond_c(a);
    r.dim_a = a.dim();
    r.m = a.m();
    r.n = a.n();
    r.bound_holds = r.dim_a + 1 >= r.m + r.n;

    const Field& f = a.field();
    for (const auto& w : r.cond_b.witnesses)
        if (w.partner && !a.contains(outer(f, w.point, *w.partner)))
            throw TheoremViolation("cover witness b (x) c is not in A");
    for (const auto& w : r.cond_c.witnesses)
        if (w.partner && !a.contains(outer(f, *w.partner, w.point)))
            throw TheoremViolation("cover witness b (x) c is not in A");

    const bool both = r.cond_b.holds && r.cond_c.holds;
    if (both && !r.bound_holds)
        throw TheoremViolation("A satisfies both coverage conditions but dim A < m + n - 1",
                               "dim=" + std::to_string(r.dim_a) + " m=" + std::to_string(r.m) + " n=" + std::to_string(r.n));
    if (with_minimality && both) {
        const auto mr = check_minimal(a);
        r.minimal = mr.minimal;
        r.violating_hyperplane = mr.violating_hyperplane;
    }
    return r;
}

MinimalityResult check_minimal(const TensorSubspace& a) {
    if (!satisfies_both(a)) throw PreconditionError("minimality is only defined for subspaces satisfying both conditions");
    MinimalityResult r;
    r.minimal = true;
    if (a.dim() == 0) return r;
    for (const auto& h : a.flat().hyperplanes())
        if (both_flat(h, a.m(), a.n())) {
            r.minimal = false;
            r.violating_hyperplane = TensorSubspace::from_flat(a.m(), a.n(), h);
            break;
        }
    return r;
}

TensorSubspace descend_to_minimal(const TensorSubspace& a) {
    TensorSubspace cur = a;
    while (true) {
        auto r = check_minimal(cur);
        if (r.minimal) return cur;
        cur = *r.violating_hyperplane;
    }
}

SearchResult search_minimal(std::size_t m, std::size_t n, const Field& field, const Limits& limits) {
    if (m == 0 || n == 0) throw PreconditionError("search needs m, n >= 1");
    const std::size_t total_dim = m * n;
    SearchResult out;
    out.satisfying_by_dim.assign(total_dim + 1, 0);
    for (std::size_t k = 0; k <= total_dim; ++k) {
        const std::uint64_t g = gaussian_binomial(field.q(), static_cast<unsigned>(total_dim), static_cast<unsigned>(k));
        out.total = (out.total + g < out.total) ? UINT64_MAX : out.total + g;
    }

    std::unordered_set<Subspace, SubspaceHash> previous;
    out.complete = true;
    for (std::size_t k = 0; k <= total_dim; ++k) {
        const std::uint64_t count = gaussian_binomial(field.q(), static_cast<unsigned>(total_dim), static_cast<unsigned>(k));
        if (count > limits.subspaces || out.examined + count > limits.subspaces) {
            out.complete = false;
            break;
        }
        const auto candidates = enumerate_subspaces(field, total_dim, k);
        std::vector<char> sat(candidates.size(), 0), minimal(candidates.size(), 0);
        parallel_for(candidates.size(), limits.threads, [&](std::size_t idx) {
            const Subspace& s = candidates[idx];
            if (!both_flat(s, m, n)) return;
            sat[idx] = 1;
            bool has_satisfying_hyperplane = false;
            if (s.dim() > 0)
                for (const auto& h : s.hyperplanes())
                    if (previous.count(h)) {
                        has_satisfying_hyperplane = true;
                        break;
                    }
            minimal[idx] = !has_satisfying_hyperplane;
        });
        out.examined += candidates.size();

        std::unordered_set<Subspace, SubspaceHash> current;
        std::vector<Subspace> found;
        for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
            if (!sat[idx]) continue;
            current.insert(candidates[idx]);
            ++out.satisfying_by_dim[k];
            if (k + 1 < m + n && !out.bound_counterexample)
                out.bound_counterexample = TensorSubspace::from_flat(m, n, candidates[idx]);
            if (minimal[idx]) found.push_back(candidates[idx]);
        }
        std::sort(found.begin(), found.end());
        for (const auto& s : found) out.minimal.push_back(TensorSubspace::from_flat(m, n, s));
        previous = std::move(current);
    }
    return out;
}

BilinearSystem to_bilinear(const TensorSubspace& a) {
    SystemComponent comp{0, 0, {}};
    for (const auto& x : a.basis()) comp.maps.push_back(x.transpose());
    return BilinearSystem(a.field(), {1}, {1}, {a.m()}, {a.n()}, {std::move(comp)});
}

}  // namespace soclelab

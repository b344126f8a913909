#include "soclelab/modrep.hpp"

#include <sstream>

namespace soclelab {

namespace {

using MKind = ModuleRejected::Kind;

std::vector<std::size_t> non_pivots(const Subspace& s) {
    std::vector<char> is_pivot(s.ambient_dim(), 0);
    for (std::size_t p : s.pivots()) is_pivot[p] = 1;
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < s.ambient_dim(); ++c)
        if (!is_pivot[c]) out.push_back(c);
    return out;
}

std::vector<Vec> standard_basis(const Field& f, std::size_t n) { return Subspace::full(f, n).vectors(); }

std::vector<Vec> basis_or_all(const ModuleRep& m, const std::optional<Subspace>& sub) {
    return sub ? sub->vectors() : standard_basis(m.field(), m.dim());
}

Subspace image(const Mat& a, const std::vector<Vec>& vs, const Field& f, std::size_t n) {
    std::vector<Vec> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(a.apply(v));
    return Subspace::span(f, n, out);
}

std::size_t divide_exact(std::size_t dim, std::size_t n, const char* what) {
    if (dim % n != 0) {
        std::ostringstream os;
        os << what << ": block dimension " << dim << " is not a multiple of " << n;
        throw TheoremViolation(os.str());
    }
    return dim / n;
}

const Certificate& split_cert(const ModuleRep& m) {
    if (!m.algebra().has_certificate() || !m.algebra().certificate().split)
        throw CheckPrecondition(CheckPrecondition::Reason::not_split, "operation requires a split certified algebra");
    return m.algebra().certificate();
}

// Vectors of rho(E^f_11) N that form a basis modulo J N: the top multiplicity space.
std::vector<Vec> top_multiplicity(const ModuleRep& m, const std::vector<Vec>& n_basis, const Subspace& jn,
                                  const BlockCertificate& block) {
    const Mat e11 = m.act(block.unit(0, 0));
    Subspace acc = jn;
    std::vector<Vec> out;
    for (const auto& v : n_basis) {
        Vec u = e11.apply(v);
        if (acc.contains(u)) continue;
        acc = acc + Subspace::span(m.field(), m.dim(), {u});
        out.push_back(std::move(u));
    }
    return out;
}

Vec combine_vectors(const Field& f, std::size_t n, const std::vector<Vec>& vs, std::span<const Elem> c) {
    Vec out(n, 0);
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (c[i]) axpy(f, out, c[i], vs[i]);
    return out;
}

bool kills(const ModuleRep& m, const Subspace& ideal_part, const std::vector<Vec>& vs) {
    for (const auto& a : ideal_part.vectors()) {
        const Mat x = m.act(a);
        for (const auto& v : vs)
            if (!is_zero(x.apply(v))) return false;
    }
    return true;
}

}  // namespace

std::optional<ModuleRejected> ModuleRep::check(const Algebra& r, std::size_t n, const std::vector<Mat>& action) {
    const std::size_t d = r.dim();
    const Field& f = r.field();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Mat rhs(f, n, n);
            for (std::size_t k = 0; k < d; ++k) {
                const Elem c = r.mult(i, j, k);
                if (c) rhs = rhs + action[k].scaled(c);
            }
            if (!(action[i] * action[j] == rhs)) {
                std::ostringstream os;
                os << "action fails the relation for e" << i << " * e" << j;
                return ModuleRejected(MKind::relation, os.str(), {i, j});
            }
        }
    Mat one(f, n, n);
    for (std::size_t k = 0; k < d; ++k)
        if (r.one()[k]) one = one + action[k].scaled(r.one()[k]);
    if (!(one == Mat::identity(f, n))) return ModuleRejected(MKind::identity, "identity does not act as the identity");
    return std::nullopt;
}

std::optional<ModuleRep> ModuleRep::try_make(const Algebra& algebra, std::vector<Mat> action) {
    if (action.size() != algebra.dim()) throw ModuleRejected(MKind::shape, "need one action matrix per algebra basis element");
    const std::size_t n = action.front().rows();
    for (std::size_t i = 0; i < action.size(); ++i)
        if (action[i].rows() != n || action[i].cols() != n || !(action[i].field() == algebra.field()))
            throw ModuleRejected(MKind::shape, "action matrices must be square of one size over the algebra's field", {i});
    if (check(algebra, n, action)) return std::nullopt;
    return ModuleRep(algebra, n, std::move(action));
}

ModuleRep ModuleRep::make(Algebra algebra, std::vector<Mat> action) {
    if (action.size() != algebra.dim()) throw ModuleRejected(MKind::shape, "need one action matrix per algebra basis element");
    const std::size_t n = action.front().rows();
    for (std::size_t i = 0; i < action.size(); ++i)
        if (action[i].rows() != n || action[i].cols() != n || !(action[i].field() == algebra.field()))
            throw ModuleRejected(MKind::shape, "action matrices must be square of one size over the algebra's field", {i});
    if (auto err = check(algebra, n, action)) throw *err;
    return ModuleRep(std::move(algebra), n, std::move(action));
}

ModuleRep ModuleRep::regular(const Algebra& algebra) {
    std::vector<Mat> action;
    for (std::size_t i = 0; i < algebra.dim(); ++i) action.push_back(algebra.left_mult(algebra.basis_vector(i)));
    return ModuleRep(algebra, algebra.dim(), std::move(action));
}

Mat ModuleRep::act(std::span<const Elem> a) const {
    if (a.size() != action_.size()) throw PreconditionError("algebra element has the wrong length");
    Mat out(field(), dim_, dim_);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i]) out = out + action_[i].scaled(a[i]);
    return out;
}

bool ModuleRep::is_submodule(const Subspace& s) const {
    if (s.ambient_dim() != dim_) return false;
    for (const auto& v : s.vectors())
        for (const auto& a : action_)
            if (!s.contains(a.apply(v))) return false;
    return true;
}

Subspace ModuleRep::generate(const std::vector<Vec>& vectors) const {
    Subspace s = Subspace::span(field(), dim_, vectors);
    while (true) {
        std::vector<Vec> more = s.vectors();
        const std::size_t base = more.size();
        for (std::size_t i = 0; i < base; ++i)
            for (const auto& a : action_) more.push_back(a.apply(more[i]));
        Subspace next = Subspace::span(field(), dim_, more);
        if (next.dim() == s.dim()) return s;
        s = std::move(next);
    }
}

ModuleRep ModuleRep::restrict_to(const Subspace& sub) const {
    if (!is_submodule(sub)) throw PreconditionError("restriction target is not a submodule");
    const auto basis = sub.vectors();
    std::vector<Mat> action;
    for (const auto& a : action_) {
        Mat m(field(), basis.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Vec c = sub.coordinates(a.apply(basis[j]));
            for (std::size_t i = 0; i < basis.size(); ++i) m.set(i, j, c[i]);
        }
        action.push_back(std::move(m));
    }
    return ModuleRep(algebra_, basis.size(), std::move(action));
}

Vec quotient_coordinates(const Subspace& sub, std::span<const Elem> v) {
    const Vec r = sub.reduce(v);
    const auto cols = non_pivots(sub);
    Vec out(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) out[i] = r[cols[i]];
    return out;
}

Vec quotient_lift(const Subspace& sub, std::span<const Elem> coords) {
    const auto cols = non_pivots(sub);
    if (coords.size() != cols.size()) throw PreconditionError("quotient coordinates have the wrong length");
    Vec out(sub.ambient_dim(), 0);
    for (std::size_t i = 0; i < cols.size(); ++i) out[cols[i]] = coords[i];
    return out;
}

ModuleRep ModuleRep::quotient(const Subspace& sub) const {
    if (!is_submodule(sub)) throw PreconditionError("quotient by a non-submodule");
    const auto cols = non_pivots(sub);
    std::vector<Mat> action;
    for (const auto& a : action_) {
        Mat m(field(), cols.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const Vec c = quotient_coordinates(sub, a.col_vec(cols[j]));
            for (std::size_t i = 0; i < cols.size(); ++i) m.set(i, j, c[i]);
        }
        action.push_back(std::move(m));
    }
    return ModuleRep(algebra_, cols.size(), std::move(action));
}

ModuleRep ModuleRep::direct_sum(const ModuleRep& other) const {
    if (other.algebra_.dim() != algebra_.dim() || other.algebra_.structure_constants() != algebra_.structure_constants())
        throw PreconditionError("direct sum of modules over different algebras");
    const std::size_t n = dim_ + other.dim_;
    std::vector<Mat> action;
    for (std::size_t k = 0; k < action_.size(); ++k) {
        Mat m(field(), n, n);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) m.set(i, j, action_[k].at(i, j));
        for (std::size_t i = 0; i < other.dim_; ++i)
            for (std::size_t j = 0; j < other.dim_; ++j) m.set(dim_ + i, dim_ + j, other.action_[k].at(i, j));
        action.push_back(std::move(m));
    }
    return ModuleRep(algebra_, n, std::move(action));
}

Subspace radical_times(const ModuleRep& m, const std::optional<Subspace>& sub) {
    const Subspace j = radical(m.algebra());
    const auto vs = basis_or_all(m, sub);
    std::vector<Vec> out;
    for (const auto& a : j.vectors()) {
        const Mat x = m.act(a);
        for (const auto& v : vs) out.push_back(x.apply(v));
    }
    return Subspace::span(m.field(), m.dim(), out);
}

Subspace module_socle(const ModuleRep& m) {
    const Subspace j = radical(m.algebra());
    if (j.is_zero()) return Subspace::full(m.field(), m.dim());
    Mat stacked(m.field(), 0, m.dim());
    for (const auto& a : j.vectors()) stacked = stacked.vstack(m.act(a));
    return kernel(stacked);
}

Faithfulness faithful(const ModuleRep& m) {
    const std::size_t n = m.dim(), d = m.algebra().dim();
    Mat cols(m.field(), n * n, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t e = 0; e < n * n; ++e) cols.set(e, i, m.action()[i].entries()[e]);
    Subspace ann = kernel(cols);
    const bool ok = ann.is_zero();
    return {ok, std::move(ann)};
}

Subspace annihilator_of_submodule(const ModuleRep& m, const Subspace& sub) {
    const auto basis = sub.vectors();
    const std::size_t n = m.dim(), d = m.algebra().dim();
    if (basis.empty()) return Subspace::full(m.field(), d);
    Mat cols(m.field(), n * basis.size(), d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Vec img = m.action()[i].apply(basis[b]);
            for (std::size_t k = 0; k < n; ++k) cols.set(b * n + k, i, img[k]);
        }
    return kernel(cols);
}

Subspace annihilator_of_quotient(const ModuleRep& m, const Subspace& sub) {
    const std::size_t n = m.dim(), d = m.algebra().dim();
    const std::size_t qd = n - sub.dim();
    if (qd == 0) return Subspace::full(m.field(), d);
    Mat cols(m.field(), n * qd, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t c = 0; c < n; ++c) {
            const Vec img = quotient_coordinates(sub, m.action()[i].col_vec(c));
            for (std::size_t k = 0; k < qd; ++k) cols.set(c * qd + k, i, img[k]);
        }
    return kernel(cols);
}

std::size_t top_length(const ModuleRep& m, const Subspace& sub) {
    const Certificate& c = split_cert(m);
    const Subspace jn = radical_times(m, sub);
    const auto basis = sub.vectors();
    std::size_t len = 0;
    for (const auto& b : c.blocks) {
        const Subspace part = image(m.act(b.idempotent), basis, m.field(), m.dim()) + jn;
        len += divide_exact(part.dim() - jn.dim(), b.size, "top length");
    }
    return len;
}

TopSocle top_socle(const ModuleRep& m) {
    const Certificate& c = split_cert(m);
    TopSocle out{0, 0, radical_times(m), module_socle(m)};
    out.top_length = top_length(m, Subspace::full(m.field(), m.dim()));
    const auto sv = out.soc.vectors();
    for (const auto& b : c.blocks)
        out.socle_length += divide_exact(image(m.act(b.idempotent), sv, m.field(), m.dim()).dim(), b.size, "socle length");
    return out;
}

std::vector<Subspace> maximal_submodules(const ModuleRep& m, const std::optional<Subspace>& sub, const Limits& limits) {
    const Certificate& c = split_cert(m);
    const auto nb = basis_or_all(m, sub);
    const Subspace jn = radical_times(m, sub);
    std::vector<Subspace> out;
    std::uint64_t visited = 0;
    for (std::size_t f = 0; f < c.blocks.size(); ++f) {
        const auto u = top_multiplicity(m, nb, jn, c.blocks[f]);
        if (u.empty()) continue;
        std::vector<Vec> others = jn.vectors();
        for (std::size_t g = 0; g < c.blocks.size(); ++g) {
            if (g == f) continue;
            const Mat eg = m.act(c.blocks[g].idempotent);
            for (const auto& v : nb) others.push_back(eg.apply(v));
        }
        for (const auto& h : Subspace::full(m.field(), u.size()).hyperplanes()) {
            if (++visited > limits.subspaces) throw BudgetExceeded("maximal submodule enumeration exceeds the subspace cap");
            std::vector<Vec> gens = others;
            for (const auto& coeff : h.vectors()) gens.push_back(combine_vectors(m.field(), m.dim(), u, coeff));
            out.push_back(m.generate(gens));
        }
    }
    return out;
}

std::vector<Subspace> simple_submodules(const ModuleRep& m, const Limits& limits) {
    const Certificate& c = split_cert(m);
    const Subspace soc = module_socle(m);
    const auto sv = soc.vectors();
    std::vector<Subspace> out;
    std::uint64_t visited = 0;
    for (const auto& b : c.blocks) {
        const Subspace v = image(m.act(b.unit(0, 0)), sv, m.field(), m.dim());
        if (v.is_zero()) continue;
        for (const auto& y : v.points()) {
            if (++visited > limits.subspaces) throw BudgetExceeded("simple submodule enumeration exceeds the subspace cap");
            out.push_back(m.generate({y}));
        }
    }
    return out;
}

MinimalFaithful minimal_faithful(const ModuleRep& m, const Limits& limits) {
    split_cert(m);
    if (!faithful(m).faithful) throw CheckPrecondition(CheckPrecondition::Reason::not_faithful, "module is not faithful");
    MinimalFaithful out;
    for (const auto& n : maximal_submodules(m, std::nullopt, limits))
        if (annihilator_of_submodule(m, n).is_zero()) {
            out.no_faithful_max_submodule = false;
            out.faithful_submodule = n;
            break;
        }
    for (const auto& l : simple_submodules(m, limits))
        if (annihilator_of_quotient(m, l).is_zero()) {
            out.no_faithful_simple_quotient = false;
            out.faithful_quotient_by = l;
            break;
        }
    return out;
}

namespace {

ModuleReport base_report(const ModuleRep& m, const Limits& limits) {
    using R = CheckPrecondition::Reason;
    split_cert(m);
    ModuleReport rep;
    rep.faithful = faithful(m).faithful;
    if (!rep.faithful) throw CheckPrecondition(R::not_faithful, "module is not faithful");
    const MinimalFaithful mf = minimal_faithful(m, limits);
    rep.no_faithful_max_submodule = mf.no_faithful_max_submodule;
    rep.no_faithful_simple_quotient = mf.no_faithful_simple_quotient;
    if (!mf.minimal()) throw CheckPrecondition(R::not_minimal, "module has a faithful proper submodule or quotient");
    const TopSocle ts = top_socle(m);
    rep.top_length = ts.top_length;
    rep.socle_length = ts.socle_length;
    rep.lhs = static_cast<long>(ts.top_length + ts.socle_length);
    return rep;
}

}  // namespace

ModuleReport gulliksen_check(const ModuleRep& m, const Limits& limits) {
    using R = CheckPrecondition::Reason;
    const Algebra& r = m.algebra();
    split_cert(m);
    if (!is_split_local(r)) throw CheckPrecondition(R::not_local, "algebra is not local with residue field F_q");
    if (!socle_is_central(r, limits)) throw CheckPrecondition(R::socle_not_central, "socle of the algebra is not central");
    ModuleReport rep = base_report(m, limits);
    const Subspace soc = socles(r, limits).two_sided;
    rep.socle_bimodule_length = bimodule_length(r, soc);
    rep.chi = 1;
    rep.rhs = static_cast<long>(soc.dim()) + 1;
    rep.improved_rhs = rep.rhs;
    rep.holds = rep.lhs <= rep.rhs;
    rep.hypotheses_met_except_field_size = true;
    if (!rep.holds) {
        std::ostringstream os;
        os << "top " << rep.top_length << " + socle " << rep.socle_length << " > dim soc(R) " << soc.dim() << " + 1";
        throw TheoremViolation("local central-socle bound fails", os.str());
    }
    return rep;
}

ModuleReport main_check(const ModuleRep& m, const Limits& limits) {
    ModuleReport rep = base_report(m, limits);
    const Algebra& r = m.algebra();
    const Subspace soc = socles(r, limits).two_sided;
    rep.socle_bimodule_length = bimodule_length(r, soc);
    const SocleGraph g = socle_graph(r);
    rep.chi = g.chi();
    rep.rhs = static_cast<long>(rep.socle_bimodule_length) + rep.chi;
    rep.improved_rhs = improved_bound(g, static_cast<long>(rep.socle_bimodule_length));
    rep.holds = rep.lhs <= rep.rhs;
    rep.hypotheses_met_except_field_size = true;
    return rep;
}

ShrinkResult shrink_submodule(const ModuleRep& m, const Limits& limits) {
    const Certificate& c = split_cert(m);
    if (!faithful(m).faithful) throw CheckPrecondition(CheckPrecondition::Reason::not_faithful, "module is not faithful");
    const Algebra& r = m.algebra();
    const Subspace soc = socles(r, limits).two_sided;
    const std::size_t n = bimodule_length(r, soc);
    const Subspace jm = radical_times(m);
    const auto all = standard_basis(m.field(), m.dim());

    // One submodule per simple summand of M/JM, each with simple top.
    std::vector<Subspace> parts;
    for (const auto& b : c.blocks)
        for (const auto& x : top_multiplicity(m, all, jm, b)) {
            Subspace cur = m.generate({x});
            const Subspace target = cur + jm;
            for (bool moved = true; moved;) {
                moved = false;
                for (const auto& smaller : maximal_submodules(m, cur, limits))
                    if ((smaller + jm) == target) {
                        cur = smaller;
                        moved = true;
                        break;
                    }
            }
            if (top_length(m, cur) != 1) throw TheoremViolation("descended submodule does not have simple top");
            parts.push_back(std::move(cur));
        }

    Subspace sum(m.field(), m.dim());
    Subspace ann = soc;
    std::size_t used = 0;
    while (!ann.is_zero()) {
        const Subspace* pick = nullptr;
        for (const auto& p : parts)
            if (!kills(m, ann, p.vectors())) {
                pick = &p;
                break;
            }
        if (!pick) throw TheoremViolation("faithful module, yet every summand is killed by a nonzero socle ideal");
        sum = sum + *pick;
        if (++used > n) throw TheoremViolation("annihilator chain in soc(R) longer than its bimodule length");
        ann = soc.intersect(annihilator_of_submodule(m, sum));
    }
    ModuleRep out = m.restrict_to(sum);
    if (!faithful(out).faithful) throw TheoremViolation("shrunken submodule is not faithful");
    if (top_length(m, sum) > n) throw TheoremViolation("shrunken submodule exceeds the top length bound");
    return {std::move(out), sum, std::nullopt, n, used};
}

ShrinkResult shrink_quotient(const ModuleRep& m, const Limits& limits) {
    const Certificate& c = split_cert(m);
    if (!faithful(m).faithful) throw CheckPrecondition(CheckPrecondition::Reason::not_faithful, "module is not faithful");
    const Algebra& r = m.algebra();
    const Subspace soc = socles(r, limits).two_sided;
    const std::size_t n = bimodule_length(r, soc);
    const Subspace socm = module_socle(m);
    const auto sv = socm.vectors();

    std::vector<Subspace> simples;
    for (const auto& b : c.blocks)
        for (const auto& y : image(m.act(b.unit(0, 0)), sv, m.field(), m.dim()).vectors())
            simples.push_back(m.generate({y}));

    // For each simple L_j, a submodule N_j maximal with N_j meeting L_j trivially.
    std::vector<Subspace> kernels;
    for (std::size_t j = 0; j < simples.size(); ++j) {
        Subspace nj(m.field(), m.dim());
        for (std::size_t i = 0; i < simples.size(); ++i)
            if (i != j) nj = nj + simples[i];
        while (true) {
            const ModuleRep q = m.quotient(nj);
            const Subspace qsoc = module_socle(q);
            std::vector<Vec> lbar_gens;
            for (const auto& v : simples[j].vectors()) lbar_gens.push_back(quotient_coordinates(nj, v));
            const Subspace lbar = Subspace::span(q.field(), q.dim(), lbar_gens);
            if (qsoc == lbar) break;
            // Another simple submodule of M/N_j: a multiplicity vector outside L_j's.
            std::optional<Vec> y;
            const auto qv = qsoc.vectors();
            for (const auto& b : c.blocks) {
                const Mat e11 = q.act(b.unit(0, 0));
                const Subspace lpart = image(e11, lbar.vectors(), q.field(), q.dim());
                for (const auto& w : image(e11, qv, q.field(), q.dim()).vectors())
                    if (!lpart.contains(w)) {
                        y = w;
                        break;
                    }
                if (y) break;
            }
            if (!y) throw TheoremViolation("socle of the quotient is larger than L but has no other simple part");
            std::vector<Vec> gens = nj.vectors();
            for (const auto& v : q.generate({*y}).vectors()) gens.push_back(quotient_lift(nj, v));
            nj = Subspace::span(m.field(), m.dim(), gens);
        }
        if (!nj.intersect(simples[j]).is_zero()) throw TheoremViolation("essential-extension kernel meets its simple");
        kernels.push_back(std::move(nj));
    }

    Subspace k = Subspace::full(m.field(), m.dim());
    Subspace ann = soc;
    std::size_t used = 0;
    const auto all = standard_basis(m.field(), m.dim());
    while (!ann.is_zero()) {
        const Subspace* pick = nullptr;
        for (const auto& nj : kernels) {
            bool lands = true;
            for (const auto& a : ann.vectors()) {
                const Mat x = m.act(a);
                for (const auto& v : all) lands = lands && nj.contains(x.apply(v));
            }
            if (!lands) {
                pick = &nj;
                break;
            }
        }
        if (!pick) throw TheoremViolation("faithful module, yet every subdirect factor is killed by a nonzero socle ideal");
        k = k.intersect(*pick);
        if (++used > n) throw TheoremViolation("annihilator chain in soc(R) longer than its bimodule length");
        ann = soc.intersect(annihilator_of_quotient(m, k));
    }
    ModuleRep out = m.quotient(k);
    if (!faithful(out).faithful) throw TheoremViolation("shrunken quotient is not faithful");
    if (top_socle(out).socle_length > n) throw TheoremViolation("shrunken quotient exceeds the socle length bound");
    return {std::move(out), std::nullopt, k, n, used};
}

ShrinkResult shrink_subfactor(const ModuleRep& m, const Limits& limits) {
    ShrinkResult sub = shrink_submodule(m, limits);
    ShrinkResult quo = shrink_quotient(sub.module, limits);
    const TopSocle ts = top_socle(quo.module);
    if (ts.top_length > sub.bound || ts.socle_length > sub.bound)
        throw TheoremViolation("subfactor exceeds a length bound");
    return {std::move(quo.module), sub.submodule, quo.kernel, sub.bound, sub.parts + quo.parts};
}

BilinearSystem system_from_module(const ModuleRep& m) {
    const Certificate& c = split_cert(m);
    const Algebra& r = m.algebra();
    const Subspace soc = socles(r).two_sided;
    const Subspace jm = radical_times(m);
    const Subspace socm = module_socle(m);
    const auto all = standard_basis(m.field(), m.dim());
    const auto sv = socm.vectors();
    const std::size_t blocks = c.blocks.size();

    std::vector<std::size_t> sizes(blocks), b_mult(blocks), c_mult(blocks);
    std::vector<std::vector<Vec>> tops(blocks);
    std::vector<Subspace> socs;
    for (std::size_t f = 0; f < blocks; ++f) {
        sizes[f] = c.blocks[f].size;
        tops[f] = top_multiplicity(m, all, jm, c.blocks[f]);
        b_mult[f] = tops[f].size();
        socs.push_back(image(m.act(c.blocks[f].unit(0, 0)), sv, m.field(), m.dim()));
        c_mult[f] = socs[f].dim();
    }
    std::vector<SystemComponent> comps;
    for (std::size_t f = 0; f < blocks; ++f)
        for (std::size_t e = 0; e < blocks; ++e) {
            if (b_mult[e] == 0 || c_mult[f] == 0) continue;
            std::vector<Vec> gens;
            for (const auto& x : soc.vectors())
                gens.push_back(r.multiply(r.multiply(c.blocks[f].unit(0, 0), x), c.blocks[e].unit(0, 0)));
            const Subspace part = Subspace::span(r.field(), r.dim(), gens);
            if (part.is_zero()) continue;
            SystemComponent comp{f, e, {}};
            for (const auto& a : part.vectors()) {
                const Mat x = m.act(a);
                Mat map(m.field(), c_mult[f], b_mult[e]);
                for (std::size_t i = 0; i < b_mult[e]; ++i) {
                    const Vec col = socs[f].coordinates(x.apply(tops[e][i]));
                    for (std::size_t k = 0; k < c_mult[f]; ++k) map.set(k, i, col[k]);
                }
                comp.maps.push_back(std::move(map));
            }
            comps.push_back(std::move(comp));
        }
    return BilinearSystem(m.field(), sizes, sizes, b_mult, c_mult, std::move(comps));
}

}  // namespace soclelab

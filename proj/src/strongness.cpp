#include "soclelab/strongness.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "soclelab/errors.hpp"

namespace soclelab {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
bool covers(const Bits& have, const Bits& need) {
    for (std::size_t w = 0; w < need.size(); ++w)
        if ((need[w] & ~have[w]) != 0) return false;
    return true;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        c = c * (n - i) / (i + 1);
        if (c > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(c);
}

std::size_t family_size(double n, std::size_t available) {
    if (std::isinf(n)) return available;
    if (n < 1.0) return 0;
    const double fl = std::floor(n);
    return fl >= static_cast<double>(available) ? available : static_cast<std::size_t>(fl);
}

struct CoverSearch {
    std::optional<std::vector<std::size_t>> family;
    std::uint64_t checked = 0;
};

/// Looks for k of `sets` whose union contains `target`, in lexicographic order of index
/// tuples.
CoverSearch find_cover(const std::vector<Bits>& sets, const Bits& target, std::size_t k,
                       std::uint64_t cap) {
    CoverSearch out;
    const std::size_t n = sets.size();
    if (binomial_capped(n, k, cap) > cap)
        throw BudgetExceeded("family enumeration would exceed " + std::to_string(cap) + " combinations");
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        ++out.checked;
        Bits u(target.size(), 0);
        for (auto i : idx)
            for (std::size_t w = 0; w < u.size(); ++w) u[w] |= sets[i][w];
        if (covers(u, target)) {
            out.family = idx;
            return out;
        }
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) return out;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

/// Coefficient vectors c with sum_k c_k h_k satisfying the linear constraint, as a
/// subspace of k^{part.size()}. `constraint` maps one matrix to a vector.
template <class Fn>
Subspace solve_part(const Field& f, const std::vector<Mat>& part, Fn&& constraint) {
    if (part.empty()) return Subspace(f, 0);
    std::vector<Vec> cols;
    for (const auto& h : part) cols.push_back(constraint(h));
    const std::size_t rows = cols.front().size();
    Mat m(f, rows, part.size());
    for (std::size_t k = 0; k < part.size(); ++k)
        for (std::size_t r = 0; r < rows; ++r) m.set(r, k, cols[k][r]);
    return kernel(m);
}

Mat combine_maps(const std::vector<Mat>& part, std::span<const Elem> c) {
    Mat out(part.front().field(), part.front().rows(), part.front().cols());
    for (std::size_t k = 0; k < part.size(); ++k)
        if (c[k] != 0) out = out + part[k].scaled(c[k]);
    return out;
}

Subspace coeffs_into(const std::vector<Mat>& part, const Subspace& target) {
    const Field& f = target.field();
    const Subspace ann = target.annihilator();
    return solve_part(f, part, [&](const Mat& h) {
        Vec v;
        for (std::size_t a = 0; a < ann.dim(); ++a)
            for (std::size_t col = 0; col < h.cols(); ++col) {
                Elem s = 0;
                for (std::size_t r = 0; r < h.rows(); ++r) s = f.add(s, f.mul(ann.basis().at(a, r), h.at(r, col)));
                v.push_back(s);
            }
        return v;
    });
}

Subspace coeffs_killing(const std::vector<Mat>& part, const Subspace& sub) {
    const Field& f = sub.field();
    return solve_part(f, part, [&](const Mat& h) {
        Vec v;
        for (std::size_t b = 0; b < sub.dim(); ++b) {
            const Vec hx = h.apply(sub.basis().row(b));
            v.insert(v.end(), hx.begin(), hx.end());
        }
        return v;
    });
}

std::optional<Mat> first_nonzero_map(const std::vector<Mat>& part, const Subspace& coeffs) {
    for (std::size_t i = 0; i < coeffs.dim(); ++i) {
        Mat m = combine_maps(part, coeffs.basis().row(i));
        if (!m.is_zero()) return m;
    }
    return std::nullopt;
}

Subspace point_space(const Field& f, const Vec& p) { return Subspace::span(f, p.size(), {p}); }

}  // namespace

std::optional<Mat> map_into(const std::vector<Mat>& part, const Subspace& target) {
    if (part.empty()) return std::nullopt;
    return first_nonzero_map(part, coeffs_into(part, target));
}

std::optional<Mat> map_killing(const std::vector<Mat>& part, const Subspace& sub) {
    if (part.empty()) return std::nullopt;
    return first_nonzero_map(part, coeffs_killing(part, sub));
}

// ---------------------------------------------------------------------------
// BilinearSystem

BilinearSystem::BilinearSystem(Field field, std::vector<std::size_t> s_sizes, std::vector<std::size_t> t_sizes,
                               std::vector<std::size_t> b_mult, std::vector<std::size_t> c_mult,
                               std::vector<SystemComponent> components)
    : field_(std::move(field)),
      s_sizes_(std::move(s_sizes)),
      t_sizes_(std::move(t_sizes)),
      b_mult_(std::move(b_mult)),
      c_mult_(std::move(c_mult)) {
    if (s_sizes_.size() != b_mult_.size()) throw InputError("s_blocks and b_mult differ in length");
    if (t_sizes_.size() != c_mult_.size()) throw InputError("t_blocks and c_mult differ in length");
    for (auto s : s_sizes_)
        if (s == 0) throw InputError("S block of size 0");
    for (auto t : t_sizes_)
        if (t == 0) throw InputError("T block of size 0");
    for (auto& c : components) {
        if (c.maps.empty()) continue;
        if (c.t_block >= t_sizes_.size() || c.s_block >= s_sizes_.size())
            throw InputError("component refers to a missing block");
        if (b_mult_[c.s_block] == 0 || c_mult_[c.t_block] == 0)
            throw InputError("component on a block with zero multiplicity");
        for (const auto& m : c.maps) {
            if (!(m.field() == field_)) throw InputError("component map over a different field");
            if (m.rows() != c_mult_[c.t_block] || m.cols() != b_mult_[c.s_block])
                throw InputError("component map has shape " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", expected c_mult x b_mult");
        }
        components_.push_back(std::move(c));
    }
    std::sort(components_.begin(), components_.end(), [](const auto& a, const auto& b) {
        return std::pair(a.t_block, a.s_block) < std::pair(b.t_block, b.s_block);
    });
    for (std::size_t i = 1; i < components_.size(); ++i)
        if (components_[i].t_block == components_[i - 1].t_block && components_[i].s_block == components_[i - 1].s_block)
            throw InputError("duplicate component for one block pair");
}

const std::vector<Mat>& BilinearSystem::maps(std::size_t t_block, std::size_t s_block) const {
    static const std::vector<Mat> empty;
    for (const auto& c : components_)
        if (c.t_block == t_block && c.s_block == s_block) return c.maps;
    return empty;
}

std::size_t BilinearSystem::length_b() const {
    std::size_t s = 0;
    for (auto b : b_mult_) s += b;
    return s;
}

std::size_t BilinearSystem::length_c() const {
    std::size_t s = 0;
    for (auto c : c_mult_) s += c;
    return s;
}

std::size_t BilinearSystem::length_a() const {
    std::size_t s = 0;
    for (const auto& c : components_) s += c.maps.size();
    return s;
}

ExpandedSystem BilinearSystem::expand() const {
    ExpandedSystem x;
    std::vector<std::size_t> off_b, off_c;
    for (std::size_t i = 0; i < s_sizes_.size(); ++i) {
        off_b.push_back(x.dim_b);
        x.dim_b += s_sizes_[i] * b_mult_[i];
    }
    for (std::size_t j = 0; j < t_sizes_.size(); ++j) {
        off_c.push_back(x.dim_c);
        x.dim_c += t_sizes_[j] * c_mult_[j];
    }
    x.block_coords.assign(t_sizes_.size(), std::vector<std::vector<std::size_t>>(s_sizes_.size()));

    // Abstract basis of f_j A e_i: (u, w, k) with u < t_j, w < s_i, k < dim A'_{ji},
    // standing for E_{uw} (x) a'_k.
    struct Label {
        std::size_t j, i, u, w, k;
    };
    std::vector<Label> labels;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t> index;
    for (const auto& c : components_)
        for (std::size_t u = 0; u < t_sizes_[c.t_block]; ++u)
            for (std::size_t w = 0; w < s_sizes_[c.s_block]; ++w)
                for (std::size_t k = 0; k < c.maps.size(); ++k) {
                    index[{c.t_block, c.s_block, u, w, k}] = labels.size();
                    x.block_coords[c.t_block][c.s_block].push_back(labels.size());
                    labels.push_back({c.t_block, c.s_block, u, w, k});
                }
    x.dim_a = labels.size();

    for (const auto& l : labels) {
        const Mat& hk = maps(l.j, l.i)[l.k];
        Mat m(field_, x.dim_c, x.dim_b);
        const std::size_t beta = b_mult_[l.i], gamma = c_mult_[l.j];
        for (std::size_t r = 0; r < gamma; ++r)
            for (std::size_t c = 0; c < beta; ++c)
                m.set(off_c[l.j] + l.u * gamma + r, off_b[l.i] + l.w * beta + c, hk.at(r, c));
        x.a_maps.push_back(std::move(m));
    }

    for (std::size_t i = 0; i < s_sizes_.size(); ++i)
        for (std::size_t r = 0; r < s_sizes_[i]; ++r)
            for (std::size_t c = 0; c < s_sizes_[i]; ++c) {
                ExpandedSystem::Unit unit{i, r, c, Mat(field_, x.dim_b, x.dim_b), Mat(field_, x.dim_a, x.dim_a)};
                for (std::size_t y = 0; y < b_mult_[i]; ++y)
                    unit.on_module.set(off_b[i] + r * b_mult_[i] + y, off_b[i] + c * b_mult_[i] + y, 1);
                // a E_{rc}: the w = r slot moves to w = c.
                for (const auto& l : labels)
                    if (l.i == i && l.w == r) unit.on_a.set(index.at({l.j, l.i, l.u, c, l.k}), index.at({l.j, l.i, l.u, l.w, l.k}), 1);
                x.s_units.push_back(std::move(unit));
            }
    for (std::size_t j = 0; j < t_sizes_.size(); ++j)
        for (std::size_t r = 0; r < t_sizes_[j]; ++r)
            for (std::size_t c = 0; c < t_sizes_[j]; ++c) {
                ExpandedSystem::Unit unit{j, r, c, Mat(field_, x.dim_c, x.dim_c), Mat(field_, x.dim_a, x.dim_a)};
                for (std::size_t y = 0; y < c_mult_[j]; ++y)
                    unit.on_module.set(off_c[j] + r * c_mult_[j] + y, off_c[j] + c * c_mult_[j] + y, 1);
                // E_{rc} a: the u = c slot moves to u = r.
                for (const auto& l : labels)
                    if (l.j == j && l.u == c) unit.on_a.set(index.at({l.j, l.i, r, l.w, l.k}), index.at({l.j, l.i, l.u, l.w, l.k}), 1);
                x.t_units.push_back(std::move(unit));
            }
    return x;
}

namespace {

Mat evaluate(const ExpandedSystem& x, const Field& f, std::span<const Elem> coords) {
    Mat out(f, x.dim_c, x.dim_b);
    for (std::size_t l = 0; l < coords.size(); ++l)
        if (coords[l] != 0) out = out + x.a_maps[l].scaled(coords[l]);
    return out;
}

}  // namespace

bool verify_balanced(const ExpandedSystem& x) {
    if (x.a_maps.empty()) return true;
    const Field& f = x.a_maps.front().field();
    for (std::size_t k = 0; k < x.dim_a; ++k) {
        Vec e(x.dim_a, 0);
        e[k] = 1;
        for (const auto& s : x.s_units)
            if (!(evaluate(x, f, s.on_a.apply(e)) == x.a_maps[k] * s.on_module)) return false;
        for (const auto& t : x.t_units)
            if (!(evaluate(x, f, t.on_a.apply(e)) == t.on_module * x.a_maps[k])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Predicates

SystemPredicates predicates(const BilinearSystem& sys) {
    const Field& f = sys.field();
    SystemPredicates out;

    out.nondeg = true;
    for (const auto& c : sys.components()) {
        std::vector<Vec> flat;
        for (const auto& m : c.maps) flat.push_back(m.entries());
        if (Subspace::span(f, flat.front().size(), flat).dim() != c.maps.size()) {
            out.nondeg = false;
            out.nondeg_failure = std::pair(c.t_block, c.s_block);
            break;
        }
    }

    // A nonzero element acting as zero annihilates every maximal submodule at once.
    out.cond_b = true;
    if (out.nondeg) {
        for (std::size_t i = 0; i < sys.s_block_count() && out.cond_b; ++i) {
            const std::size_t beta = sys.b_mult()[i];
            if (beta == 0) continue;
            for (const auto& h : Subspace::full(f, beta).hyperplanes()) {
                bool found = false;
                for (std::size_t j = 0; j < sys.t_block_count() && !found; ++j) {
                    const auto& part = sys.maps(j, i);
                    found = !part.empty() && coeffs_killing(part, h).dim() > 0;
                }
                if (!found) {
                    out.cond_b = false;
                    out.cond_b_failure_block = i;
                    out.cond_b_failing_hyperplane = h;
                    break;
                }
            }
        }
    }

    out.cond_c = true;
    for (std::size_t j = 0; j < sys.t_block_count() && out.cond_c; ++j) {
        const std::size_t gamma = sys.c_mult()[j];
        if (gamma == 0) continue;
        for (const auto& y : projective_points(f, gamma)) {
            bool found = false;
            for (std::size_t i = 0; i < sys.s_block_count() && !found; ++i)
                found = map_into(sys.maps(j, i), point_space(f, y)).has_value();
            if (!found) {
                out.cond_c = false;
                out.cond_c_failure_block = j;
                out.cond_c_failing_point = y;
                break;
            }
        }
    }
    return out;
}

SmallConditions small_conditions(const BilinearSystem& sys, const Limits& limits) {
    const Field& f = sys.field();
    const std::uint64_t q = f.q();
    SmallConditions out;
    out.mxs = true;  // S and T are products of full matrix algebras by construction
    if (sys.components().empty()) {
        out.both = out.either = true;
        return out;
    }
    const ExpandedSystem x = sys.expand();

    std::vector<std::size_t> off_b, off_c;
    {
        std::size_t ob = 0, oc = 0;
        for (std::size_t i = 0; i < sys.s_block_count(); ++i) {
            off_b.push_back(ob);
            ob += sys.s_sizes()[i] * sys.b_mult()[i];
        }
        for (std::size_t j = 0; j < sys.t_block_count(); ++j) {
            off_c.push_back(oc);
            oc += sys.t_sizes()[j] * sys.c_mult()[j];
        }
    }

    out.both = out.either = true;
    for (const auto& comp : sys.components()) {
        const std::size_t j = comp.t_block, i = comp.s_block;
        const std::size_t t = sys.t_sizes()[j], s = sys.s_sizes()[i];
        const std::size_t beta = sys.b_mult()[i], gamma = sys.c_mult()[j];
        const auto& coords = x.block_coords[j][i];
        const std::size_t d = coords.size();
        const std::uint64_t count = (checked_pow(q, static_cast<unsigned>(d)) - 1) / (q - 1);
        if (count > limits.elements)
            throw BudgetExceeded("block (" + std::to_string(j) + "," + std::to_string(i) + ") has " +
                                 std::to_string(count) + " elements up to scalars");

        // The image of a map supported on this block lies in a simple submodule iff all
        // of its k^{c_mult} slices are proportional; dually for a maximal kernel.
        auto image_simple = [&](const Mat& m) {
            std::vector<Vec> slices;
            for (std::size_t col = 0; col < m.cols(); ++col)
                for (std::size_t u = 0; u < t; ++u) {
                    Vec v(gamma);
                    for (std::size_t r = 0; r < gamma; ++r) v[r] = m.at(off_c[j] + u * gamma + r, col);
                    if (!is_zero(v)) slices.push_back(std::move(v));
                }
            return slices.empty() || Subspace::span(f, gamma, slices).dim() == 1;
        };
        auto kernel_maximal = [&](const Mat& m) {
            std::vector<Vec> slices;
            for (std::size_t row = 0; row < m.rows(); ++row)
                for (std::size_t w = 0; w < s; ++w) {
                    Vec v(beta);
                    for (std::size_t c = 0; c < beta; ++c) v[c] = m.at(row, off_b[i] + w * beta + c);
                    if (!is_zero(v)) slices.push_back(std::move(v));
                }
            return slices.empty() || Subspace::span(f, beta, slices).dim() == 1;
        };

        struct Found {
            std::optional<bool> kernel, image;
        };
        std::map<Subspace, Found> cache;
        auto tas = [&](const Vec& a) {
            std::vector<Vec> gens;
            for (const auto& tu : x.t_units) {
                if (tu.block != j) continue;
                const Vec ta = tu.on_a.apply(a);
                for (const auto& su : x.s_units)
                    if (su.block == i) gens.push_back(su.on_a.apply(ta));
            }
            return Subspace::span(f, x.dim_a, gens);
        };
        auto search = [&](const Subspace& sp, bool want_kernel) {
            auto& slot = cache[sp];
            auto& ans = want_kernel ? slot.kernel : slot.image;
            if (!ans) {
                if (checked_pow(q, static_cast<unsigned>(sp.dim())) > limits.elements)
                    throw BudgetExceeded("TaS too large to enumerate");
                bool any = false;
                for (const auto& p : sp.points()) {
                    const Mat m = evaluate(x, f, p);
                    if (want_kernel ? kernel_maximal(m) : image_simple(m)) {
                        any = true;
                        break;
                    }
                }
                ans = any;
            }
            return *ans;
        };

        bool image_to_kernel = true, kernel_to_image = true;
        for (const auto& local : projective_points(f, d)) {
            if (!image_to_kernel && !kernel_to_image) break;
            Vec a(x.dim_a, 0);
            for (std::size_t l = 0; l < d; ++l) a[coords[l]] = local[l];
            const Mat m = evaluate(x, f, a);
            const bool img = image_simple(m), ker = kernel_maximal(m);
            if (!img && !ker) continue;
            const Subspace sp = tas(a);
            if (img && image_to_kernel && !search(sp, true)) image_to_kernel = false;
            if (ker && kernel_to_image && !search(sp, false)) kernel_to_image = false;
        }
        out.pairs.push_back({j, i, image_to_kernel, kernel_to_image});
        out.both = out.both && image_to_kernel && kernel_to_image;
        out.either = out.either && (image_to_kernel || kernel_to_image);
    }
    if (out.mxs && !out.both) throw TheoremViolation("split system fails the two-sided transfer condition");
    if (out.both && !out.either) throw TheoremViolation("transfer conditions are inconsistent");
    return out;
}

// ---------------------------------------------------------------------------
// N-strong

MapFamily left_family(const BilinearSystem& sys, std::size_t t_block) {
    MapFamily w{sys.field(), 0, sys.c_mult().at(t_block), {}};
    for (std::size_t i = 0; i < sys.s_block_count(); ++i)
        if (!sys.maps(t_block, i).empty()) w.parts.push_back(sys.maps(t_block, i));
    return w;
}

MapFamily right_family(const BilinearSystem& sys, std::size_t s_block) {
    MapFamily w{sys.field(), sys.b_mult().at(s_block), 0, {}};
    for (std::size_t j = 0; j < sys.t_block_count(); ++j)
        if (!sys.maps(j, s_block).empty()) w.parts.push_back(sys.maps(j, s_block));
    return w;
}

MapFamily block_family(const BilinearSystem& sys, std::size_t t_block, std::size_t s_block) {
    MapFamily w{sys.field(), sys.b_mult().at(s_block), sys.c_mult().at(t_block), {}};
    if (!sys.maps(t_block, s_block).empty()) w.parts.push_back(sys.maps(t_block, s_block));
    return w;
}

StrengthResult n_strong(const MapFamily& w, Side side, double n, const Limits& limits) {
    const Field& f = w.field;
    StrengthResult out;
    const std::size_t dim = side == Side::left ? w.codomain_dim : w.domain_dim;
    if (dim == 0) return out;  // no simple submodule or maximal kernel to offer

    const auto points = projective_points(f, dim);
    const auto hyperplanes = Subspace::full(f, dim).hyperplanes();

    if (side == Side::left) {
        // Target: points that are simple images. Blocking sets: hyperplanes.
        Bits target = make_bits(points.size());
        for (std::size_t p = 0; p < points.size(); ++p) {
            const Subspace ps = point_space(f, points[p]);
            for (const auto& part : w.parts)
                if (map_into(part, ps)) {
                    set_bit(target, p);
                    break;
                }
        }
        std::vector<Bits> sets;
        for (const auto& h : hyperplanes) {
            Bits b = make_bits(points.size());
            for (std::size_t p = 0; p < points.size(); ++p)
                if (h.contains(points[p])) set_bit(b, p);
            sets.push_back(std::move(b));
        }
        const auto r = find_cover(sets, target, family_size(n, sets.size()), limits.combinations);
        out.families_checked = r.checked;
        out.strong = !r.family;
        if (r.family)
            for (auto i : *r.family) out.blocking_family.push_back(hyperplanes[i]);
    } else {
        // Target: hyperplanes that are kernels. Blocking sets: points, each hitting the
        // kernels that contain it.
        Bits target = make_bits(hyperplanes.size());
        for (std::size_t h = 0; h < hyperplanes.size(); ++h)
            for (const auto& part : w.parts)
                if (map_killing(part, hyperplanes[h])) {
                    set_bit(target, h);
                    break;
                }
        std::vector<Bits> sets;
        for (const auto& p : points) {
            Bits b = make_bits(hyperplanes.size());
            for (std::size_t h = 0; h < hyperplanes.size(); ++h)
                if (hyperplanes[h].contains(p)) set_bit(b, h);
            sets.push_back(std::move(b));
        }
        const auto r = find_cover(sets, target, family_size(n, sets.size()), limits.combinations);
        out.families_checked = r.checked;
        out.strong = !r.family;
        if (r.family)
            for (auto i : *r.family) out.blocking_family.push_back(point_space(f, points[i]));
    }
    return out;
}

UnionSplitResult union_split(const MapFamily& w, Side side, double n, const Limits& limits) {
    UnionSplitResult out;
    const auto whole = n_strong(w, side, n, limits);
    out.union_strong = whole.strong;
    if (!whole.strong) {
        out.union_blocking_family = whole.blocking_family;
        return out;
    }
    const double share = n / static_cast<double>(w.parts.size());
    for (std::size_t i = 0; i < w.parts.size(); ++i) {
        MapFamily single{w.field, w.domain_dim, w.codomain_dim, {w.parts[i]}};
        if (n_strong(single, side, share, limits).strong) {
            out.index = i;
            return out;
        }
    }
    throw TheoremViolation("union is N-strong but no part is N/d-strong",
                           "N=" + std::to_string(n) + " d=" + std::to_string(w.parts.size()));
}

CoverCheck no_union_cover(const Field& field, std::size_t dim, std::size_t n, const Limits& limits) {
    if (dim == 0) throw PreconditionError("the zero space has no proper or maximal subspaces to test");
    CoverCheck out;
    out.family_size = n;
    const auto points = projective_points(field, dim);
    const auto hyperplanes = Subspace::full(field, dim).hyperplanes();

    // Every proper subspace lies in a hyperplane and every nonzero one contains a point,
    // so those are the only members worth trying; a covering family of fewer than n
    // members extends to one of exactly min(n, available).
    Bits all_points = make_bits(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) set_bit(all_points, p);
    std::vector<Bits> h_sets;
    for (const auto& h : hyperplanes) {
        Bits b = make_bits(points.size());
        for (std::size_t p = 0; p < points.size(); ++p)
            if (h.contains(points[p])) set_bit(b, p);
        h_sets.push_back(std::move(b));
    }
    const auto c1 = find_cover(h_sets, all_points, std::min(n, hyperplanes.size()), limits.combinations);
    out.no_cover_by_proper = !c1.family;
    if (c1.family)
        for (auto i : *c1.family) out.covering_family.push_back(hyperplanes[i]);

    Bits all_h = make_bits(hyperplanes.size());
    for (std::size_t h = 0; h < hyperplanes.size(); ++h) set_bit(all_h, h);
    std::vector<Bits> p_sets;
    for (const auto& p : points) {
        Bits b = make_bits(hyperplanes.size());
        for (std::size_t h = 0; h < hyperplanes.size(); ++h)
            if (hyperplanes[h].contains(p)) set_bit(b, h);
        p_sets.push_back(std::move(b));
    }
    const auto c2 = find_cover(p_sets, all_h, std::min(n, points.size()), limits.combinations);
    out.no_cover_of_maximals = !c2.family;
    if (c2.family)
        for (auto i : *c2.family) out.transversal_family.push_back(point_space(field, points[i]));

    if (n <= field.q() && !(out.no_cover_by_proper && out.no_cover_of_maximals))
        throw TheoremViolation("a family of at most q subspaces covers",
                               "q=" + std::to_string(field.q()) + " dim=" + std::to_string(dim) +
                                   " n=" + std::to_string(n));
    return out;
}

// ---------------------------------------------------------------------------
// Graph and the main inequality for systems

StrengthBudget strength_budget(const BilinearSystem& sys) {
    StrengthBudget b;
    b.n_s = b.n_t = sys.field().q();
    for (std::size_t j = 0; j < sys.t_block_count(); ++j) {
        std::size_t fan = 0;
        for (std::size_t i = 0; i < sys.s_block_count(); ++i) fan += !sys.maps(j, i).empty();
        b.d_t = std::max(b.d_t, fan);
    }
    for (std::size_t i = 0; i < sys.s_block_count(); ++i) {
        std::size_t fan = 0;
        for (std::size_t j = 0; j < sys.t_block_count(); ++j) fan += !sys.maps(j, i).empty();
        b.d_s = std::max(b.d_s, fan);
    }
    for (auto x : sys.b_mult()) b.l_s = std::max(b.l_s, x);
    for (auto x : sys.c_mult()) b.l_t = std::max(b.l_t, x);
    b.card_d_ok = b.n_t >= b.d_t * b.l_s && b.n_s >= b.d_s * b.l_t;
    return b;
}

SocleGraph system_graph(const BilinearSystem& sys) {
    SocleGraph g;
    for (std::size_t j = 0; j < sys.t_block_count(); ++j)
        if (sys.c_mult()[j] > 0) g.left_vertices.push_back(j);
    for (std::size_t i = 0; i < sys.s_block_count(); ++i)
        if (sys.b_mult()[i] > 0) g.right_vertices.push_back(i);
    for (const auto& c : sys.components()) g.edges.push_back({c.t_block, c.s_block, c.maps.size()});
    return g;
}

Prop41Report prop41_check(const BilinearSystem& sys, const Limits& limits) {
    Prop41Report r;
    r.predicates = predicates(sys);
    r.small = small_conditions(sys, limits);
    r.budget = strength_budget(sys);
    r.graph = system_graph(sys);
    r.length_b = sys.length_b();
    r.length_c = sys.length_c();
    r.length_a = sys.length_a();
    r.lhs = static_cast<long>(r.length_b + r.length_c);
    r.rhs = static_cast<long>(r.length_a) + r.graph.chi();
    r.holds = r.lhs <= r.rhs;
    r.hypotheses = {r.predicates.nondeg, r.predicates.cond_b, r.predicates.cond_c, r.small.either, r.budget.card_d_ok};
    if (r.hypotheses.all() && !r.holds)
        throw TheoremViolation("system meets every hypothesis but lt(B)+lt(C) > lt(A)+chi",
                               "lhs=" + std::to_string(r.lhs) + " rhs=" + std::to_string(r.rhs));
    return r;
}

// ---------------------------------------------------------------------------
// Relative strength

namespace {

struct RelativeSearch {
    const MapFamily& w;
    double n;
    const Limits& limits;
    std::map<Subspace, bool> memo;

    bool strong(const Subspace& y) {
        if (auto it = memo.find(y); it != memo.end()) return it->second;
        if (memo.size() >= limits.subspaces) throw BudgetExceeded("relative strength recursion exceeded the subspace cap");
        bool result;
        if (y.dim() == 1) {
            result = false;
            for (const auto& part : w.parts)
                if (map_into(part, y)) {
                    result = true;
                    break;
                }
        } else {
            result = true;
            const auto above = y.subspaces(y.dim() - 1);
            for (const auto& below : y.subspaces(y.dim() - 2)) {
                std::size_t count = 0;
                for (const auto& z : above)
                    if (z.contains(below) && strong(z)) ++count;
                if (!(static_cast<double>(count) > n)) {
                    result = false;
                    break;
                }
            }
        }
        memo.emplace(y, result);
        return result;
    }
};

}  // namespace

bool relative_n_strong(const MapFamily& w, const Subspace& y_prime, double n, const Limits& limits) {
    if (y_prime.dim() == 0) throw PreconditionError("relative strength needs a nonzero submodule");
    if (y_prime.ambient_dim() != w.codomain_dim) throw PreconditionError("Y' does not live in the codomain");
    RelativeSearch search{w, n, limits, {}};
    return search.strong(y_prime);
}

}  // namespace soclelab

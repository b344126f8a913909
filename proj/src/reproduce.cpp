#include "soclelab/reproduce.hpp"

#include <chrono>
#include <map>
#include <iomanip>
#include <sstream>

#include "soclelab/gallery.hpp"

namespace soclelab::reproduce {
namespace {

using Clock = std::chrono::steady_clock;

Json dims_json(const std::vector<std::uint64_t>& v) {
    Json out = Json::array();
    for (auto x : v) out.push_back(x);
    return out;
}

// ---- criterion 1: exhaustive coverage bound ----

CriterionResult coverage_bound(const Options& opt) {
    CriterionResult r;
    Limits limits = opt.limits;
    limits.threads = 1;
    struct Case {
        std::size_t m, n;
        unsigned q;
    };
    bool ok = true;
    Json cases = Json::array();
    for (Case c : {Case{2, 2, 2}, Case{2, 3, 2}, Case{3, 2, 2}, Case{2, 2, 3}}) {
        const SearchResult s = search_minimal(c.m, c.n, Field::of_order(c.q), limits);
        std::optional<std::size_t> smallest;
        for (std::size_t k = 0; k < s.satisfying_by_dim.size(); ++k)
            if (s.satisfying_by_dim[k] > 0 && !smallest) smallest = k;
        const bool good = s.complete && !s.bound_counterexample && smallest && *smallest >= c.m + c.n - 1;
        ok = ok && good;
        cases.push_back(Json{{"m", c.m},
                             {"n", c.n},
                             {"q", c.q},
                             {"subspaces", s.total},
                             {"examined", s.examined},
                             {"complete", s.complete},
                             {"satisfying_by_dim", dims_json(s.satisfying_by_dim)},
                             {"smallest_satisfying_dim", smallest ? Json(*smallest) : Json()},
                             {"bound", c.m + c.n - 1},
                             {"counterexample", s.bound_counterexample ? io::to_json(*s.bound_counterexample) : Json()},
                             {"minimal_found", s.minimal.size()}});
    }
    r.details = Json{{"cases", cases}};
    r.verdict = ok ? "pass" : "fail";
    return r;
}

// ---- criterion 2: cross spaces are tight ----

CriterionResult cross_tightness(const Options&) {
    CriterionResult r;
    bool ok = true;
    std::size_t checked = 0;
    Json failures = Json::array();
    for (unsigned q : {2u, 3u})
        for (std::size_t m = 1; m <= 4; ++m)
            for (std::size_t n = 1; n <= 4; ++n) {
                const TensorSubspace a = make_cross(m, n, Field::of_order(q));
                const CoverageReport rep = check_bound(a);
                ++checked;
                if (a.dim() != m + n - 1 || !rep.cond_b.holds || !rep.cond_c.holds) {
                    ok = false;
                    failures.push_back(Json{{"m", m}, {"n", n}, {"q", q}, {"dim", a.dim()}});
                }
            }
    r.details = Json{{"checked", checked}, {"failures", failures}};
    r.verdict = ok ? "pass" : "fail";
    return r;
}

// ---- criterion 3: corner family minimality ----

CriterionResult corner_minimality(const Options&) {
    CriterionResult r;
    const TensorSubspace a = make_corner_family(3, 3, 2, Field::of_order(3));
    const MinimalityResult ma = check_minimal(a);
    const TensorSubspace b = make_corner_family(3, 3, 3, Field::of_order(2));
    const MinimalityResult mb = check_minimal(b);
    bool witness_ok = false;
    Json witness;
    std::optional<std::size_t> minimal_below;
    if (mb.violating_hyperplane) {
        const TensorSubspace& h = *mb.violating_hyperplane;
        witness_ok = h.dim() < b.dim() && b.flat().contains(h.flat()) && satisfies_both(h);
        witness = io::to_json(h);
        minimal_below = descend_to_minimal(h).dim();
    }
    r.details = Json{{"t2_q3", Json{{"dim", a.dim()}, {"minimal", ma.minimal}}},
                     {"t3_q2", Json{{"dim", b.dim()},
                                    {"minimal", mb.minimal},
                                    {"witness_dim", mb.violating_hyperplane ? Json(mb.violating_hyperplane->dim()) : Json()},
                                    {"witness_verified", witness_ok},
                                    {"minimal_subspace_below_dim", minimal_below ? Json(*minimal_below) : Json()},
                                    {"witness", witness}}}};
    r.verdict = ma.minimal && !mb.minimal && witness_ok ? "pass" : "fail";
    return r;
}

// ---- criterion 4: the small-field counterexamples ----

CriterionResult small_field_counterexamples(const Options& opt) {
    CriterionResult r;
    const Prop41Report s = prop41_check(make_small_field_system(Field::of_order(2), 2, opt.limits), opt.limits);
    const auto h = s.hypotheses;
    const bool sys_ok = s.lhs == 5 && s.rhs == 4 && !s.holds && h.nondeg && h.cond_b && h.cond_c && h.small_either &&
                        !h.card_d && s.budget.n_t == 2 && s.budget.d_t == 3 && s.budget.l_s == 1;

    const auto ex = make_4x4_example();
    const ModuleReport m = main_check(ex.module, opt.limits);
    const bool mod_ok = m.faithful && m.no_faithful_max_submodule && m.no_faithful_simple_quotient && m.top_length == 3 &&
                        m.socle_length == 2 && m.socle_bimodule_length == 3 && m.chi == 1 && m.lhs == 5 && m.rhs == 4 &&
                        !m.holds;
    r.details = Json{{"system",
                      Json{{"lhs", s.lhs},
                           {"rhs", s.rhs},
                           {"holds", s.holds},
                           {"hypotheses", Json{{"nondeg", h.nondeg},
                                               {"cond_b", h.cond_b},
                                               {"cond_c", h.cond_c},
                                               {"small_either", h.small_either},
                                               {"card_d", h.card_d}}},
                           {"N_T", s.budget.n_t},
                           {"d_T", s.budget.d_t},
                           {"l_S", s.budget.l_s}}},
                     {"module",
                      Json{{"faithful", m.faithful},
                           {"minimal", m.no_faithful_max_submodule && m.no_faithful_simple_quotient},
                           {"top_length", m.top_length},
                           {"socle_length", m.socle_length},
                           {"socle_bimodule_length", m.socle_bimodule_length},
                           {"chi", m.chi},
                           {"lhs", m.lhs},
                           {"rhs", m.rhs},
                           {"holds", m.holds}}}};
    r.verdict = sys_ok && mod_ok ? "pass" : "fail";
    r.counterexample = true;
    return r;
}

// ---- criterion 5: socle closed forms ----

Subspace matrix_units_span(const Algebra& r, const std::vector<std::pair<std::size_t, std::size_t>>& units) {
    const auto& basis = *r.matrix_basis();
    const std::size_t n = basis.front().rows();
    std::vector<Vec> vs;
    for (auto [i, j] : units) {
        const Mat target = Mat::unit(r.field(), n, n, i, j);
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (basis[k] == target) {
                Vec v(r.dim(), 0);
                v[k] = 1;
                vs.push_back(v);
            }
    }
    if (vs.size() != units.size()) throw TheoremViolation("matrix unit missing from a matrix basis");
    return Subspace::span(r.field(), r.dim(), vs);
}

CriterionResult socle_closed_forms(const Options& opt) {
    CriterionResult r;
    bool ok = true;
    Json rows = Json::array();
    for (unsigned q : {2u, 3u})
        for (std::size_t n = 1; n <= 4; ++n) {
            const Field f = Field::of_order(q);
            const Algebra t = make_triangular(n, f);
            const Socles s = socles(t, opt.limits);
            std::vector<std::pair<std::size_t, std::size_t>> top, last;
            for (std::size_t j = 0; j < n; ++j) top.push_back({0, j});
            for (std::size_t i = 0; i < n; ++i) last.push_back({i, n - 1});
            const bool tri_ok = s.left.dim() == n && s.right.dim() == n && s.two_sided.dim() == 1 &&
                                s.left == matrix_units_span(t, top) && s.right == matrix_units_span(t, last) &&
                                s.two_sided == matrix_units_span(t, {{0, n - 1}});
            const Algebra full = make_full_matrix(n, f);
            const std::size_t full_len = bimodule_length(full, socles(full, opt.limits).two_sided);
            ok = ok && tri_ok && full_len == 1;
            rows.push_back(Json{{"q", q},
                                {"n", n},
                                {"left", s.left.dim()},
                                {"right", s.right.dim()},
                                {"two_sided", s.two_sided.dim()},
                                {"closed_forms", tri_ok},
                                {"full_matrix_socle_length", full_len}});
        }
    r.details = Json{{"cases", rows}};
    r.verdict = ok ? "pass" : "fail";
    return r;
}

// ---- criterion 6: radical oracle ----

CriterionResult radical_agreement(const Options& opt) {
    CriterionResult r;
    bool ok = true;
    std::size_t checked = 0, skipped = 0;
    Json mismatches = Json::array();
    for (const auto& a : gallery_algebras()) {
        if (checked_pow(a.algebra.field().q(), static_cast<unsigned>(a.algebra.dim())) > (1u << 16)) {
            ++skipped;
            continue;
        }
        Limits limits = opt.limits;
        limits.radical_elements = std::max<std::uint64_t>(limits.radical_elements, 1u << 16);
        const bool same = radical_bruteforce(a.algebra, limits) == a.algebra.certificate().radical;
        ++checked;
        if (!same) {
            ok = false;
            mismatches.push_back(a.name);
        }
    }
    r.details = Json{{"checked", checked}, {"skipped_over_cap", skipped}, {"mismatches", mismatches}};
    r.verdict = ok && checked > 0 ? "pass" : "fail";
    return r;
}

// ---- criterion 7: twisted rings ----

CriterionResult twisted_centrality(const Options& opt) {
    CriterionResult r;
    bool ok = true;
    Json rows = Json::array();
    for (unsigned p : {2u, 3u})
        for (unsigned d : {1u, 2u})
            for (std::size_t n = 1; n <= 4; ++n) {
                const bool central = socle_is_central(make_twisted_truncated(p, d, n), opt.limits);
                ok = ok && central == (n % d == 0);
                rows.push_back(Json{{"p", p}, {"d", d}, {"n", n}, {"central", central}});
            }
    r.details = Json{{"cases", rows}};
    r.verdict = ok ? "pass" : "fail";
    return r;
}

// ---- criterion 8: local inequality census ----

CriterionResult local_census(const Options& opt) {
    CriterionResult r;
    bool ok = true;
    Json rings = Json::array();
    for (const auto& name : census_rings()) {
        const ModuleCensus c = local_inequality_census(name, 4, opt.limits);
        ok = ok && c.violations.empty() && c.minimal > 0;
        rings.push_back(Json{{"ring", c.ring},
                             {"tuples", c.tuples},
                             {"modules", c.modules},
                             {"faithful", c.faithful},
                             {"minimal_faithful", c.minimal},
                             {"max_lhs", c.max_lhs},
                             {"rhs", c.rhs},
                             {"violations", c.violations}});
    }
    r.details = Json{{"max_dim", 4}, {"rings", rings}};
    r.verdict = ok ? "pass" : "violation";
    return r;
}

// ---- criterion 9: random systems never violate ----

CriterionResult random_systems(const Options& opt) {
    CriterionResult r;
    std::mt19937_64 rng(opt.seed);
    std::size_t accepted = 0, generated = 0, violations = 0, holds_strictly = 0;
    std::map<unsigned, std::size_t> per_q;
    Json first_violation;
    const std::vector<unsigned> qs{4, 5, 7, 9};
    const std::size_t target = 500;
    while (accepted < target && generated < 50 * target) {
        const unsigned q = qs[generated % qs.size()];
        ++generated;
        const BilinearSystem sys = random_split_system(Field::of_order(q), rng);
        Prop41Report rep;
        try {
            rep = prop41_check(sys, opt.limits);
        } catch (const TheoremViolation& e) {
            ++violations;
            if (first_violation.is_null()) first_violation = Json{{"message", e.what()}, {"system", io::to_json(sys)}};
            continue;
        }
        if (!rep.hypotheses.all()) continue;
        ++accepted;
        ++per_q[q];
        if (rep.lhs < rep.rhs) ++holds_strictly;
        if (!rep.holds) {
            ++violations;
            if (first_violation.is_null()) first_violation = io::to_json(sys);
        }
    }
    Json by_q = Json::object();
    for (auto [q, n] : per_q) by_q[std::to_string(q)] = n;
    r.details = Json{{"seed", opt.seed},
                     {"generated", generated},
                     {"hypotheses_met", accepted},
                     {"per_q", by_q},
                     {"strict", holds_strictly},
                     {"violations", violations},
                     {"first_violation", first_violation}};
    r.verdict = violations ? "violation" : (accepted >= target ? "pass" : "fail");
    return r;
}

// ---- criterion 10: shrink bounds ----

CriterionResult shrink_properties(const Options& opt) {
    CriterionResult r;
    const auto corpus = faithful_module_corpus(220, 10, opt.seed);
    std::size_t checked = 0, violations = 0;
    std::size_t strictly_smaller = 0;
    Json first;
    for (const auto& m : corpus) {
        const std::size_t n = bimodule_length(m.algebra(), socles(m.algebra(), opt.limits).two_sided);
        auto fail = [&](const char* what) {
            ++violations;
            if (first.is_null()) first = Json{{"check", what}, {"module", io::to_json(m)}};
        };
        try {
            const ShrinkResult a = shrink_submodule(m, opt.limits);
            if (!faithful(a.module).faithful || top_socle(a.module).top_length > n) fail("submodule");
            const ShrinkResult b = shrink_quotient(m, opt.limits);
            if (!faithful(b.module).faithful || top_socle(b.module).socle_length > n) fail("quotient");
            const ShrinkResult c = shrink_subfactor(m, opt.limits);
            const TopSocle ts = top_socle(c.module);
            if (!faithful(c.module).faithful || ts.top_length > n || ts.socle_length > n) fail("subfactor");
            if (c.module.dim() < m.dim()) ++strictly_smaller;
        } catch (const TheoremViolation& e) {
            fail(e.what());
        }
        ++checked;
    }
    r.details = Json{{"seed", opt.seed},
                     {"faithful_modules", checked},
                     {"shrunk_strictly", strictly_smaller},
                     {"violations", violations},
                     {"first_violation", first}};
    r.verdict = violations ? "violation" : (checked >= 200 ? "pass" : "fail");
    return r;
}

// ---- criterion 11: strength predicates ----

std::vector<Mat> nonzero_maps_up_to_scalars(const Field& f, std::size_t rows, std::size_t cols) {
    std::vector<Mat> out;
    for (const auto& p : projective_points(f, rows * cols)) out.emplace_back(f, rows, cols, p);
    return out;
}

CriterionResult strength_predicates(const Options& opt) {
    CriterionResult r;
    const BilinearSystem sys = make_small_field_system(Field::of_order(2), 2, opt.limits);
    const bool whole = n_strong(left_family(sys, 0), Side::left, 2, opt.limits).strong;
    Json blocks = Json::array();
    bool no_block = true;
    for (std::size_t i = 0; i < sys.s_block_count(); ++i) {
        const bool s = n_strong(block_family(sys, 0, i), Side::left, 1, opt.limits).strong;
        blocks.push_back(s);
        no_block = no_block && !s;
    }

    // Covering law: no family of at most q proper subspaces covers F_q^dim.
    std::size_t cover_cases = 0;
    bool cover_ok = true;
    for (unsigned q : {2u, 3u})
        for (std::size_t dim = 1; dim <= 3; ++dim)
            for (std::size_t n = 1; n <= q; ++n) {
                const CoverCheck c = no_union_cover(Field::of_order(q), dim, n, opt.limits);
                cover_ok = cover_ok && c.no_cover_by_proper && c.no_cover_of_maximals;
                ++cover_cases;
            }

    // Union law on every family of one or two single-map parts, Hom spaces of dimension <= 4.
    std::size_t union_cases = 0, union_strong = 0;
    bool union_ok = true;
    for (unsigned q : {2u, 3u}) {
        const Field f = Field::of_order(q);
        for (std::size_t y = 1; y <= 3; ++y)
            for (std::size_t x = 1; x <= 3; ++x) {
                if (x * y > 4) continue;
                const auto maps = nonzero_maps_up_to_scalars(f, y, x);
                for (std::size_t i = 0; i < maps.size(); ++i)
                    for (std::size_t j = i; j < maps.size(); ++j) {
                        MapFamily w{f, x, y, {{maps[i]}}};
                        if (j != i) w.parts.push_back({maps[j]});
                        for (Side side : {Side::left, Side::right})
                            for (double n : {1.0, 2.0}) {
                                const UnionSplitResult u = union_split(w, side, n, opt.limits);
                                ++union_cases;
                                if (!u.union_strong) continue;
                                ++union_strong;
                                if (!u.index) {
                                    union_ok = false;
                                    continue;
                                }
                                const MapFamily single{f, x, y, {w.parts[*u.index]}};
                                union_ok = union_ok &&
                                           n_strong(single, side, n / static_cast<double>(w.parts.size()), opt.limits).strong;
                            }
                    }
            }
    }
    r.details = Json{{"system_left_2_strong", whole},
                     {"blocks_left_1_strong", blocks},
                     {"covering_law_cases", cover_cases},
                     {"covering_law_holds", cover_ok},
                     {"union_law_cases", union_cases},
                     {"union_law_strong_unions", union_strong},
                     {"union_law_holds", union_ok}};
    r.verdict = whole && no_block && cover_ok && union_ok ? "pass" : "fail";
    return r;
}

struct Spec {
    const char* title;
    double time_limit;
    CriterionResult (*fn)(const Options&);
};

const Spec kSpecs[kCriterionCount] = {
    {"coverage bound on all subspaces of small tensor spaces", 60, coverage_bound},
    {"cross spaces have dimension m + n - 1 and satisfy both conditions", 0, cross_tightness},
    {"corner family minimal at t=2 over F_3, not minimal at t=3 over F_2", 60, corner_minimality},
    {"small-field system and 4 x 4 module reproduce 5 > 4", 0, small_field_counterexamples},
    {"triangular and full matrix socle closed forms", 0, socle_closed_forms},
    {"certified radical equals the quasi-regularity radical", 120, radical_agreement},
    {"twisted truncated socle central iff d divides n", 0, twisted_centrality},
    {"local inequality on every minimal faithful module of dim <= 4", 300, local_census},
    {"system inequality on random split systems meeting all hypotheses", 0, random_systems},
    {"shrink operations keep faithfulness and meet the length bound", 180, shrink_properties},
    {"strength of the small-field system and the union and covering laws", 0, strength_predicates},
};

}  // namespace

Json CriterionResult::to_json(bool timing) const {
    Json j{{"id", id}, {"title", title}, {"verdict", verdict}, {"counterexample", counterexample}, {"details", details}};
    if (time_limit > 0) j["time_limit_s"] = time_limit;
    if (timing) j["seconds"] = seconds;
    return j;
}

CriterionResult run_criterion(int id, const Options& options) {
    if (id < 1 || id > kCriterionCount) throw InputError("no criterion " + std::to_string(id));
    const Spec& spec = kSpecs[id - 1];
    CriterionResult r;
    const auto start = Clock::now();
    try {
        r = spec.fn(options);
    } catch (const TheoremViolation& e) {
        r.verdict = "violation";
        r.details = Json{{"error", e.what()}, {"witness", e.witness()}};
    } catch (const BudgetExceeded& e) {
        r.verdict = "budget";
        r.details = Json{{"error", e.what()}};
    } catch (const Error& e) {
        r.verdict = "fail";
        r.details = Json{{"error", e.what()}};
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r.id = id;
    r.title = spec.title;
    r.time_limit = spec.time_limit;
    if (r.passed() && spec.time_limit > 0 && r.seconds > spec.time_limit) {
        r.verdict = "budget";
        r.details["time_limit_exceeded"] = true;
    }
    return r;
}

const std::vector<std::string>& targets() {
    static const std::vector<std::string> t{"all", "paper-2", "paper-4", "paper-5.1", "paper-6"};
    return t;
}

std::vector<int> battery(const std::string& target) {
    if (target == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    if (target == "paper-2") return {1, 2, 3, 5, 6, 7, 8};
    if (target == "paper-4") return {9, 11};
    if (target == "paper-5.1") return {4};
    if (target == "paper-6") return {10};
    throw InputError("unknown reproduce target '" + target + "'");
}

Bundle run_battery(const std::string& target, const Options& options) {
    Bundle b{target, {}};
    for (int id : battery(target)) b.results.push_back(run_criterion(id, options));
    return b;
}

std::string Bundle::verdict() const {
    bool budget = false, counterexample = false;
    for (const auto& r : results) {
        if (r.verdict == "violation" || r.verdict == "fail") return "violation";
        budget = budget || r.verdict == "budget";
        counterexample = counterexample || r.counterexample;
    }
    if (budget) return "budget";
    return counterexample ? "counterexample" : "pass";
}

int Bundle::exit_code() const {
    const std::string v = verdict();
    if (v == "violation") return 4;
    if (v == "budget") return 3;
    if (v == "counterexample") return 1;
    return 0;
}

Json Bundle::to_json(bool timing) const {
    Json rs = Json::array();
    std::size_t passed = 0;
    for (const auto& r : results) {
        rs.push_back(r.to_json(timing));
        passed += r.passed();
    }
    return Json{{"target", target}, {"verdict", verdict()}, {"passed", passed}, {"total", results.size()}, {"criteria", rs}};
}

std::string Bundle::table(bool timing) const {
    std::ostringstream os;
    os << std::left << std::setw(4) << "id" << std::setw(11) << "verdict" << (timing ? "seconds  " : "") << "criterion\n";
    for (const auto& r : results) {
        os << std::left << std::setw(4) << r.id << std::setw(11) << (r.counterexample && r.passed() ? "pass (cx)" : r.verdict);
        if (timing) os << std::setw(9) << std::fixed << std::setprecision(2) << r.seconds;
        os << r.title << '\n';
    }
    os << "overall: " << verdict() << '\n';
    return os.str();
}

// ---- corpora ----

std::vector<Mat> square_zero_matrices(const Field& f, std::size_t n) {
    const std::size_t cells = n * n;
    const std::uint64_t total = checked_pow(f.q(), static_cast<unsigned>(cells));
    if (total > (std::uint64_t{1} << 32)) throw BudgetExceeded("too many matrices to enumerate");
    std::vector<Elem> e(cells, 0);
    std::vector<Mat> out;
    const Elem top = static_cast<Elem>(f.q() - 1);
    for (std::uint64_t it = 0; it < total; ++it) {
        bool zero = true;
        for (std::size_t i = 0; i < n && zero; ++i)
            for (std::size_t j = 0; j < n && zero; ++j) {
                Elem s = 0;
                for (std::size_t k = 0; k < n; ++k) s = f.add(s, f.mul(e[i * n + k], e[k * n + j]));
                zero = s == 0;
            }
        if (zero) out.emplace_back(f, n, n, e);
        for (std::size_t c = 0; c < cells; ++c) {
            if (e[c] != top) {
                ++e[c];
                break;
            }
            e[c] = 0;
        }
    }
    return out;
}

namespace {

bool product_is_zero(const Field& f, std::size_t n, const Mat& x, const Mat& y) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Elem s = 0;
            for (std::size_t k = 0; k < n; ++k) s = f.add(s, f.mul(x.at(i, k), y.at(k, j)));
            if (s != 0) return false;
        }
    return true;
}

}  // namespace

const std::vector<std::string>& census_rings() {
    static const std::vector<std::string> r{"trunc2-F2", "trunc2-F3", "sqzero2-F2", "scalar-tri2-F2", "scalar-tri3-F2"};
    return r;
}

ModuleCensus local_inequality_census(const std::string& ring, std::size_t max_dim, const Limits& limits) {
    const Field f2 = Field::of_order(2);
    std::optional<Algebra> alg;
    enum { one_generator, commuting_pair, chain_pair } shape = one_generator;
    if (ring == "trunc2-F2") alg = make_truncated_polynomial(f2, 2);
    else if (ring == "trunc2-F3") alg = make_truncated_polynomial(Field::of_order(3), 2);
    else if (ring == "scalar-tri2-F2") alg = make_triangular(2, f2, true);
    else if (ring == "sqzero2-F2") {
        alg = make_square_zero(f2, 2);
        shape = commuting_pair;
    } else if (ring == "scalar-tri3-F2") {
        alg = make_triangular(3, f2, true);
        shape = chain_pair;
    } else {
        throw InputError("unknown census ring '" + ring + "'");
    }
    const Algebra& r = *alg;
    const Field& f = r.field();
    ModuleCensus census{ring, 0, 0, 0, 0, 0, static_cast<long>(socles(r, limits).two_sided.dim()) + 1, {}};

    auto consider = [&](std::vector<Mat> action) {
        const auto m = ModuleRep::try_make(r, std::move(action));
        if (!m) return;
        ++census.modules;
        if (!faithful(*m).faithful) return;
        ++census.faithful;
        if (!minimal_faithful(*m, limits).minimal()) return;
        ++census.minimal;
        try {
            const ModuleReport rep = gulliksen_check(*m, limits);
            census.max_lhs = std::max(census.max_lhs, rep.lhs);
        } catch (const TheoremViolation& e) {
            if (census.violations.size() < 5) census.violations.push_back(io::to_json(*m).dump());
        }
    };

    for (std::size_t n = 1; n <= max_dim; ++n) {
        const auto sz = square_zero_matrices(f, n);
        const Mat id = Mat::identity(f, n);
        if (shape == one_generator) {
            census.tuples += sz.size();
            for (const auto& x : sz) consider({id, x});
            continue;
        }
        census.tuples += static_cast<std::uint64_t>(sz.size()) * sz.size();
        for (const auto& x : sz)
            for (const auto& y : sz) {
                if (!product_is_zero(f, n, y, x)) continue;
                if (shape == commuting_pair) {
                    if (product_is_zero(f, n, x, y)) consider({id, x, y});
                } else {
                    // basis I, e12, e13, e23 with e12 e23 = e13
                    consider({id, x, x * y, y});
                }
            }
    }
    return census;
}

std::vector<ModuleRep> faithful_module_corpus(std::size_t count, std::size_t max_dim, std::uint64_t seed) {
    const Field f2 = Field::of_order(2), f3 = Field::of_order(3);
    const std::vector<Algebra> algebras{make_truncated_polynomial(f2, 2), make_truncated_polynomial(f3, 2),
                                        make_truncated_polynomial(f2, 3), make_square_zero(f2, 2),
                                        make_square_zero(f3, 2),          make_triangular(2, f2),
                                        make_triangular(2, f3),           make_triangular(3, f2),
                                        make_triangular(3, f2, true),     make_full_matrix(2, f2),
                                        make_4x4_example().ring};
    std::vector<ModuleRep> out;
    out.push_back(make_4x4_example().module);
    for (const auto& r : algebras) out.push_back(ModuleRep::regular(r));
    std::mt19937_64 rng(seed);
    auto random_vec = [&](const Field& f, std::size_t n) {
        Vec v(n);
        for (auto& x : v) x = static_cast<Elem>(rng() % f.q());
        return v;
    };
    for (std::size_t tries = 0; out.size() < count && tries < 200 * count; ++tries) {
        const Algebra& r = algebras[rng() % algebras.size()];
        ModuleRep free = ModuleRep::regular(r);
        const std::size_t copies = 1 + rng() % 3;
        for (std::size_t i = 1; i < copies; ++i) free = free.direct_sum(ModuleRep::regular(r));
        std::vector<Vec> gens;
        for (std::size_t g = 0, k = 1 + rng() % 3; g < k; ++g) gens.push_back(random_vec(r.field(), free.dim()));
        const Subspace sub = free.generate(gens);
        if (sub.is_zero() || sub.dim() > max_dim + 2) continue;
        ModuleRep m = free.restrict_to(sub);
        if (rng() % 3 == 0) {
            const Subspace kill = m.generate({random_vec(r.field(), m.dim())});
            if (kill.dim() < m.dim()) m = m.quotient(kill);
        }
        if (m.dim() == 0 || m.dim() > max_dim || !faithful(m).faithful) continue;
        out.push_back(std::move(m));
    }
    return out;
}

BilinearSystem random_split_system(const Field& f, std::mt19937_64& rng, std::uint64_t max_block_elements) {
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
        for (std::size_t i = 0; i < ns; ++i) {
            if (rng() % 4 == 0) continue;
            const std::size_t full = c[j] * b[i];
            std::size_t k_max = std::min<std::size_t>(full, 3);
            while (k_max > 1 && checked_pow(f.q(), static_cast<unsigned>(t[j] * s[i] * k_max)) > max_block_elements) --k_max;
            const std::size_t k = 1 + rng() % k_max;
            SystemComponent comp{j, i, {}};
            for (std::size_t a = 0; a < k; ++a) {
                Mat m(f, c[j], b[i]);
                for (std::size_t x = 0; x < c[j]; ++x)
                    for (std::size_t y = 0; y < b[i]; ++y) m.set(x, y, static_cast<Elem>(rng() % f.q()));
                comp.maps.push_back(std::move(m));
            }
            comps.push_back(std::move(comp));
        }
    return BilinearSystem(f, s, t, b, c, std::move(comps));
}

}  // namespace soclelab::reproduce

#include "soclelab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "soclelab/gallery.hpp"
#include "soclelab/io.hpp"
#include "soclelab/reproduce.hpp"

namespace soclelab::cli {
namespace {

using io::Json;
namespace fs = std::filesystem;

/// A finished command: verdict plus operation-specific details.
struct Outcome {
    std::string verdict = "pass";
    Json details = Json::object();
    int code = kPass;
    std::string table;  // optional rendering for --pretty
};

Outcome negative(Json details) { return {"counterexample", std::move(details), kNegative, {}}; }

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct Input {
    fs::path path;
    Json json;
    std::string hash;
};

Input load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Input r{path, {}, fnv1a64(ss.str())};
    try {
        r.json = Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return r;
}

Json graph_json(const SocleGraph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges) edges.push_back(Json{{"left", e.left}, {"right", e.right}, {"length", e.length}});
    return Json{{"left_vertices", g.left_vertices}, {"right_vertices", g.right_vertices}, {"edges", edges}, {"chi", g.chi()}};
}

Json condition_json(const Field& f, const ConditionResult& c) {
    Json j{{"holds", c.holds}};
    if (c.failing) j["failing_point"] = io::vec_to_json(f, *c.failing);
    return j;
}

std::vector<Subspace> first_n(const std::vector<Subspace>& v, std::size_t n) {
    return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
}

Json subspaces_json(const std::vector<Subspace>& v) {
    Json out = Json::array();
    for (const auto& s : v) out.push_back(io::to_json(s));
    return out;
}

// ---- cover ----

Outcome cover_check(const Input& in, bool minimal, const Limits& limits) {
    const TensorSubspace a = io::tensor_subspace_from_json(in.json, limits.max_field_order);
    const CoverageReport rep = check_bound(a, minimal);
    const Field& f = a.field();
    Json d{{"m", rep.m},
           {"n", rep.n},
           {"dim", rep.dim_a},
           {"cond_b", condition_json(f, rep.cond_b)},
           {"cond_c", condition_json(f, rep.cond_c)},
           {"bound", rep.m + rep.n - 1},
           {"bound_holds", rep.bound_holds},
           {"tight", rep.dim_a == rep.m + rep.n - 1}};
    if (rep.minimal) d["minimal"] = *rep.minimal;
    if (rep.violating_hyperplane) d["violating_hyperplane"] = io::to_json(*rep.violating_hyperplane);
    if (!rep.cond_b.holds || !rep.cond_c.holds || (rep.minimal && !*rep.minimal)) return negative(std::move(d));
    return {"pass", std::move(d), kPass, {}};
}

Outcome cover_search(std::size_t m, std::size_t n, unsigned q, const Limits& limits) {
    const SearchResult s = search_minimal(m, n, Field::of_order(q, limits.max_field_order), limits);
    Json minimal = Json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(s.minimal.size(), 100); ++i) minimal.push_back(io::to_json(s.minimal[i]));
    std::map<std::size_t, std::size_t> by_dim;
    for (const auto& a : s.minimal) ++by_dim[a.dim()];
    Json hist = Json::object();
    for (auto [k, v] : by_dim) hist[std::to_string(k)] = v;
    Json d{{"m", m},
           {"n", n},
           {"q", q},
           {"complete", s.complete},
           {"examined", s.examined},
           {"total", s.total},
           {"satisfying_by_dim", s.satisfying_by_dim},
           {"minimal_count", s.minimal.size()},
           {"minimal_by_dim", hist},
           {"minimal", minimal}};
    if (s.bound_counterexample) {
        d["bound_counterexample"] = io::to_json(*s.bound_counterexample);
        return {"violation", std::move(d), kViolation, {}};
    }
    if (!s.complete) return {"budget", std::move(d), kBudget, {}};
    return {"pass", std::move(d), kPass, {}};
}

// ---- algebra ----

Outcome algebra_analyze(const Input& in, const Limits& limits) {
    const Algebra r = io::algebra_from_json(in.json, limits.max_field_order);
    const AlgebraAnalysis a = analyze(r, limits);
    Json blocks = Json::array();
    if (r.has_certificate())
        for (const auto& b : r.certificate().blocks) blocks.push_back(b.size);
    Json d{{"dim", a.dim},
           {"radical_dim", a.radical.dim()},
           {"left_socle_dim", a.socles.left.dim()},
           {"right_socle_dim", a.socles.right.dim()},
           {"socle_dim", a.socles.two_sided.dim()},
           {"blocks", blocks},
           {"split", a.split},
           {"socle_central", a.socle_central}};
    if (a.graph) {
        d["graph"] = graph_json(*a.graph);
        d["chi"] = a.graph->chi();
    }
    if (a.socle_bimodule_length) d["socle_bimodule_length"] = *a.socle_bimodule_length;
    if (a.improved_bound) d["improved_bound"] = *a.improved_bound;
    if (a.radical_matches_bruteforce) d["radical_matches_bruteforce"] = *a.radical_matches_bruteforce;
    if (a.radical_matches_bruteforce && !*a.radical_matches_bruteforce)
        return {"violation", std::move(d), kViolation, {}};
    return {"pass", std::move(d), kPass, {}};
}

// ---- module ----

const char* reason_name(CheckPrecondition::Reason r) {
    switch (r) {
        case CheckPrecondition::Reason::not_split: return "not_split";
        case CheckPrecondition::Reason::not_local: return "not_local";
        case CheckPrecondition::Reason::socle_not_central: return "socle_not_central";
        case CheckPrecondition::Reason::not_faithful: return "not_faithful";
        case CheckPrecondition::Reason::not_minimal: return "not_minimal";
    }
    return "unknown";
}

Json module_report_json(const ModuleReport& r) {
    return Json{{"faithful", r.faithful},
                {"top_length", r.top_length},
                {"socle_length", r.socle_length},
                {"no_faithful_max_submodule", r.no_faithful_max_submodule},
                {"no_faithful_simple_quotient", r.no_faithful_simple_quotient},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"holds", r.holds}};
}

Outcome module_check(const Input& in, const Limits& limits) {
    const ModuleRep m = io::module_from_json(in.json, in.path.parent_path(), limits.max_field_order);
    Json d{{"dim", m.dim()}};
    try {
        const ModuleReport r = main_check(m, limits);
        Json main = module_report_json(r);
        main["socle_bimodule_length"] = r.socle_bimodule_length;
        main["chi"] = r.chi;
        main["improved_rhs"] = r.improved_rhs;
        main["hypotheses_met_except_field_size"] = r.hypotheses_met_except_field_size;
        d["main"] = main;
        if (is_split_local(m.algebra())) {
            try {
                d["local"] = module_report_json(gulliksen_check(m, limits));
            } catch (const CheckPrecondition& e) {
                d["local"] = Json{{"skipped", reason_name(e.reason())}};
            }
        }
        if (!r.holds) return negative(std::move(d));
        return {"pass", std::move(d), kPass, {}};
    } catch (const CheckPrecondition& e) {
        d["precondition"] = reason_name(e.reason());
        d["error"] = e.what();
        return {"input-error", std::move(d), kInput, {}};
    }
}

Outcome module_shrink(const Input& in, const std::string& mode, const std::string& out_path, const Limits& limits) {
    const ModuleRep m = io::module_from_json(in.json, in.path.parent_path(), limits.max_field_order);
    ShrinkResult s = mode == "sub"    ? shrink_submodule(m, limits)
                     : mode == "quot" ? shrink_quotient(m, limits)
                                      : shrink_subfactor(m, limits);
    const TopSocle ts = top_socle(s.module);
    Json d{{"mode", mode},
           {"input_dim", m.dim()},
           {"output_dim", s.module.dim()},
           {"top_length", ts.top_length},
           {"socle_length", ts.socle_length},
           {"bound", s.bound},
           {"parts", s.parts}};
    if (s.submodule) d["submodule"] = io::to_json(*s.submodule);
    if (s.kernel) d["kernel"] = io::to_json(*s.kernel);
    if (!out_path.empty()) {
        io::write_file(out_path, io::to_json(s.module));
        d["written"] = out_path;
    } else {
        d["module"] = io::to_json(s.module);
    }
    return {"pass", std::move(d), kPass, {}};
}

// ---- system ----

Json predicates_json(const SystemPredicates& p) {
    Json j{{"nondeg", p.nondeg}, {"cond_b", p.cond_b}, {"cond_c", p.cond_c}};
    if (p.nondeg_failure) j["nondeg_failure"] = Json::array({p.nondeg_failure->first, p.nondeg_failure->second});
    if (p.cond_b_failure_block) j["cond_b_failure_block"] = *p.cond_b_failure_block;
    if (p.cond_c_failure_block) j["cond_c_failure_block"] = *p.cond_c_failure_block;
    return j;
}

Outcome system_check(const Input& in, const Limits& limits) {
    const BilinearSystem sys = io::system_from_json(in.json, limits.max_field_order);
    const Prop41Report r = prop41_check(sys, limits);
    Json pairs = Json::array();
    for (const auto& p : r.small.pairs)
        pairs.push_back(Json{{"t_block", p.t_block},
                             {"s_block", p.s_block},
                             {"image_to_kernel", p.image_to_kernel},
                             {"kernel_to_image", p.kernel_to_image}});
    const auto& h = r.hypotheses;
    Json d{{"length_b", r.length_b},
           {"length_c", r.length_c},
           {"length_a", r.length_a},
           {"graph", graph_json(r.graph)},
           {"lhs", r.lhs},
           {"rhs", r.rhs},
           {"holds", r.holds},
           {"hypotheses", Json{{"nondeg", h.nondeg},
                               {"cond_b", h.cond_b},
                               {"cond_c", h.cond_c},
                               {"small_either", h.small_either},
                               {"card_d", h.card_d},
                               {"all", h.all()}}},
           {"budget", Json{{"N_S", r.budget.n_s},
                           {"N_T", r.budget.n_t},
                           {"d_S", r.budget.d_s},
                           {"d_T", r.budget.d_t},
                           {"l_S", r.budget.l_s},
                           {"l_T", r.budget.l_t}}},
           {"predicates", predicates_json(r.predicates)},
           {"small", Json{{"mxs", r.small.mxs}, {"both", r.small.both}, {"either", r.small.either}, {"pairs", pairs}}}};
    if (!r.holds) return negative(std::move(d));
    return {"pass", std::move(d), kPass, {}};
}

Side parse_side(const std::string& s) {
    if (s == "left") return Side::left;
    if (s == "right") return Side::right;
    throw InputError("--side must be left or right");
}

std::pair<std::size_t, std::size_t> parse_block(const std::string& s) {
    std::size_t f = 0, e = 0;
    char comma = 0;
    std::istringstream is(s);
    if (!(is >> f >> comma >> e) || comma != ',' || !is.eof()) throw InputError("--block expects f,e");
    return {f, e};
}

Json strength_json(const StrengthResult& r) {
    return Json{{"strong", r.strong}, {"families_checked", r.families_checked}, {"blocking_family", subspaces_json(r.blocking_family)}};
}

Outcome system_strong(const Input& in, const std::string& side_name, double n, const std::string& block,
                      const Limits& limits) {
    const BilinearSystem sys = io::system_from_json(in.json, limits.max_field_order);
    const Side side = parse_side(side_name);
    Json d{{"side", side_name}, {"N", n}};
    bool all = true;
    if (!block.empty()) {
        const auto [f, e] = parse_block(block);
        if (f >= sys.t_block_count() || e >= sys.s_block_count()) throw InputError("--block out of range");
        const StrengthResult r = n_strong(block_family(sys, f, e), side, n, limits);
        d["block"] = Json::array({f, e});
        d["result"] = strength_json(r);
        all = r.strong;
    } else {
        Json per = Json::array();
        const std::size_t count = side == Side::left ? sys.t_block_count() : sys.s_block_count();
        for (std::size_t i = 0; i < count; ++i) {
            const MapFamily w = side == Side::left ? left_family(sys, i) : right_family(sys, i);
            const StrengthResult r = n_strong(w, side, n, limits);
            Json j = strength_json(r);
            j[side == Side::left ? "t_block" : "s_block"] = i;
            per.push_back(j);
            all = all && r.strong;
        }
        d["families"] = per;
    }
    d["strong"] = all;
    if (!all) return negative(std::move(d));
    return {"pass", std::move(d), kPass, {}};
}

// ---- strong ----

Outcome strong_cover(unsigned q, std::size_t dim, std::size_t n, const Limits& limits) {
    const CoverCheck c = no_union_cover(Field::of_order(q, limits.max_field_order), dim, n, limits);
    Json d{{"q", q},
           {"dim", dim},
           {"N", n},
           {"no_cover_by_proper", c.no_cover_by_proper},
           {"no_cover_of_maximals", c.no_cover_of_maximals},
           {"covering_family", subspaces_json(c.covering_family)},
           {"transversal_family", subspaces_json(c.transversal_family)}};
    if (!c.no_cover_by_proper || !c.no_cover_of_maximals) return negative(std::move(d));
    return {"pass", std::move(d), kPass, {}};
}

Outcome strong_union(const Input& in, const std::string& side_name, double n, std::size_t index, const Limits& limits) {
    const BilinearSystem sys = io::system_from_json(in.json, limits.max_field_order);
    const Side side = parse_side(side_name);
    const std::size_t count = side == Side::left ? sys.t_block_count() : sys.s_block_count();
    if (index >= count) throw InputError("--index out of range");
    const MapFamily w = side == Side::left ? left_family(sys, index) : right_family(sys, index);
    const UnionSplitResult u = union_split(w, side, n, limits);
    Json d{{"side", side_name},
           {"N", n},
           {"index", index},
           {"parts", w.parts.size()},
           {"union_strong", u.union_strong},
           {"strong_part", u.index ? Json(*u.index) : Json()},
           {"union_blocking_family", subspaces_json(first_n(u.union_blocking_family, 16))}};
    if (!u.union_strong) return negative(std::move(d));
    return {"pass", std::move(d), kPass, {}};
}

// ---- gallery ----

struct GalleryParams {
    std::size_t m = 2, n = 2, t = 1, k = 2, r = 2;
    unsigned q = 2, p = 2, d = 2;
    bool scalar = false;
    std::string b, c;
};

Vec parse_elems(const Field& f, const std::string& s, std::size_t len) {
    Vec v;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            const unsigned long x = std::stoul(tok);
            if (x >= f.q()) throw InputError("field element index " + tok + " out of range");
            v.push_back(static_cast<Elem>(x));
        } catch (const std::logic_error&) {
            throw InputError("cannot parse '" + tok + "' as a field element index");
        }
    }
    if (v.size() != len) throw InputError("vector '" + s + "' must have " + std::to_string(len) + " entries");
    return v;
}

Outcome gallery_list_cmd() {
    Json entries = Json::array();
    std::ostringstream table;
    for (const auto& e : gallery_list()) {
        entries.push_back(Json{{"name", e.name}, {"params", e.params}, {"description", e.description}});
        table << std::left << std::setw(20) << e.name << std::setw(14) << e.params << e.description << '\n';
    }
    return {"pass", Json{{"entries", entries}}, kPass, table.str()};
}

Outcome gallery_make(const std::string& name, const GalleryParams& p, const std::string& out_path, const Limits& limits) {
    auto field = [&] { return Field::of_order(p.q, limits.max_field_order); };
    Json obj;
    if (name == "cross") {
        const Field f = field();
        std::optional<Vec> b, c;
        if (!p.b.empty()) b = parse_elems(f, p.b, p.m);
        if (!p.c.empty()) c = parse_elems(f, p.c, p.n);
        obj = io::to_json(make_cross(p.m, p.n, f, b, c));
    } else if (name == "corner") {
        obj = io::to_json(make_corner_family(p.m, p.n, p.t, field()));
    } else if (name == "triangular") {
        obj = io::to_json(make_triangular(p.n, field(), p.scalar));
    } else if (name == "full-matrix") {
        obj = io::to_json(make_full_matrix(p.n, field()));
    } else if (name == "truncated") {
        obj = io::to_json(make_truncated_polynomial(field(), p.k));
    } else if (name == "square-zero") {
        obj = io::to_json(make_square_zero(field(), p.r));
    } else if (name == "twisted") {
        obj = io::to_json(make_twisted_truncated(p.p, p.d, p.n));
    } else if (name == "small-field-system") {
        obj = io::to_json(make_small_field_system(field(), p.d, limits));
    } else if (name == "4x4") {
        obj = io::to_json(make_4x4_example().module);
    } else if (name == "number-field") {
        make_number_field_example();
    } else {
        throw InputError("unknown gallery object '" + name + "'; see 'gallery list'");
    }
    Json d{{"name", name}, {"type", obj["type"]}};
    if (!out_path.empty()) {
        io::write_file(out_path, obj);
        d["written"] = out_path;
    } else {
        d["object"] = std::move(obj);
    }
    return {"pass", std::move(d), kPass, {}};
}

// ---- reproduce ----

Outcome reproduce_cmd(const std::string& target, const std::string& out_path, std::uint64_t seed, bool timing,
                      const Limits& limits) {
    reproduce::Options opt{limits, seed};
    const reproduce::Bundle b = reproduce::run_battery(target, opt);
    const fs::path path = out_path.empty() ? fs::path("reproduce-" + target + ".json") : fs::path(out_path);
    Json bundle = b.to_json(timing);
    io::write_file(path, bundle);
    Json d{{"bundle", path.string()}, {"summary", Json::array()}};
    for (const auto& r : b.results) {
        Json row{{"id", r.id}, {"verdict", r.verdict}, {"counterexample", r.counterexample}};
        if (r.id == 4) {
            row["system"] = Json::array({r.details["system"]["lhs"], r.details["system"]["rhs"]});
            row["module"] = Json::array({r.details["module"]["lhs"], r.details["module"]["rhs"]});
        }
        d["summary"].push_back(row);
    }
    d["criteria"] = bundle["criteria"];
    return {b.verdict(), std::move(d), b.exit_code(), b.table(timing)};
}

// ---- report plumbing ----

void emit(std::ostream& out, const std::string& command, const Json& inputs, const Outcome& o, bool pretty,
          std::optional<double> seconds) {
    Json report{{"command", command}, {"inputs", inputs}, {"verdict", o.verdict}, {"details", o.details}};
    if (seconds) report["timing"] = Json{{"seconds", *seconds}};
    if (!pretty) {
        out << report.dump() << '\n';
        return;
    }
    out << "command: " << command << "\nverdict: " << o.verdict << '\n';
    if (seconds) out << "seconds: " << *seconds << '\n';
    if (!o.table.empty()) out << o.table;
    else out << o.details.dump(2) << '\n';
}

int code_for(const std::string& verdict) {
    if (verdict == "violation") return kViolation;
    if (verdict == "budget") return kBudget;
    return kInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"soclelab: exact checks for rank-one coverage, socles, faithful modules and strength predicates"};
    app.name("soclelab");
    app.fallthrough();
    app.require_subcommand(1);

    std::optional<std::uint64_t> budget;
    unsigned threads = 1, max_q = Field::kDefaultMaxOrder;
    std::uint64_t seed = reproduce::Options{}.seed;
    bool pretty = false, timing = false;
    app.add_option("--budget", budget, "cap on every enumeration (overrides SOCLELAB_BUDGET)");
    app.add_option("--threads", threads, "worker threads for enumeration shards")->check(CLI::Range(1u, 256u));
    app.add_option("--seed", seed, "seed for randomized corpora");
    app.add_option("--max-field-order", max_q, "largest field order accepted")->check(CLI::Range(2u, 256u));
    app.add_flag("--pretty", pretty, "render tables instead of JSON lines");
    app.add_flag("--timing", timing, "include wall-clock timing in reports");

    std::string file, mode = "subfactor", out_path, side = "left", block, name, target;
    std::size_t sm = 2, sn = 2, dim = 2, index = 0;
    unsigned sq = 2;
    double big_n = 1;
    bool with_minimal = false;
    std::size_t strong_n = 1;
    GalleryParams gp;

    auto* cover = app.add_subcommand("cover", "tensor subspaces and rank-one coverage");
    cover->require_subcommand(1);
    auto* cover_check_cmd = cover->add_subcommand("check", "check both coverage conditions and the dimension bound");
    cover_check_cmd->add_option("file", file, "tensor subspace JSON")->required();
    cover_check_cmd->add_flag("--minimal", with_minimal, "also test minimality through hyperplanes");
    auto* cover_search_cmd = cover->add_subcommand("search-minimal", "enumerate minimal satisfying subspaces");
    cover_search_cmd->add_option("--m", sm)->required();
    cover_search_cmd->add_option("--n", sn)->required();
    cover_search_cmd->add_option("--q", sq)->required();

    auto* algebra = app.add_subcommand("algebra", "finite-dimensional algebras");
    algebra->require_subcommand(1);
    auto* analyze_cmd = algebra->add_subcommand("analyze", "radical, socles, blocks, socle graph and bounds");
    analyze_cmd->add_option("file", file, "algebra JSON")->required();

    auto* module = app.add_subcommand("module", "modules given by action matrices");
    module->require_subcommand(1);
    auto* module_check_cmd = module->add_subcommand("check", "faithfulness, minimality and both length inequalities");
    module_check_cmd->add_option("file", file, "module JSON")->required();
    auto* shrink_cmd = module->add_subcommand("shrink", "shrink a faithful module");
    shrink_cmd->add_option("file", file, "module JSON")->required();
    shrink_cmd->add_option("--mode", mode, "sub, quot or subfactor")->check(CLI::IsMember({"sub", "quot", "subfactor"}));
    shrink_cmd->add_option("-o,--output", out_path, "write the shrunk module here");

    auto* system = app.add_subcommand("system", "balanced bilinear systems");
    system->require_subcommand(1);
    auto* system_check_cmd = system->add_subcommand("check", "the length inequality and all of its hypotheses");
    system_check_cmd->add_option("file", file, "system JSON")->required();
    auto* system_strong_cmd = system->add_subcommand("strong", "N-strength of the left or right families");
    system_strong_cmd->add_option("file", file, "system JSON")->required();
    system_strong_cmd->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
    system_strong_cmd->add_option("--N", big_n)->required();
    system_strong_cmd->add_option("--block", block, "restrict to f_j A e_i, given as j,i");

    auto* strong = app.add_subcommand("strong", "covering and union laws for N-strength");
    strong->require_subcommand(1);
    auto* strong_cover_cmd = strong->add_subcommand("cover", "no family of <= N proper subspaces covers F_q^dim");
    strong_cover_cmd->add_option("--q", sq)->required();
    strong_cover_cmd->add_option("--dim", dim)->required();
    strong_cover_cmd->add_option("--N", strong_n)->required();
    auto* strong_union_cmd = strong->add_subcommand("union", "split an N-strong union into an (N/d)-strong part");
    strong_union_cmd->add_option("file", file, "system JSON")->required();
    strong_union_cmd->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
    strong_union_cmd->add_option("--N", big_n)->required();
    strong_union_cmd->add_option("--index", index, "T block (left) or S block (right)");

    auto* gallery = app.add_subcommand("gallery", "constructors for the worked examples");
    gallery->require_subcommand(1);
    auto* gallery_list_sub = gallery->add_subcommand("list", "list constructors");
    auto* gallery_make_sub = gallery->add_subcommand("make", "build one object as JSON");
    gallery_make_sub->add_option("name", name)->required();
    gallery_make_sub->add_option("--m", gp.m);
    gallery_make_sub->add_option("--n", gp.n);
    gallery_make_sub->add_option("--t", gp.t, "corner family parameter");
    gallery_make_sub->add_option("--q", gp.q, "field order");
    gallery_make_sub->add_option("--k", gp.k);
    gallery_make_sub->add_option("--r", gp.r);
    gallery_make_sub->add_option("--p", gp.p);
    gallery_make_sub->add_option("--d", gp.d);
    gallery_make_sub->add_flag("--scalar-diagonal", gp.scalar);
    gallery_make_sub->add_option("--b", gp.b, "comma-separated field element indices");
    gallery_make_sub->add_option("--c", gp.c, "comma-separated field element indices");
    gallery_make_sub->add_option("-o,--output", out_path);

    auto* repro = app.add_subcommand("reproduce", "run an acceptance battery and write a bundle");
    repro->add_option("target", target, "all, paper-2, paper-4, paper-5.1 or paper-6")
        ->required()
        ->check(CLI::IsMember(reproduce::targets()));
    repro->add_option("-o,--output", out_path, "bundle path (default reproduce-<target>.json)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInput;
    }

    Limits limits;
    std::string command;
    Json inputs = Json::object();
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        limits = Limits::from_environment();
        if (budget) limits = limits.with_budget(*budget);
        limits.threads = threads;
        limits.max_field_order = max_q;
        auto with_file = [&](const std::string& cmd) {
            command = cmd;
            inputs = Json{{"file", file}};
            Input in = load(file);
            inputs["fnv1a64"] = in.hash;
            return in;
        };
        if (*cover_check_cmd) {
            outcome = cover_check(with_file("cover check"), with_minimal, limits);
        } else if (*cover_search_cmd) {
            command = "cover search-minimal";
            inputs = Json{{"m", sm}, {"n", sn}, {"q", sq}};
            outcome = cover_search(sm, sn, sq, limits);
        } else if (*analyze_cmd) {
            outcome = algebra_analyze(with_file("algebra analyze"), limits);
        } else if (*module_check_cmd) {
            outcome = module_check(with_file("module check"), limits);
        } else if (*shrink_cmd) {
            outcome = module_shrink(with_file("module shrink"), mode, out_path, limits);
        } else if (*system_check_cmd) {
            outcome = system_check(with_file("system check"), limits);
        } else if (*system_strong_cmd) {
            outcome = system_strong(with_file("system strong"), side, big_n, block, limits);
        } else if (*strong_cover_cmd) {
            command = "strong cover";
            inputs = Json{{"q", sq}, {"dim", dim}, {"N", strong_n}};
            outcome = strong_cover(sq, dim, strong_n, limits);
        } else if (*strong_union_cmd) {
            outcome = strong_union(with_file("strong union"), side, big_n, index, limits);
        } else if (*gallery_list_sub) {
            command = "gallery list";
            outcome = gallery_list_cmd();
        } else if (*gallery_make_sub) {
            command = "gallery make";
            inputs = Json{{"name", name}};
            outcome = gallery_make(name, gp, out_path, limits);
        } else if (*repro) {
            command = "reproduce";
            inputs = Json{{"target", target}, {"seed", seed}};
            outcome = reproduce_cmd(target, out_path, seed, timing, limits);
        }
    } catch (const TheoremViolation& e) {
        outcome = {"violation", Json{{"error", e.what()}, {"witness", e.witness()}}, kViolation, {}};
    } catch (const BudgetExceeded& e) {
        outcome = {"budget", Json{{"error", e.what()}}, kBudget, {}};
    } catch (const OutOfScope& e) {
        outcome = {"input-error", Json{{"error", e.what()}, {"out_of_scope", true}}, kInput, {}};
    } catch (const InputError& e) {
        outcome = {"input-error", Json{{"error", e.what()}}, kInput, {}};
    } catch (const PreconditionError& e) {
        outcome = {"input-error", Json{{"error", e.what()}, {"precondition", true}}, kInput, {}};
    } catch (const Error& e) {
        outcome = {"violation", Json{{"error", e.what()}}, kViolation, {}};
    }
    if (outcome.code != kPass && outcome.code != kNegative && outcome.code != code_for(outcome.verdict))
        outcome.code = code_for(outcome.verdict);
    std::optional<double> seconds;
    if (timing) seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (command.empty()) command = "unknown";
    emit(out, command, inputs, outcome, pretty, seconds);
    if (outcome.verdict == "input-error" || outcome.verdict == "violation" || outcome.verdict == "budget") {
        err << "soclelab: " << outcome.verdict;
        if (outcome.details.contains("error")) err << ": " << outcome.details["error"].get<std::string>();
        err << '\n';
    }
    return outcome.code;
}

}  // namespace soclelab::cli

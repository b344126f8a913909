#include "soclelab/io.hpp"

#include <fstream>
#include <sstream>

namespace soclelab::io {
namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError("JSON: " + what); }

const Json& member(const Json& j, const char* key) {
    if (!j.is_object()) bad(std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing \"") + key + "\"");
    return *it;
}

std::size_t size_member(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        bad(std::string("\"") + key + "\" must be a non-negative integer");
    return v.get<std::size_t>();
}

const Json& array_member(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_array()) bad(std::string("\"") + key + "\" must be an array");
    return v;
}

std::vector<std::size_t> sizes_member(const Json& j, const char* key) {
    std::vector<std::size_t> out;
    for (const auto& v : array_member(j, key)) {
        if (!v.is_number_integer() || v.get<long long>() < 0) bad(std::string("\"") + key + "\" entries must be sizes");
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

void check_type(const Json& j, const char* type) {
    if (!j.is_object()) bad(std::string("expected a ") + type + " object");
    auto it = j.find("type");
    if (it != j.end() && (!it->is_string() || it->get<std::string>() != type))
        bad(std::string("expected type \"") + type + "\"");
}

Mat mat_in_field(const Json& j, const Field& f, unsigned max_order) {
    Mat m = mat_from_json(j, max_order);
    if (!(m.field() == f)) bad("matrix over a different field");
    return m;
}

template <class F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        bad(e.what());
    }
}

}  // namespace

Json to_json(const Field& f) { return Json{{"p", f.p()}, {"e", f.e()}, {"modulus", f.e() == 1 ? std::vector<unsigned>{} : f.modulus()}}; }

Field field_from_json(const Json& j, unsigned max_field_order) {
    return guarded([&] {
        const std::size_t p = size_member(j, "p");
        const std::size_t e = j.contains("e") ? size_member(j, "e") : 1;
        std::optional<std::vector<unsigned>> modulus;
        if (j.contains("modulus")) {
            std::vector<unsigned> m;
            for (const auto& c : array_member(j, "modulus")) {
                if (!c.is_number_integer() || c.get<long long>() < 0) bad("modulus coefficients must be non-negative");
                m.push_back(c.get<unsigned>());
            }
            if (!m.empty()) modulus = std::move(m);
        }
        return Field::make(static_cast<unsigned>(p), static_cast<unsigned>(e), modulus, max_field_order);
    });
}

Json elem_to_json(const Field& f, Elem a) {
    if (f.e() == 1) return Json(static_cast<unsigned>(a));
    return Json(f.coeffs(a));
}

Elem elem_from_json(const Field& f, const Json& j) {
    if (j.is_number_integer()) {
        const long long v = j.get<long long>();
        if (v < 0 || v >= static_cast<long long>(f.p())) bad("scalar " + std::to_string(v) + " out of range");
        return f.from_int(v);
    }
    if (j.is_array()) {
        if (j.size() != f.e()) bad("coefficient list of the wrong length");
        std::vector<unsigned> c;
        for (const auto& x : j) {
            if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() >= static_cast<long long>(f.p()))
                bad("coefficient out of range");
            c.push_back(x.get<unsigned>());
        }
        return f.from_coeffs(c);
    }
    bad("a scalar must be an integer or a coefficient list");
}

Json vec_to_json(const Field& f, std::span<const Elem> v) {
    Json out = Json::array();
    for (Elem a : v) out.push_back(elem_to_json(f, a));
    return out;
}

Vec vec_from_json(const Field& f, const Json& j, std::size_t expected_len) {
    if (!j.is_array()) bad("a vector must be an array");
    if (j.size() != expected_len)
        bad("vector of length " + std::to_string(j.size()) + ", expected " + std::to_string(expected_len));
    Vec out;
    for (const auto& x : j) out.push_back(elem_from_json(f, x));
    return out;
}

Json to_json(const Mat& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vec_to_json(m.field(), m.row_vec(r)));
    return Json{{"field", to_json(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Mat mat_from_json(const Json& j, unsigned max_field_order) {
    return guarded([&] {
        const Field f = field_from_json(member(j, "field"), max_field_order);
        const std::size_t rows = size_member(j, "rows"), cols = size_member(j, "cols");
        const Json& entries = array_member(j, "entries");
        if (entries.size() != rows) bad("entries has the wrong number of rows");
        std::vector<Vec> vs;
        for (const auto& r : entries) vs.push_back(vec_from_json(f, r, cols));
        return rows == 0 ? Mat(f, 0, cols) : Mat::from_rows(f, cols, vs);
    });
}

Json to_json(const Subspace& s) { return to_json(s.basis()); }

Subspace subspace_from_json(const Json& j, unsigned max_field_order) {
    const Mat m = mat_from_json(j, max_field_order);
    return Subspace::row_space(m);
}

Json to_json(const TensorSubspace& a) {
    Json basis = Json::array();
    for (const auto& b : a.basis()) basis.push_back(to_json(b));
    return Json{{"type", "tensor_subspace"}, {"field", to_json(a.field())}, {"m", a.m()}, {"n", a.n()}, {"basis", basis}};
}

TensorSubspace tensor_subspace_from_json(const Json& j, unsigned max_field_order) {
    return guarded([&] {
        check_type(j, "tensor_subspace");
        const Field f = field_from_json(member(j, "field"), max_field_order);
        const std::size_t m = size_member(j, "m"), n = size_member(j, "n");
        if (m == 0 || n == 0) bad("m and n must be positive");
        std::vector<Mat> basis;
        for (const auto& b : array_member(j, "basis")) {
            Mat x = mat_in_field(b, f, max_field_order);
            if (x.rows() != m || x.cols() != n) bad("basis matrix of the wrong shape");
            basis.push_back(std::move(x));
        }
        return TensorSubspace(f, m, n, std::move(basis));
    });
}

namespace {

Json certificate_to_json(const Field& f, const Certificate& c) {
    Json rad = Json::array();
    for (const auto& v : c.radical.vectors()) rad.push_back(vec_to_json(f, v));
    Json blocks = Json::array();
    for (const auto& b : c.blocks) {
        Json units = Json::array();
        for (const auto& u : b.matrix_units) units.push_back(vec_to_json(f, u));
        blocks.push_back(Json{{"idempotent", vec_to_json(f, b.idempotent)}, {"size", b.size}, {"matrix_units", units}});
    }
    return Json{{"radical", rad}, {"blocks", blocks}, {"split", c.split}};
}

Certificate certificate_from_json(const Json& j, const Field& f, std::size_t d) {
    std::vector<Vec> rad;
    for (const auto& v : array_member(j, "radical")) rad.push_back(vec_from_json(f, v, d));
    Certificate c{Subspace::span(f, d, rad), {}, false};
    for (const auto& b : array_member(j, "blocks")) {
        BlockCertificate bc;
        bc.idempotent = vec_from_json(f, member(b, "idempotent"), d);
        bc.size = size_member(b, "size");
        if (b.contains("matrix_units"))
            for (const auto& u : array_member(b, "matrix_units")) bc.matrix_units.push_back(vec_from_json(f, u, d));
        c.blocks.push_back(std::move(bc));
    }
    const Json& split = member(j, "split");
    if (!split.is_boolean()) bad("\"split\" must be a boolean");
    c.split = split.get<bool>();
    return c;
}

}  // namespace

Json to_json(const Algebra& r) {
    const Field& f = r.field();
    Json out{{"type", "algebra"}, {"field", to_json(f)}, {"dim", r.dim()}};
    if (r.matrix_basis()) {
        Json basis = Json::array();
        for (const auto& m : *r.matrix_basis()) basis.push_back(to_json(m));
        out["matrix_basis"] = basis;
    } else {
        out["mult"] = vec_to_json(f, r.structure_constants());
    }
    out["one"] = vec_to_json(f, r.one());
    if (r.has_certificate()) out["certificate"] = certificate_to_json(f, r.certificate());
    return out;
}

Algebra algebra_from_json(const Json& j, unsigned max_field_order) {
    return guarded([&] {
        check_type(j, "algebra");
        const Field f = field_from_json(member(j, "field"), max_field_order);
        const std::size_t d = size_member(j, "dim");
        if (d == 0) bad("an algebra has positive dimension");
        std::optional<Certificate> cert;
        if (j.contains("certificate")) cert = certificate_from_json(member(j, "certificate"), f, d);
        if (j.contains("matrix_basis")) {
            std::vector<Mat> basis;
            for (const auto& b : array_member(j, "matrix_basis")) basis.push_back(mat_in_field(b, f, max_field_order));
            if (basis.size() != d) bad("matrix_basis does not have dim members");
            Algebra r = Algebra::from_matrix_basis(std::move(basis), std::move(cert));
            if (j.contains("one") && vec_from_json(f, member(j, "one"), d) != r.one())
                bad("\"one\" disagrees with the identity of the matrix basis");
            return r;
        }
        const Json& mult = array_member(j, "mult");
        if (mult.size() != d * d * d) bad("\"mult\" must have dim^3 entries");
        Vec constants = vec_from_json(f, mult, d * d * d);
        Vec one = vec_from_json(f, member(j, "one"), d);
        return Algebra::from_structure_constants(f, d, std::move(constants), std::move(one), std::move(cert));
    });
}

Json to_json(const ModuleRep& m) {
    Json action = Json::array();
    for (const auto& a : m.action()) action.push_back(to_json(a));
    return Json{{"type", "module"}, {"algebra_ref", to_json(m.algebra())}, {"dim", m.dim()}, {"action", action}};
}

ModuleRep module_from_json(const Json& j, const std::filesystem::path& base_dir, unsigned max_field_order) {
    return guarded([&] {
        check_type(j, "module");
        const Json& ref = member(j, "algebra_ref");
        const Algebra r = ref.is_string() ? algebra_from_json(read_file(base_dir / ref.get<std::string>()), max_field_order)
                                          : algebra_from_json(ref, max_field_order);
        const std::size_t n = size_member(j, "dim");
        std::vector<Mat> action;
        for (const auto& a : array_member(j, "action")) {
            Mat x = mat_in_field(a, r.field(), max_field_order);
            if (x.rows() != n || x.cols() != n) bad("action matrix of the wrong shape");
            action.push_back(std::move(x));
        }
        return ModuleRep::make(r, std::move(action));
    });
}

Json to_json(const BilinearSystem& sys) {
    Json comps = Json::array();
    for (const auto& c : sys.components()) {
        Json maps = Json::array();
        for (const auto& m : c.maps) maps.push_back(to_json(m));
        comps.push_back(Json{{"t_block", c.t_block}, {"s_block", c.s_block}, {"maps", maps}});
    }
    return Json{{"type", "system"},          {"field", to_json(sys.field())}, {"s_sizes", sys.s_sizes()},
                {"t_sizes", sys.t_sizes()},  {"b_mult", sys.b_mult()},        {"c_mult", sys.c_mult()},
                {"components", comps}};
}

BilinearSystem system_from_json(const Json& j, unsigned max_field_order) {
    return guarded([&] {
        check_type(j, "system");
        const Field f = field_from_json(member(j, "field"), max_field_order);
        std::vector<SystemComponent> comps;
        for (const auto& c : array_member(j, "components")) {
            SystemComponent sc{size_member(c, "t_block"), size_member(c, "s_block"), {}};
            for (const auto& m : array_member(c, "maps")) sc.maps.push_back(mat_in_field(m, f, max_field_order));
            comps.push_back(std::move(sc));
        }
        return BilinearSystem(f, sizes_member(j, "s_sizes"), sizes_member(j, "t_sizes"), sizes_member(j, "b_mult"),
                              sizes_member(j, "c_mult"), std::move(comps));
    });
}

Json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace soclelab::io

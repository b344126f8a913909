#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "soclelab/algebra.hpp"
#include "soclelab/modrep.hpp"
#include "soclelab/strongness.hpp"
#include "soclelab/tensorcover.hpp"

namespace soclelab::io {

using Json = nlohmann::ordered_json;

// Scalars are written as plain integers over prime fields and as little-endian
// coefficient lists over extension fields. Every parser throws InputError on malformed
// input; `max_field_order` bounds the fields it will build.

Json to_json(const Field& f);
Field field_from_json(const Json& j, unsigned max_field_order = Field::kDefaultMaxOrder);

Json elem_to_json(const Field& f, Elem a);
Elem elem_from_json(const Field& f, const Json& j);
Json vec_to_json(const Field& f, std::span<const Elem> v);
Vec vec_from_json(const Field& f, const Json& j, std::size_t expected_len);

/// {"field", "rows", "cols", "entries": [[...]]}
Json to_json(const Mat& m);
Mat mat_from_json(const Json& j, unsigned max_field_order = Field::kDefaultMaxOrder);

/// A subspace is stored as the matrix of its canonical basis.
Json to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j, unsigned max_field_order = Field::kDefaultMaxOrder);

/// {"type": "tensor_subspace", "field", "m", "n", "basis": [Mat]}
Json to_json(const TensorSubspace& a);
TensorSubspace tensor_subspace_from_json(const Json& j, unsigned max_field_order = Field::kDefaultMaxOrder);

/// {"type": "algebra", "field", "dim", "mult" | "matrix_basis", "one", "certificate"?}
Json to_json(const Algebra& r);
Algebra algebra_from_json(const Json& j, unsigned max_field_order = Field::kDefaultMaxOrder);

/// {"type": "module", "algebra_ref", "dim", "action": [Mat]}. algebra_ref is an inline
/// algebra object, or a path resolved against `base_dir`.
Json to_json(const ModuleRep& m);
ModuleRep module_from_json(const Json& j, const std::filesystem::path& base_dir = {},
                           unsigned max_field_order = Field::kDefaultMaxOrder);

/// {"type": "system", "field", "s_sizes", "t_sizes", "b_mult", "c_mult",
///  "components": [{"t_block", "s_block", "maps": [Mat]}]}
Json to_json(const BilinearSystem& sys);
BilinearSystem system_from_json(const Json& j, unsigned max_field_order = Field::kDefaultMaxOrder);

/// Reads and parses a file; syntax errors and missing files become InputError.
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& j);

}  // namespace soclelab::io

#pragma once

#include <string>

#include <json.hpp>

#include "spinlab/composition.hpp"
#include "spinlab/superalgebra.hpp"

namespace spinlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json field_json(FieldSpec f);
FieldSpec field_from_json(const Json& j);

/// [[k, "coeff"], ...]
Json sparse_json(const SparseVec& v);
SparseVec sparse_from_json(const Json& j, FieldSpec f);
/// Row-major list of rows of coefficient strings.
Json matrix_json(const Matrix& m);

/// elapsed_ms is written only when `timing` is set, so reports are byte-stable by default.
Json report_json(const VerificationReport& r, bool timing = false);

/// FNV-1a over the compact dump, as 16 lowercase hex digits.
std::string content_hash(const Json& j);

/// {schema_version, name, field, dims, symmetric, labels, parity, brackets, hash};
/// brackets lists [i, j, [[k, "coeff"], ...]] for i ≤ j with a nonzero bracket.
Json export_structure(const BracketSource& a);
/// Rebuilds the table, filling i > j by graded skew-symmetry. Throws SchemaError on a
/// version or hash mismatch.
SuperAlgebra import_structure(const Json& j);

/// Integer multiplication table [[i, j, coeff, k], ...] with the diagonal norm.
Json composition_table_json(CompositionKind kind);

}  // namespace spinlab

#pragma once

// JSON (de)serialization of polynomials and atomic file output.

#include <string>
#include <variant>

#include "json.hpp"
#include "trigfactor/matpoly.hpp"

namespace trigfactor {

using Json = nlohmann::json;
using AnyPoly = std::variant<MatrixPoly1, MatrixPoly2>;

Json to_json(const MatrixPoly1& p);
Json to_json(const MatrixPoly2& p);
Json matrix_to_json(const Matrix& m);  // {"re": [[...]], "im": [[...]]}

/// Throws FormatError naming the offending field.
AnyPoly poly_from_json(const Json& j);
MatrixPoly1 poly1_from_json(const Json& j);
MatrixPoly2 poly2_from_json(const Json& j);

/// Reads and parses a file; throws FormatError on I/O or syntax errors.
Json read_json_file(const std::string& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_text_atomic(const std::string& path, const std::string& text);

/// Doubles are printed in shortest round-trip form.
std::string dump_json(const Json& j);

}  // namespace trigfactor

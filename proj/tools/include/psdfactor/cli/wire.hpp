#pragma once

// JSON wire format for matrices, relations, subspaces and diagonal symbols.
// Every reader reports malformed payloads as Error(ParseError) naming the
// JSON pointer of the offending field.

#include <string>

#include <json.hpp>

#include <psdfactor/diagmodel.hpp>
#include <psdfactor/factor.hpp>
#include <psdfactor/linrel.hpp>

namespace psdfactor::cli {

using Json = nlohmann::ordered_json;

/// Parses a document; syntax errors carry the line and column.
Json parse_document(const std::string& text);
/// Doubles use 17 significant digits; pretty output indents by two spaces.
std::string write_json(const Json& j, bool pretty = true);

/// Finite doubles as numbers, non-finite ones as "inf", "-inf" or "nan".
Json number(double v);
double number_from_json(const Json& j, const std::string& path);
/// A numeric claim together with the tolerance it was tested at.
Json claim(double value, double tol);

Json to_json(Complex z);
Json to_json(const CMatrix& m);
Json to_json(const Subspace& s);
Json to_json(const LinRel& r);
Json to_json(const DiagValue& v);
Json to_json(const DiagSymbol& d);
Json to_json(const Rational& r);
Json to_json(const CheckList& checks);

Complex complex_from_json(const Json& j, const std::string& path);
CMatrix matrix_from_json(const Json& j, const std::string& path);
/// A graph basis with orthonormal columns is kept verbatim; any other
/// spanning set is orthonormalized.
LinRel relation_from_json(const Json& j, const std::string& path);
DiagValue value_from_json(const Json& j, const std::string& path);
/// Accepts the object form or a family name such as "sqrt_n".
DiagSymbol symbol_from_json(const Json& j, const std::string& path);
Rational rational_from_json(const Json& j, const std::string& path);

bool is_relation_payload(const Json& j);

/// Member lookup that raises ParseError when the field is missing.
const Json& field(const Json& obj, const std::string& key, const std::string& path);

}  // namespace psdfactor::cli

#pragma once

#include "clifq/brauer.hpp"
#include "clifq/dedekind.hpp"
#include "clifq/forms.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace clifq::io {

using json = nlohmann::ordered_json;

json to_json(const Scalar& x);
/// Accepts the string forms of Scalar::parse and JSON integers.
Scalar scalar_from_json(const Field& f, const json& j, const std::string& where = "");

/// {"base", "gram", "value_label"}
json to_json(const QuadraticForm& q);
json to_json(const DiagonalForm& q);
QuadraticForm form_from_json(const json& j);

/// {"dim", "labels", "table", "base"}; "unit" only when it is not the first
/// basis vector.
json to_json(const StructureAlgebra& a);
StructureAlgebra algebra_from_json(const json& j);

/// {"ramified": [...]}, plus "finite_field": true over F_p.
json to_json(const BrauerClass2& c);
BrauerClass2 brauer_from_json(const json& j);

/// {"d", "generators": [g1, g2]} with the Hermite basis as generators.
json to_json(const FracIdeal& i);
FracIdeal ideal_from_json(const json& j);

/// {"d", "coeffs", "gram", "value"}
json to_json(const IdealValuedForm& q);
IdealValuedForm ideal_form_from_json(const json& j);

/// Parses text; ParseError with line and column on failure.
json parse(const std::string& text, const std::string& source = "<input>");
json read_file(const std::string& path);
/// Canonical text: two-space indent, trailing newline.
std::string dump(const json& j);

enum class Kind { Form, Algebra, Brauer, IdealForm };
/// Detected from the keys present.
Kind detect_kind(const json& j);
/// Human-readable rendering of a serialized object.
std::string render_table(const json& j);

/// Reads in_path and writes out_path: kind "json" re-serializes
/// canonically (after a full parse and validation), kind "table" renders.
void convert(const std::string& in_path, const std::string& out_path, const std::string& kind);

} // namespace clifq::io

#pragma once

#include <string>

#include <json.hpp>

#include "utgrad/descriptor.hpp"
#include "utgrad/oracle.hpp"

namespace utgrad {

using Json = nlohmann::ordered_json;

/// Parses JSON text. Syntax errors become InputError "source:line:col: ...".
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

/// "F3", "3", "Q" or "rational".
FieldSpec parse_field(const std::string& text);

Json field_to_json(FieldSpec f);
Json group_to_json(const AbelianGroup& g);
Json element_to_json(const GroupElement& g);

// Readers throw InputError naming the JSON pointer of the offending value.
FieldSpec field_from_json(const Json& j);
AbelianGroup group_from_json(const Json& j);
GroupElement element_from_json(const Json& j, const AbelianGroup& group);

/// Canonical form: echelon bases as row-major n x n scalar strings, nonzero
/// components in the global degree order.
Json grading_to_json(const Grading& g);
/// Accepts any spanning lists; the bases need not be echelon.
Grading grading_from_json(const Json& j);

Json descriptor_to_json(const GradingDescriptor& d);
GradingDescriptor descriptor_from_json(const Json& j);
/// Descriptor files carry a "kind" key; grading files do not.
bool is_descriptor_json(const Json& j);

Json census_to_json(const CensusResult& r);

}  // namespace utgrad

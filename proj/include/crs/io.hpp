#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "crs/deformed.hpp"
#include "crs/harmonic.hpp"
#include "crs/solvers.hpp"

namespace crs {

using json = nlohmann::ordered_json;

/// Malformed or invalid input; the message names the location (line:column or entry index).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// How coefficient values are read. Exact mode takes strings "p", "p/q" or terminating
/// decimals, and JSON integers. Grid mode also takes JSON floating-point numbers.
enum class ValueMode { Exact, Grid };

/// Either an exact field or, when any coefficient was a float, a numeric one.
using ParsedField = std::variant<HarmonicField, NumericField>;

/// Parses {"truncation": N, "coefficients": [{"p","q","m","re","im"}, ...]}.
ParsedField parse_field(const json& j, ValueMode mode);
/// Parses JSON text; syntax errors report line and column.
ParsedField parse_field_text(const std::string& text, ValueMode mode);
ParsedField read_field_file(const std::string& path, ValueMode mode);

HarmonicField require_exact(const ParsedField& f);
NumericField as_numeric(const ParsedField& f);

/// Rationals are written as "num/den" strings.
json to_json(const HarmonicField& f);
/// Floats are written as JSON numbers.
json to_json(const NumericField& f);

json to_json(const SolveReport& r);
json to_json(const FormalSolveReport& r);
json to_json(const RigidityCertificate& c);
json to_json(const IntegralIdentity& id);

/// Per-order harmonic decomposition of each field of a jet structure.
json to_json(const DeformedStructure<JetSeries>& d);
/// Summary of a grid structure: max |f|, integral and projection to the truncation for each field.
json to_json(const DeformedStructure<GridFn>& d, int truncation);

/// Writes with a trailing newline; "-" or an empty path writes to stdout.
void write_json(const json& j, const std::string& path);

}  // namespace crs

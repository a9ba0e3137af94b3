#pragma once

#include <string>

#include <json.hpp>

#include "dsp/blockext.hpp"
#include "dsp/classes.hpp"
#include "dsp/decider.hpp"
#include "dsp/errors.hpp"
#include "dsp/genericity.hpp"
#include "dsp/witness.hpp"

namespace dsp {

/// Syntax or schema error in an instance file. Syntax errors carry a
/// 1-based line and column; schema errors carry a JSON path.
class ParseError : public ValidationError {
public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : ValidationError(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Instance file:
///   {"mode": "additive" | "multiplicative",
///    "classes": [{"eigenvalues": [{"re": "p/q", "im": "p/q",
///                                  "blocks": [b1, b2, ...]}, ...]}, ...]}
/// "im" may be omitted (zero). Rationals must be strings; numbers are
/// rejected. The parsed instance is validated before it is returned.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
nlohmann::json instance_to_json(const Instance& inst);
std::string serialize_instance(const Instance& inst);

nlohmann::json to_json(const RelationWitness& rel);
nlohmann::json to_json(const ExtReport& rep);
nlohmann::json to_json(const RealizationReport& rep);
nlohmann::json verdict_to_json(const Instance& inst, const Verdict& v);

}  // namespace dsp

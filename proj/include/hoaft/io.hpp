#pragma once

// JSON interchange: posets, approximation tuples, systems, operators, App
// values and models.
//
//   poset   {"elements":["a","b"],"leq":[["a","b"]],"mode":"covers"}
//   tuple   {"L":["f","t"],"U":["f","t"],"leq":[["f","t"]],"mode":"covers"}
//   system  {"flavor":"lu","bases":{"o":<poset>},"exact":{"o":[...]},
//            "proj":{"o":{"(t,t)":"t"}},"closure":["o->o"]}
//
// In a system, "bases" are the semantic posets E_b and App(E_b) is built by
// the flavor; "exact" / "proj" override the diagonal defaults and an optional
// "app" replaces the App poset itself. Without "closure" every predicate type
// is in the closure.

#include <string>
#include <string_view>

#include "hoaft/aft.hpp"
#include "hoaft/approx.hpp"
#include "hoaft/holog.hpp"
#include "hoaft/lu.hpp"
#include "json.hpp"

namespace hoaft {

using Json = nlohmann::ordered_json;

/// Emitted with mode "full": every pair a <= b, reflexive ones included.
/// Read with "covers" when the mode is absent.
Json poset_to_json(const Poset& p);
/// Throws invalid_input on a malformed document, plus the validation errors.
Poset poset_from_json(const Json& j);

TupleValidation tuple_from_json(const Json& j);

Json operator_to_json(const Operator& op);

/// Throws invalid_input, and whatever the base constructions raise.
ApproximationSystem system_from_json(const Json& j);
/// "builtin:lu-bool", "builtin:bilat-bool" or a path to a system file.
ApproximationSystem load_system(std::string_view source);

/// Base elements by name; exponentials as {argument: value}; products and
/// powers as {field or E_src element: value}.
Json value_to_json(const ApproxSpace& sp, Element e);
/// Inverse of value_to_json. Throws invalid_input.
Element value_from_json(const ApproxSpace& sp, const Json& j);
/// Elements of E_t in the same layout.
Json semantic_to_json(const SemanticSpace& s, Element e);

/// {"symbol": {"type", "value", "exact", "projection"}} with null projections
/// off the exact elements.
Json model_to_json(const Evaluator& ev, Element interp);

/// Projection of every symbol of a model document (the symbol map, or an
/// object holding it under "model"). Throws not_exact naming the first
/// inexact symbol.
Json project_model(const Json& model, const ApproximationSystem& s);

std::string read_file(const std::string& path);

}  // namespace hoaft

#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "toric/divisor.hpp"
#include "toric/fan.hpp"
#include "toric/galois.hpp"
#include "toric/wps.hpp"

namespace toric {

using Json = nlohmann::json;

/// Input document does not match the expected schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integers that fit in int64 become JSON numbers; larger ones become decimal strings.
Json to_json(const Integer& x);
Json to_json(const Rational& x);
Json to_json(const IntVector& v);
Json to_json(const RationalVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const RaySet& s);

Integer integer_from_json(const Json& j, const std::string& where);
IntVector vector_from_json(const Json& j, const std::string& where);
IntMatrix matrix_from_json(const Json& j, const std::string& where);

/// {"rank", "rays", "cones", "labels"?}; the zero cone is implicit. Ray order is kept.
Fan fan_from_json(const Json& j);
/// Canonical form: rays sorted, maximal cones only, index lists ascending, cones sorted.
Json fan_to_json(const Fan& f);

/// {"rank": int, "generators": [[[int]]], "orders": [int]}; rank is optional when there are generators.
GroupAction action_from_json(const Json& j, std::size_t rank);
std::size_t action_rank(const Json& j);
Json action_to_json(const GroupAction& g);

/// {"weights": [int]}
Weights weights_from_json(const Json& j);
Json weights_to_json(const Weights& w);

struct ModulePresentation {
  std::size_t rank = 0;
  std::vector<IntVector> relations;
};

/// {"rank": int, "relations": [[int]]}
ModulePresentation module_from_json(const Json& j);

/// {"rank": int, "torsion": [int]}
Json group_to_json(const AbelianGroupPresentation& g);

Json monomial_to_json(const LaurentMonomial& m);

Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

/// Sorted keys, two-space indentation, trailing newline.
std::string canonical_dump(const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace toric

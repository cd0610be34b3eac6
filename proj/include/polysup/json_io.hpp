/**
 * JSON encoding of the engine's values. Rationals are strings such as "-3/4"
 * (plain JSON integers are accepted on input). Parse errors raise InputError
 * with a JSON-pointer-like location.
 */
#ifndef POLYSUP_JSON_IO_HPP
#define POLYSUP_JSON_IO_HPP

#include <json.hpp>

#include "polysup/optimality.hpp"

namespace polysup {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const Extended& e);
Json to_json(const VectorXr& v);
Json to_json(const HRep& h);
Json to_json(const VRep& v);
/** {"points", "rays"} of an irredundant V-representation. */
Json to_json(const Polyhedron& P);
/** {"pieces": [{"a", "b"}], "domain": {"C", "d"}}. */
Json to_json(const ConvexFunction& f);
Json to_json(const Certificate& c);

Rational rational_from_json(const Json& j, const std::string& where);
VectorXr vector_from_json(const Json& j, Index dim, const std::string& where);
std::vector<Rational> rationals_from_json(const Json& j, const std::string& where);
HRep hrep_from_json(const Json& j, Index dim, const std::string& where);
VRep vrep_from_json(const Json& j, Index dim, const std::string& where);
ConvexFunction function_from_json(const Json& j, Index dim, const std::string& where);

}   // namespace polysup

#endif

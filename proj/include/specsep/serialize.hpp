#pragma once

#include <json.hpp>

#include "specsep/distributions.hpp"
#include "specsep/exppoly.hpp"
#include "specsep/projectors.hpp"

namespace specsep {

using Json = nlohmann::json;

Json to_json(cplx z);
cplx complex_from_json(const Json& j);
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const Domain& d);
Domain domain_from_json(const Json& j);

Json to_json(const Distribution& d);
Distribution distribution_from_json(const Json& j);

Json to_json(const ExpPoly& p);
ExpPoly exppoly_from_json(const Json& j);

Json to_json(const ThetaKernel& kernel);

}  // namespace specsep

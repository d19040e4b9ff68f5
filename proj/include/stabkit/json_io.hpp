#pragma once

#include <json.hpp>

#include <string>

#include "stabkit/avoidance.hpp"
#include "stabkit/searchlab.hpp"
#include "stabkit/stability.hpp"
#include "stabkit/thresholds.hpp"

namespace stabkit::json_io {

using json = nlohmann::ordered_json;

// Input. All throw Error(InvalidInput) on malformed documents.
Poly poly_from(const json& j);
RatFunc ratfunc_from(const json& j);
StateSpace statespace_from(const json& j);
AvoidanceTriple triple_from(const json& j);
RegionSpec region_from(const std::string& name, double band);
cplx complex_from(const json& j);
/// plants, region, controller_degree [num, den], require_*_controller,
/// budget, seed, threads, boundary_band.
SearchSpec searchspec_from(const json& j, double default_band);

// Output.
json to_json(cplx z);
json to_json(const Poly& p);
json to_json(const RatFunc& f);
json to_json(const StateSpace& s);
json to_json(const Divisor& d);
json to_json(const StabReport& r);
json to_json(const InternalStabReport& r);
json to_json(const InterpolationData& d);
json to_json(const GoldbergProfile& p);
json to_json(const ConstantsTable& k);
json to_json(const Verdict& v);
json to_json(const Certificate& c);
json to_json(const SearchStats& s);

/// Compact serialization with every floating-point number printed as %.17g.
/// Non-finite numbers become null.
std::string dump(const json& j);

}  // namespace stabkit::json_io

#pragma once

// JSON / CSV / table rendering. Big integers and rationals are emitted as
// decimal strings ("p" or "p/q"); small counts and indices as JSON numbers.
// Objects keep insertion order so output is byte-stable.

#include <string>
#include <vector>

#include <json.hpp>

#include "zeta/arith.hpp"
#include "zeta/defect2.hpp"

namespace zeta::report {

using Json = nlohmann::ordered_json;

Json to_json(const BigRational& r);
Json to_json(const QuadExt& x);  // {"rat": "p/q", "irr": "p/q"}
Json to_json(const std::vector<BigInt>& v);

/// true/false for holds/fails, otherwise the verdict name.
Json claim_json(Claim c);

Json to_json(const Defect2Report& rep);
std::string to_csv(const Defect2Report& rep);
std::string to_table(const Defect2Report& rep);

}  // namespace zeta::report

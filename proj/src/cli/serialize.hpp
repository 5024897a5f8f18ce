#pragma once

// JSON and CSV encoding of library results. Non-finite reals are written as
// the strings "+inf", "-inf" and "nan" since JSON has no literal for them.

#include <string>
#include <vector>

#include <json.hpp>

#include "normgeo/angles.hpp"
#include "normgeo/duality.hpp"
#include "normgeo/gfunctional.hpp"
#include "normgeo/probes.hpp"

namespace normgeo::cli {

using Json = nlohmann::ordered_json;

Json real(double v);
Json to_json(const Vector& v);
Json to_json(const GReport& r);
Json to_json(const AngleReport& r);
Json to_json(const EquivEstimate& e);
Json to_json(const ProbeReport& r);
Json to_json(const BirkhoffResult& r);
Json to_json(const DualRep& r);
Json to_json(const SipReport& r);

/// Shortest round-trip decimal form, with the same non-finite spellings.
std::string csv_real(double v);

/// Header row plus data rows, comma separated, '\n' line ends.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace normgeo::cli

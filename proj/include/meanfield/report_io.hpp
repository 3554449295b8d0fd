#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "meanfield/detectors.hpp"

namespace meanfield {

/// %.17g formatting: enough digits to round-trip a 64-bit float.
std::string format_double(double value);

nlohmann::json report_to_json(const DetectionReport& report);

/// Flat records: x coords, radii, residual, threshold, pass.
void write_report_csv(std::ostream& out, const DetectionReport& report);

}  // namespace meanfield

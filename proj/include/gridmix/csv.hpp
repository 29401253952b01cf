#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gridmix::csv {

// Plain comma split; no quoting in any of our file formats.
std::vector<std::string> split(const std::string& line);

std::string trim(const std::string& s);

// Strict '.'-decimal parse of a full cell; nullopt on anything else.
std::optional<double> parse_number(const std::string& cell);

// "%.6g" with '.' decimal, the report-file number format.
std::string format_number(double v);

}  // namespace gridmix::csv

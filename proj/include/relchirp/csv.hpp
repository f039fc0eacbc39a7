#pragma once

#include <string>

#include "relchirp/scenario.hpp"

namespace relchirp {

// CSV with '#'-prefixed metadata lines, comma delimiter, '.' decimal point,
// 15 significant digits. Identical inputs produce identical bytes.
std::string format_double(double v);
std::string to_csv(const SpectrumTable& table);
std::string to_csv(const KinematicsTable& table);

void write_file(const std::string& path, const std::string& content);

}  // namespace relchirp

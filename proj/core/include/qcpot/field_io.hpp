#pragma once

#include <iosfwd>
#include <string>

#include "qcpot/grid.hpp"

namespace qcpot {

/// Text field format, bit-exact round trip at 17 significant digits:
///   qcpot-field v1
///   dim <n>
///   lo <n reals>
///   hi <n reals>
///   shape <n ints>
///   <values, whitespace-separated, row-major (axis 0 slowest); -inf token>
void write_field(std::ostream& os, const ScalarField& field);
void write_field(const std::string& path, const ScalarField& field);
ScalarField read_field(std::istream& is);
ScalarField read_field(const std::string& path);

/// Mask format mirrors the field format with header `qcpot-mask v1` and
/// 0/1 entries.
void write_mask(std::ostream& os, const GridMask& mask);
void write_mask(const std::string& path, const GridMask& mask);
GridMask read_mask(std::istream& is);
GridMask read_mask(const std::string& path);

/// Shortest text for one value that round-trips exactly (17 significant
/// digits; `-inf` for the sentinel).
std::string format_value(double v);

}  // namespace qcpot

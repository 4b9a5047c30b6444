// CPLEX-style LP text format: Minimize / Subject To / Bounds / Binaries /
// End. The writer emits every column in the Bounds section so that a
// reader sees the full column set; integer columns with [0,1] bounds go to
// the Binaries section, other integer columns to Generals.

#ifndef CECSP_LP_FORMAT_HPP
#define CECSP_LP_FORMAT_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cecsp/lp.hpp"

namespace cecsp {

void write_lp_format(std::ostream& out, const LinearProgram& lp,
                     const std::string& title = "");
std::string to_lp_format(const LinearProgram& lp,
                         const std::string& title = "");

// Parses the subset of the format written above (plus the common keyword
// spellings). Throws FormatError with a line number on bad input.
LinearProgram parse_lp_format(std::istream& in);
LinearProgram read_lp_file(const std::filesystem::path& path);

}  // namespace cecsp

#endif  // CECSP_LP_FORMAT_HPP

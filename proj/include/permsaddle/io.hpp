#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "permsaddle/rankstat.hpp"

namespace permsaddle {

// Two-column numeric text, one (x, y) pair per row, comma or whitespace
// delimited. A non-numeric first row is treated as a header. Lines that are
// empty or start with '#' are skipped. Validation (ties etc.) is left to
// the caller.
PairedSample read_paired_sample(std::istream& in);
PairedSample read_paired_sample_file(const std::string& path);

// One score per line (or whitespace separated), same comment rules.
std::vector<double> read_score_file(const std::string& path);

}  // namespace permsaddle

#pragma once

#include <string>
#include <vector>

#include "dpinv/inference.hpp"

namespace dpinv::cli {

// Reads the `value` column of a headed CSV file (UTF-8, '.' decimal
// separator). Throws Error(InvalidArgument) on malformed input and
// Error(EmptyData) when there are no rows.
std::vector<double> read_value_column(const std::string& path);

// Reads a `value,arm` CSV with arm in {A, B}; A is control, B treatment.
TwoArmData read_two_arm(const std::string& path);

}  // namespace dpinv::cli

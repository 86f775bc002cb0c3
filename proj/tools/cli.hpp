#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "antistoch/mc_harness.hpp"
#include "json.hpp"

namespace antistoch::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kIoError = 2;

/// Runs one invocation. args excludes the program name. Writes the result
/// document to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Result document for `simulate`, keys in fixed order.
nlohmann::ordered_json to_json(const EstimateResult& r);
/// One header line plus one data line.
std::string to_csv(const EstimateResult& r);

}  // namespace antistoch::cli

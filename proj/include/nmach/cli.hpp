#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmach/error.hpp"
#include "nmach/measures.hpp"
#include "nmach/nmachine.hpp"

namespace nmach::cli {

// 0 success, 2 input validation, 3 unsupported measure/model, 4 numerical failure.
int exit_code_for(Errc c);

nlohmann::json measure_report_to_json(const MeasureReport& r);
nlohmann::json nmachine_result_to_json(const NMachineResult& r);

// {"copies": [...], "params": [...], "parts": [{"j","lj","x","k","values": [{"constant","coeffs"}]}]}
SplitSpec split_spec_from_json(const nlohmann::json& j);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nmach::cli

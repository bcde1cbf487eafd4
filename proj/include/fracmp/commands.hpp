// Command implementations behind the CLI; tests call these directly.
// Exit codes: 0 success, 1 numerical failure, 2 configuration error.
#pragma once

#include <string>

#include "fracmp/config.hpp"

namespace fracmp {

int cmd_operator_check(const RunConfig& cfg);
int cmd_validate_model(const RunConfig& cfg);
int cmd_critical_level(const RunConfig& cfg);
int cmd_solve(const RunConfig& cfg, char problem);  // 'P' or 'Q'

}  // namespace fracmp

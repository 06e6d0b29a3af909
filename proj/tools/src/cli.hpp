#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dks::cli {

// Full command-line front end, parameterized over streams so tests can
// drive it in-process. Returns the process exit status: 0 on success,
// 1 on validation or hypothesis refusal (and verify violations), 2 on
// size-cap refusals.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dks::cli

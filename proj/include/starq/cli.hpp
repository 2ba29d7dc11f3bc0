#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace starq {
namespace cli {

/// Runs one CLI invocation. Exit codes: 0 all checks passed, 1 a verification
/// produced a counterexample, 2 usage or input error, 3 work budget exceeded.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cli
} // namespace starq

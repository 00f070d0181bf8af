#pragma once

// Command-line front end shared by the binary and the tests.

#include <iosfwd>
#include <string>
#include <vector>

namespace entrobound {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitNumerical = 3;

/// args excludes the program name. Results go to `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entrobound

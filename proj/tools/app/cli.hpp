#pragma once

#include <iosfwd>

namespace stereogt::app {

/// Exit codes: 0 success, 1 usage or configuration, 2 I/O or file format,
/// 3 anything else. Diagnostics go to `err` as one line.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stereogt::app

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsp::cli {

/// CLI inputs are decimals typed by hand; eight significant digits put the
/// normalization error near 1e-8, so the front end accepts up to this.
inline constexpr double kCliInputTol = 1e-7;

/// args[0] is the program name. Returns the process exit code:
/// 0 success, 1 internal invariant violation, 2 usage or validation error.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace rsp::cli

#pragma once

#include <iosfwd>

namespace selfright::cli {

// Full command-line entry point. Settings resolve as defaults < --config
// file < SELFRIGHT_* environment < flags. Returns 0 only when every output
// file was written.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace selfright::cli

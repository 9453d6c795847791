#pragma once

namespace demonsim::cli {

// Full command-line entry point; returns the process exit code.
// Exit 0: success (including --help). Exit 2: usage or precondition errors.
// Exit 1: numerical-consistency failures.
int run_main(int argc, const char* const* argv);

} // namespace demonsim::cli

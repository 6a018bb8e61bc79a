#pragma once
// Command-line front end. Exit codes: 0 success, 1 fuzz failure (silent wrong
// decode), 2 parameter/usage error, 3 decode or assembly error, 4 I/O error,
// 5 resource limit.

#include <iosfwd>
#include <string>
#include <vector>

namespace stc {

enum ExitCode : int {
    exit_ok = 0,
    exit_fuzz_failure = 1,
    exit_params = 2,
    exit_decode = 3,
    exit_io = 4,
    exit_resource = 5,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stc

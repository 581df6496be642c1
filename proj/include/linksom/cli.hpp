#ifndef LINKSOM_CLI_HPP
#define LINKSOM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace linksom::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kDataError = 2,
    kInternalError = 3,
};

/// Runs one `linksom` subcommand. Normal output goes to `out`, the single
/// diagnostic line on failure to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linksom::cli

#endif

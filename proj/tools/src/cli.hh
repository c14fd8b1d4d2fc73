#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simrel::cli {

/// Exit codes of the command-line tool.
enum Exit : int {
	ok = 0,
	parse_error = 2,
	input_error = 3,
	bad_parameters = 4,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace simrel::cli

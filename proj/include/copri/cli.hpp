#ifndef COPRI_CLI_HPP
#define COPRI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "copri/analysis.hpp"

namespace copri::cli {

// Full pipeline for one file: read, parse, wellformedness, and (when no
// errors were raised) the configured checks. Never throws for bad input;
// failures come back as error diagnostics inside the report.
analysis::Report analyze_file(const std::string& path, const analysis::RunConfig& config = {});

// `copri check <files...> [...]`. args excludes the program name.
// Exit codes: 0 clean, 1 findings at the --fail-on threshold, 2 usage or
// parse/wellformedness errors. The worst code across files wins, and the
// report is emitted in full either way.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace copri::cli

#endif

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "lamespec/domain.hpp"

namespace lamespec::cli {

enum ExitCode : int { kSuccess = 0, kValidation = 1, kInternal = 2 };

/// Runs one subcommand. Artifacts go to --out paths (relative paths resolve
/// under $LAMESPEC_OUTPUT_DIR when set) or to `out`; errors are written to
/// `err` as a JSON object {kind, stage, message, hint}.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses "disk:R", "rectangle:LX,LY", "ellipse:A,B", "interval:L" or
/// "polygon:x0,y0;x1,y1;...".
Domain parse_domain_spec(const std::string& spec);

/// Thread count from $LAMESPEC_THREADS (default 1).
int thread_count_from_env();

/// Resolves an output path against $LAMESPEC_OUTPUT_DIR.
std::string resolve_output_path(const std::string& path);

}  // namespace lamespec::cli

#pragma once

#include <iosfwd>

namespace semgraph::cli {

/// Runs one `semgraph` subcommand. Returns 0 on success, 1 on a domain error
/// and 2 on a usage error.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semgraph::cli

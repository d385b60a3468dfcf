#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "contact/graph.hpp"

namespace contact::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `line:N`, `star:N`, `tree:N:SEED` or `file:PATH`.
Graph parse_graph_spec(const std::string& spec);

}  // namespace contact::cli

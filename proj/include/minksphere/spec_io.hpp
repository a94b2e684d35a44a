#pragma once

#include <string>

#include "minksphere/norm.hpp"

namespace mink {

/// Parses the line-oriented key=value norm spec format. '#' starts a
/// comment; `base=` paths of transform specs resolve relative to base_dir.
/// Throws Error(ParseError) with the line number and offending key.
NormSpec parse_norm_spec(const std::string& text, const std::string& base_dir = ".");

/// Loads and parses a spec file; transform base paths resolve relative to
/// the file's directory.
NormSpec load_norm_spec(const std::string& path);

}  // namespace mink

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "swarmcit/model.h"

namespace swarmcit {

// Model-file grammar (line oriented, '#' comments to end of line, blank and
// comment-only lines ignored):
//
//   t
//   k
//   v_0 v_1 ... v_{k-1}
//   c
//   m p:v p:v ...          (c lines, one forbidden tuple each)
//   names:                 (optional)
//   label,label,...        (k lines, one per parameter)
//
// Inside constraint lines a value may also be written as one of the
// parameter's labels once a names section is present.
//
// Throws ParseError for grammar violations and ModelError for semantic ones.
SystemModel parse_model(std::string_view text);

// Canonical writer: single spaces, LF endings, no comments.
// parse_model(render_model(m)) == m.
std::string render_model(const SystemModel& model);

// Reads and parses a model file. Throws Error if the file cannot be read.
SystemModel load_model(const std::filesystem::path& path);

}  // namespace swarmcit

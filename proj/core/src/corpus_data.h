#pragma once

#include <cstddef>
#include <string_view>

namespace swarmcit::detail {

struct EmbeddedFile {
  std::string_view name;
  std::string_view text;
};

extern const EmbeddedFile kEmbeddedCorpus[];
extern const std::size_t kEmbeddedCorpusSize;

}  // namespace swarmcit::detail

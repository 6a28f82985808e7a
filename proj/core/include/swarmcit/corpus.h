#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swarmcit/model.h"

namespace swarmcit {

// A benchmark model shipped with the library.
struct CorpusEntry {
  std::string name;
  std::string text;        // model-file contents
  std::string provenance;  // which system it encodes, or how it was derived
};

// The embedded model files (bugzilla, apache, gcc, spin-s, spin-v, gpl,
// gpl-constrained), in name order.
std::span<const CorpusEntry> embedded_corpus();

// Thirty configurations derived from the five real systems. Entry i (1-based)
// takes system (i - 1) % 5, keeps every constrained parameter plus a seeded
// sample of 20% + 10% * ((i - 1) / 5) of the unconstrained ones, and remaps
// the constraints onto the kept parameters.
CorpusEntry derived_entry(int index);

// Embedded names followed by derived-01 .. derived-30.
std::vector<std::string> benchmark_names();

// Throws Error listing the available names when `name` is unknown.
CorpusEntry corpus_entry(std::string_view name);
SystemModel corpus_model(std::string_view name);

// FNV-1a over the embedded corpus, for --version.
std::uint64_t corpus_hash();

}  // namespace swarmcit

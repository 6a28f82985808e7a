#include "swarmcit/corpus.h"

#include <algorithm>
#include <array>
#include <cstdio>

#include "corpus_data.h"
#include "swarmcit/errors.h"
#include "swarmcit/model_io.h"
#include "swarmcit/random.h"

namespace swarmcit {
namespace {

constexpr int kDerivedCount = 30;
constexpr std::uint64_t kDerivedSeed = 0x5eed2017;
constexpr std::array<std::string_view, 5> kRealSystems = {"bugzilla", "apache", "gcc",
                                                          "spin-s", "spin-v"};

std::string provenance_of(std::string_view text) {
  // First comment line of the file, without the marker.
  auto end = text.find('\n');
  auto first = text.substr(0, end);
  if (first.starts_with("# ")) return std::string(first.substr(2));
  return std::string(first);
}

std::vector<CorpusEntry> load_embedded() {
  std::vector<CorpusEntry> entries;
  for (std::size_t i = 0; i < detail::kEmbeddedCorpusSize; ++i) {
    const auto& file = detail::kEmbeddedCorpus[i];
    entries.push_back({std::string(file.name), std::string(file.text),
                       provenance_of(file.text)});
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  return entries;
}

std::string derived_name(int index) {
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "derived-%02d", index);
  return buffer;
}

}  // namespace

std::span<const CorpusEntry> embedded_corpus() {
  static const std::vector<CorpusEntry> entries = load_embedded();
  return entries;
}

CorpusEntry derived_entry(int index) {
  if (index < 1 || index > kDerivedCount) {
    throw Error("derived configuration index must be in [1, 30]");
  }
  const std::string_view base_name = kRealSystems[static_cast<std::size_t>((index - 1) % 5)];
  const double fraction = 0.2 + 0.1 * ((index - 1) / 5);
  const SystemModel base = corpus_model(base_name);
  const int k = base.parameter_count();

  std::vector<char> keep(static_cast<std::size_t>(k), 0);
  for (const auto& tuple : base.constraints()) {
    for (const auto& a : tuple.assignments()) keep[static_cast<std::size_t>(a.param)] = 1;
  }
  std::vector<int> free;
  for (int p = 0; p < k; ++p) {
    if (!keep[static_cast<std::size_t>(p)]) free.push_back(p);
  }
  Rng rng(derive_seed(kDerivedSeed, static_cast<std::uint64_t>(index)));
  const auto wanted = static_cast<std::size_t>(fraction * static_cast<double>(free.size()) + 0.5);
  for (std::size_t n = 0; n < wanted; ++n) {
    auto pick = n + static_cast<std::size_t>(rng.below(static_cast<int>(free.size() - n)));
    std::swap(free[n], free[pick]);
    keep[static_cast<std::size_t>(free[n])] = 1;
  }

  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  std::vector<int> values;
  for (int p = 0; p < k; ++p) {
    if (!keep[static_cast<std::size_t>(p)]) continue;
    remap[static_cast<std::size_t>(p)] = static_cast<int>(values.size());
    values.push_back(base.value_count(p));
  }
  ConstraintSet constraints;
  for (const auto& tuple : base.constraints()) {
    std::vector<Assignment> moved;
    for (const auto& a : tuple.assignments()) {
      moved.push_back({remap[static_cast<std::size_t>(a.param)], a.value});
    }
    constraints.add(ForbiddenTuple(std::move(moved)));
  }
  SystemModel model(base.strength(), std::move(values), std::move(constraints));

  const std::string provenance =
      "derived from " + std::string(base_name) + ": kept " +
      std::to_string(model.parameter_count()) + " of " + std::to_string(k) +
      " parameters (" + to_notation(model).str() + ")";
  return {derived_name(index), "# " + provenance + "\n" + render_model(model), provenance};
}

std::vector<std::string> benchmark_names() {
  std::vector<std::string> names;
  for (const auto& e : embedded_corpus()) names.push_back(e.name);
  for (int i = 1; i <= kDerivedCount; ++i) names.push_back(derived_name(i));
  return names;
}

CorpusEntry corpus_entry(std::string_view name) {
  for (const auto& e : embedded_corpus()) {
    if (e.name == name) return e;
  }
  if (name.starts_with("derived-")) {
    for (int i = 1; i <= kDerivedCount; ++i) {
      if (derived_name(i) == name) return derived_entry(i);
    }
  }
  std::string available;
  for (const auto& n : benchmark_names()) {
    if (!available.empty()) available += ", ";
    available += n;
  }
  throw Error("unknown benchmark '" + std::string(name) + "'; available: " + available);
}

SystemModel corpus_model(std::string_view name) {
  return parse_model(corpus_entry(name).text);
}

std::uint64_t corpus_hash() {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& e : embedded_corpus()) {
    for (char c : e.name + '\0' + e.text) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

}  // namespace swarmcit

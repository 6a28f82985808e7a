#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarmcit/errors.h"
#include "swarmcit/model.h"
#include "swarmcit/mopso.h"

namespace swarmcit {

struct GenerateOptions {
  // Consecutive failed swarm rounds (no feasible row) before giving up.
  int max_failed_rounds = 3;
  // When the swarm gives up, each open tuple gets an exact completion search
  // with this many value assignments: a found row is appended, a tuple with no
  // violation-free row is retired as uncoverable. 0 disables the search.
  std::uint64_t completion_budget = 1'000'000;
  // Wall-clock budget for the whole run; none by default.
  std::optional<std::chrono::milliseconds> timeout;
};

struct GenerationReport {
  TestSuite suite;
  std::size_t rows = 0;
  int rounds = 0;  // swarm rounds run, including retried ones
  std::chrono::nanoseconds wall_time{0};
  std::uint64_t initial_tuples = 0;
  std::uint64_t pruned_tuples = 0;
  std::uint64_t covered_tuples = 0;
  // Tuples that survived pruning but fit no violation-free row; not counted in
  // pruned_tuples.
  std::vector<ValueTuple> uncoverable;
  std::uint64_t seed = 0;
  // Fresh tuples covered by each appended row, in order.
  std::vector<std::uint64_t> row_gains;
};

// The wall-clock budget ran out. Carries the partial report and the tuples
// still open.
class GenerationTimeout : public Error {
 public:
  GenerationTimeout(GenerationReport partial, std::vector<ValueTuple> open)
      : Error("generation timed out after " + std::to_string(partial.rows) + " rows"),
        partial_(std::move(partial)),
        open_(std::move(open)) {}

  const GenerationReport& partial() const { return partial_; }
  const std::vector<ValueTuple>& open_tuples() const { return open_; }

 private:
  GenerationReport partial_;
  std::vector<ValueTuple> open_;
};

// One-row-at-a-time construction: build the tuple store, prune tuples that
// contain a forbidden tuple, then repeatedly ask the swarm for the best
// violation-free row, append it and mark its tuples covered until none are
// open.
//
// Throws ConfigError for an invalid cfg, StuckTuples when the swarm fails
// opts.max_failed_rounds rounds in a row and the completion search can neither
// place nor rule out the open tuples, and GenerationTimeout when opts.timeout
// expires.
GenerationReport generate(const SystemModel& model, const SwarmConfig& cfg,
                          const GenerateOptions& opts = {});

struct BenchmarkRun {
  int rep = 0;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  double millis = 0;
  bool verified = false;
};

struct BenchmarkStats {
  std::string name;
  std::vector<BenchmarkRun> runs;
  std::size_t best_size = 0;
  double mean_size = 0;
  double mean_millis = 0;
};

// Seed for repetition `rep` of a benchmark run with master seed `seed`.
std::uint64_t repetition_seed(std::uint64_t seed, int rep);

// Runs `generate` on a corpus model `repetitions` times with derived seeds.
// Every suite is checked by the verifier; a suite that fails verification
// throws Error. Unknown names throw Error listing the corpus.
BenchmarkStats run_benchmark(std::string_view name, const SwarmConfig& cfg,
                             int repetitions, const GenerateOptions& opts = {});

}  // namespace swarmcit

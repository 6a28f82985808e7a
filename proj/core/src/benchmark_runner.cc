#include <limits>

#include "swarmcit/corpus.h"
#include "swarmcit/generator.h"
#include "swarmcit/random.h"
#include "swarmcit/verify.h"

namespace swarmcit {

std::uint64_t repetition_seed(std::uint64_t seed, int rep) {
  return derive_seed(seed ^ 0xbe0c4a11ull, static_cast<std::uint64_t>(rep));
}

BenchmarkStats run_benchmark(std::string_view name, const SwarmConfig& cfg,
                             int repetitions, const GenerateOptions& opts) {
  if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
  const SystemModel model = corpus_model(name);

  BenchmarkStats stats;
  stats.name = std::string(name);
  std::size_t counted = 0;
  double size_sum = 0;
  double millis_sum = 0;
  stats.best_size = std::numeric_limits<std::size_t>::max();
  for (int rep = 0; rep < repetitions; ++rep) {
    SwarmConfig run_cfg = cfg;
    run_cfg.seed = repetition_seed(cfg.seed, rep);
    GenerationReport report = generate(model, run_cfg, opts);

    BenchmarkRun run;
    run.rep = rep;
    run.seed = run_cfg.seed;
    run.size = report.rows;
    run.millis = std::chrono::duration<double, std::milli>(report.wall_time).count();
    // Only suites the verifier accepts count towards the statistics.
    run.verified = check(report.suite, model).passed;
    if (run.verified) {
      ++counted;
      size_sum += static_cast<double>(run.size);
      millis_sum += run.millis;
      stats.best_size = std::min(stats.best_size, run.size);
    }
    stats.runs.push_back(run);
  }
  if (counted == 0) {
    throw Error("no run of benchmark '" + stats.name + "' passed verification");
  }
  stats.mean_size = size_sum / static_cast<double>(counted);
  stats.mean_millis = millis_sum / static_cast<double>(counted);
  return stats;
}

}  // namespace swarmcit

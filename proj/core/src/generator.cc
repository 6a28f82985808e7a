#include "swarmcit/generator.h"

#include "swarmcit/completion.h"
#include "swarmcit/random.h"
#include "swarmcit/tuple_store.h"

namespace swarmcit {

GenerationReport generate(const SystemModel& model, const SwarmConfig& cfg,
                          const GenerateOptions& opts) {
  cfg.validate();
  if (opts.max_failed_rounds < 1) {
    throw ConfigError("max failed rounds must be at least 1");
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  GenerationReport report;
  report.seed = cfg.seed;

  TupleStore store = TupleStore::build(model);
  report.initial_tuples = store.initial_total();
  report.pruned_tuples = store.prune_constrained(model.constraints());

  Swarm swarm(cfg);
  int failed = 0;
  while (!store.is_empty()) {
    if (opts.timeout && Clock::now() - start >= *opts.timeout) {
      report.rows = report.suite.size();
      report.wall_time = Clock::now() - start;
      report.covered_tuples = store.covered_total();
      throw GenerationTimeout(std::move(report), store.open_tuples());
    }

    const auto round_seed =
        derive_seed(cfg.seed, static_cast<std::uint64_t>(report.rounds));
    ++report.rounds;
    SwarmResult found;
    try {
      found = swarm.run_round(store, model.constraints(), round_seed);
    } catch (const NoFeasibleRow&) {
      if (++failed < opts.max_failed_rounds) continue;
      if (opts.completion_budget == 0) {
        auto open = store.open_tuples();
        throw StuckTuples(std::to_string(open.size()) +
                              " tuples could not be placed in a violation-free "
                              "row after " + std::to_string(failed) + " rounds",
                          std::move(open), std::move(report.suite));
      }
      std::vector<ValueTuple> unknown;
      for (auto& tuple : store.open_tuples()) {
        auto completion = complete_row(model, tuple, opts.completion_budget);
        if (completion.status == Completion::kFound) {
          Rng rng(derive_seed(round_seed, 0x636f6d70ULL));
          found.position = neighbour_refine(std::move(completion.row), store,
                                            model.constraints(), rng);
          break;
        }
        if (completion.status == Completion::kInfeasible) {
          store.remove_tuple(tuple);
          report.uncoverable.push_back(std::move(tuple));
        } else {
          unknown.push_back(std::move(tuple));
        }
      }
      if (found.position.empty()) {
        if (unknown.empty()) continue;
        throw StuckTuples(std::to_string(unknown.size()) +
                              " tuples fit no row the swarm found and their "
                              "completion search ran out of budget",
                          std::move(unknown), std::move(report.suite));
      }
    }
    failed = 0;

    const std::uint64_t gained = store.mark_covered(found.position);
    report.row_gains.push_back(gained);
    report.suite.rows.emplace_back(std::move(found.position));
  }

  report.rows = report.suite.size();
  report.covered_tuples = store.covered_total();
  report.wall_time = Clock::now() - start;
  return report;
}

}  // namespace swarmcit

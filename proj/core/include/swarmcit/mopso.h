#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "swarmcit/errors.h"
#include "swarmcit/model.h"
#include "swarmcit/random.h"
#include "swarmcit/tuple_store.h"
#include "swarmcit/worker_pool.h"

namespace swarmcit {

// The two objectives of a candidate row: fresh tuples it covers (maximise)
// and forbidden tuples it matches (minimise).
struct Fitness {
  std::uint64_t coverage = 0;
  int violations = 0;

  friend bool operator==(const Fitness&, const Fitness&) = default;
};

// Pareto dominance with both objectives oriented as minimisation
// (-coverage, violations): no worse in both, strictly better in one.
bool dominates(const Fitness& a, const Fitness& b);

// Total order used for personal and swarm bests: fewer violations first, then
// more coverage.
bool better(const Fitness& a, const Fitness& b);

struct SwarmConfig {
  int particles = 80;
  int workers = 8;
  double inertia = 0.7;
  double cognitive = 1.5;
  double social = 1.5;
  int max_iterations = 500;
  int stagnation_window = 30;
  std::uint64_t seed = 0;

  // Throws ConfigError unless particles % workers == 0, particles >= workers
  // >= 1, the coefficients are positive and the budgets are at least 1.
  void validate() const;
};

struct Particle {
  std::vector<int> position;
  std::vector<double> velocity;
  std::vector<int> pbest_position;
  Fitness fitness;
  Fitness pbest_fitness;
};

// v' = w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x) per dimension, with r1 and
// r2 drawn from `unit` (r1 then r2 for each dimension in order), clamped to
// +/-(v_i - 1).
std::vector<double> update_velocity(const Particle& p, std::span<const int> gbest,
                                    std::span<const int> value_counts,
                                    const SwarmConfig& cfg,
                                    const std::function<double()>& unit);

// x' = round(x + v) clamped into [0, v_i - 1].
std::vector<int> update_position(std::span<const int> position,
                                 std::span<const double> velocity,
                                 std::span<const int> value_counts);

Fitness evaluate(std::span<const int> position, const TupleStore& store,
                 const ConstraintSet& constraints);

// Single-value moves, one dimension at a time in an rng-shuffled order; a move
// is kept when it is better() than the current row. Repeats full passes until
// one makes no change or `max_passes` is reached. Never returns a worse row.
std::vector<int> neighbour_refine(std::vector<int> position, const TupleStore& store,
                                  const ConstraintSet& constraints, Rng& rng,
                                  int max_passes = 4);

// If `position` covers no open tuple of the bucket with the most open tuples,
// tries each such tuple written into it and refined, and returns the best
// violation-free result that still covers one. Otherwise returns `position`.
std::vector<int> cover_densest_bucket(std::vector<int> position, const TupleStore& store,
                                      const ConstraintSet& constraints, Rng& rng,
                                      std::size_t max_candidates = 32);

// Bounded archive of round candidates. Admits an entry when it has zero
// violations or the minimum violations of its round; on overflow evicts the
// oldest dominated entry, else the oldest entry.
class ParetoSet {
 public:
  struct Entry {
    std::vector<int> position;
    Fitness fitness;
    std::uint64_t stamp = 0;
  };

  explicit ParetoSet(std::size_t capacity);

  // Returns true when the entry was admitted and no existing entry dominates
  // or equals it (the set improved).
  bool admit(std::span<const int> position, const Fitness& fitness,
             int round_min_violations);

  // Zero-violation entry with the highest coverage (oldest on ties).
  const Entry* select() const;
  // better()-best entry regardless of violations.
  const Entry* best() const;

  std::span<const Entry> entries() const { return entries_; }
  std::size_t capacity() const { return capacity_; }

 private:
  std::size_t capacity_;
  std::vector<Entry> entries_;
  std::uint64_t clock_ = 0;
};

// No zero-violation row covering a fresh tuple was found in a round.
class NoFeasibleRow : public Error {
 public:
  using Error::Error;
};

struct SwarmResult {
  std::vector<int> position;
  Fitness fitness;
  int iterations = 0;
};

// Reusable swarm: owns the worker pool so generation rounds do not respawn
// threads.
class Swarm {
 public:
  explicit Swarm(SwarmConfig cfg);

  const SwarmConfig& config() const { return cfg_; }

  // One search for the next row. Particle i draws from a stream derived from
  // (round_seed, i), and block bests are merged in block order, so the result
  // does not depend on the worker count.
  SwarmResult run_round(const TupleStore& store, const ConstraintSet& constraints,
                        std::uint64_t round_seed);

 private:
  SwarmConfig cfg_;
  std::unique_ptr<WorkerPool> pool_;
};

// Convenience wrapper: Swarm(cfg).run_round(store, constraints, cfg.seed).
SwarmResult run_swarm_round(const TupleStore& store, const ConstraintSet& constraints,
                            const SwarmConfig& cfg);

}  // namespace swarmcit

#include "swarmcit/mopso.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace swarmcit {

bool dominates(const Fitness& a, const Fitness& b) {
  const bool no_worse = a.coverage >= b.coverage && a.violations <= b.violations;
  const bool strictly = a.coverage > b.coverage || a.violations < b.violations;
  return no_worse && strictly;
}

bool better(const Fitness& a, const Fitness& b) {
  if (a.violations != b.violations) return a.violations < b.violations;
  return a.coverage > b.coverage;
}

void SwarmConfig::validate() const {
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (particles < workers) {
    throw ConfigError("particles (" + std::to_string(particles) +
                      ") must be at least workers (" + std::to_string(workers) + ")");
  }
  if (particles % workers != 0) {
    throw ConfigError("particles (" + std::to_string(particles) +
                      ") must be a multiple of workers (" +
                      std::to_string(workers) + ")");
  }
  if (!(inertia > 0) || !(cognitive > 0) || !(social > 0)) {
    throw ConfigError("inertia, c1 and c2 must be positive");
  }
  if (max_iterations < 1) throw ConfigError("max iterations must be at least 1");
  if (stagnation_window < 1) throw ConfigError("stagnation window must be at least 1");
}

std::vector<double> update_velocity(const Particle& p, std::span<const int> gbest,
                                    std::span<const int> value_counts,
                                    const SwarmConfig& cfg,
                                    const std::function<double()>& unit) {
  std::vector<double> next(p.position.size());
  for (std::size_t d = 0; d < next.size(); ++d) {
    const double x = p.position[d];
    const double r1 = unit();
    const double r2 = unit();
    double v = cfg.inertia * p.velocity[d] +
               cfg.cognitive * r1 * (p.pbest_position[d] - x) +
               cfg.social * r2 * (gbest[d] - x);
    const double vmax = value_counts[d] - 1;
    next[d] = std::clamp(v, -vmax, vmax);
  }
  return next;
}

std::vector<int> update_position(std::span<const int> position,
                                 std::span<const double> velocity,
                                 std::span<const int> value_counts) {
  std::vector<int> next(position.size());
  for (std::size_t d = 0; d < next.size(); ++d) {
    const double moved = std::round(position[d] + velocity[d]);
    const double top = value_counts[d] - 1;
    next[d] = static_cast<int>(std::clamp(moved, 0.0, top));
  }
  return next;
}

Fitness evaluate(std::span<const int> position, const TupleStore& store,
                 const ConstraintSet& constraints) {
  return {store.covered_count(position), violates(position, constraints)};
}

namespace {

int violations_at(std::span<const int> row, const ConstraintSet& constraints,
                  int param) {
  int count = 0;
  for (const auto& tuple : constraints) {
    bool involves = false;
    for (const auto& a : tuple.assignments()) involves |= a.param == param;
    if (involves && tuple.matches(row)) ++count;
  }
  return count;
}

}  // namespace

std::vector<int> neighbour_refine(std::vector<int> position, const TupleStore& store,
                                  const ConstraintSet& constraints, Rng& rng,
                                  int max_passes) {
  const auto values = store.value_counts();
  Fitness current = evaluate(position, store, constraints);
  std::vector<int> order(position.size());
  std::iota(order.begin(), order.end(), 0);

  for (int pass = 0; pass < max_passes; ++pass) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng.below(static_cast<int>(i)))]);
    }
    bool changed = false;
    for (int d : order) {
      const int original = position[d];
      // Only tuples and constraints touching d change, so score the move by
      // its delta on those.
      const std::uint64_t cov_here = store.covered_count_at(position, d);
      const int viol_here = violations_at(position, constraints, d);
      int best_value = original;
      Fitness best = current;
      for (int value = 0; value < values[d]; ++value) {
        if (value == original) continue;
        position[d] = value;
        Fitness candidate{
            current.coverage - cov_here + store.covered_count_at(position, d),
            current.violations - viol_here + violations_at(position, constraints, d)};
        if (better(candidate, best)) {
          best = candidate;
          best_value = value;
        }
      }
      position[d] = best_value;
      if (best_value != original) {
        current = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return position;
}

ParetoSet::ParetoSet(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw ConfigError("Pareto set capacity must be positive");
}

bool ParetoSet::admit(std::span<const int> position, const Fitness& fitness,
                      int round_min_violations) {
  if (fitness.violations != 0 && fitness.violations != round_min_violations) {
    return false;
  }
  const bool improves = std::none_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return e.fitness == fitness || dominates(e.fitness, fitness);
  });
  if (entries_.size() == capacity_) {
    // Entries are kept in admission order, so the first match is the oldest.
    auto victim = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) {
      return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& other) {
               return dominates(other.fitness, e.fitness);
             }) ||
             dominates(fitness, e.fitness);
    });
    if (victim == entries_.end()) victim = entries_.begin();
    entries_.erase(victim);
  }
  entries_.push_back({std::vector<int>(position.begin(), position.end()), fitness, clock_++});
  return improves;
}

const ParetoSet::Entry* ParetoSet::select() const {
  const Entry* chosen = nullptr;
  for (const auto& e : entries_) {
    if (e.fitness.violations != 0) continue;
    if (!chosen || e.fitness.coverage > chosen->fitness.coverage) chosen = &e;
  }
  return chosen;
}

const ParetoSet::Entry* ParetoSet::best() const {
  const Entry* chosen = nullptr;
  for (const auto& e : entries_) {
    if (!chosen || better(e.fitness, chosen->fitness)) chosen = &e;
  }
  return chosen;
}

Swarm::Swarm(SwarmConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  pool_ = std::make_unique<WorkerPool>(cfg_.workers);
}

std::vector<int> cover_densest_bucket(std::vector<int> position, const TupleStore& store,
                                      const ConstraintSet& constraints, Rng& rng,
                                      std::size_t max_candidates) {
  std::size_t densest = store.bucket_count();
  std::uint64_t most = 0;
  for (std::size_t b = 0; b < store.bucket_count(); ++b) {
    if (store.bucket(b).open > most) {
      most = store.bucket(b).open;
      densest = b;
    }
  }
  if (densest == store.bucket_count()) return position;
  const auto& bucket = store.bucket(densest);

  const auto open_at = [&](std::span<const int> row) {
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      if (bucket.states[i] != TupleState::kOpen) continue;
      const auto tuple = bucket.tuple(i);
      bool match = true;
      for (std::size_t j = 0; j < tuple.size() && match; ++j) {
        match = row[static_cast<std::size_t>(bucket.combination[j])] == tuple[j];
      }
      if (match) return true;
    }
    return false;
  };
  if (open_at(position)) return position;

  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < bucket.size(); ++i) {
    if (bucket.states[i] == TupleState::kOpen) open.push_back(i);
  }
  for (std::size_t i = open.size(); i > 1; --i) {
    std::swap(open[i - 1], open[static_cast<std::size_t>(rng.below(static_cast<int>(i)))]);
  }
  if (open.size() > max_candidates) open.resize(max_candidates);

  std::vector<int> best;
  Fitness best_fitness;
  for (std::size_t i : open) {
    auto candidate = position;
    const auto tuple = bucket.tuple(i);
    for (std::size_t j = 0; j < tuple.size(); ++j) {
      candidate[static_cast<std::size_t>(bucket.combination[j])] = tuple[j];
    }
    candidate = neighbour_refine(std::move(candidate), store, constraints, rng);
    if (!open_at(candidate)) continue;
    const Fitness fitness = evaluate(candidate, store, constraints);
    if (fitness.violations != 0) continue;
    if (best.empty() || better(fitness, best_fitness)) {
      best = std::move(candidate);
      best_fitness = fitness;
    }
  }
  return best.empty() ? position : best;
}

SwarmResult Swarm::run_round(const TupleStore& store, const ConstraintSet& constraints,
                             std::uint64_t round_seed) {
  const auto values = store.value_counts();
  const std::size_t k = values.size();
  const int m = cfg_.particles;
  const int per_block = m / pool_->size();

  std::vector<Particle> swarm(static_cast<std::size_t>(m));
  std::vector<Rng> rngs;
  rngs.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) rngs.emplace_back(derive_seed(round_seed, static_cast<std::uint64_t>(i)));
  std::vector<int> block_best(static_cast<std::size_t>(pool_->size()), -1);

  // Runs `step` on every particle of each block and records the block's best
  // current position (lowest index on ties).
  auto sweep = [&](const auto& step) {
    pool_->run([&](int block) {
      int best = -1;
      for (int i = block * per_block; i < (block + 1) * per_block; ++i) {
        step(swarm[static_cast<std::size_t>(i)], rngs[static_cast<std::size_t>(i)]);
        if (best < 0 || better(swarm[static_cast<std::size_t>(i)].fitness,
                               swarm[static_cast<std::size_t>(best)].fitness)) {
          best = i;
        }
      }
      block_best[static_cast<std::size_t>(block)] = best;
    });
    int best = block_best.front();
    for (int b : block_best) {
      if (better(swarm[static_cast<std::size_t>(b)].fitness,
                 swarm[static_cast<std::size_t>(best)].fitness)) {
        best = b;
      }
    }
    return static_cast<std::size_t>(best);
  };

  std::size_t leader = sweep([&](Particle& p, Rng& rng) {
    p.position.resize(k);
    for (std::size_t d = 0; d < k; ++d) p.position[d] = rng.below(values[d]);
    p.velocity.assign(k, 0.0);
    p.fitness = evaluate(p.position, store, constraints);
    p.pbest_position = p.position;
    p.pbest_fitness = p.fitness;
  });

  ParetoSet pareto(static_cast<std::size_t>(m));
  std::vector<int> lbest = swarm[leader].position;
  Fitness lbest_fitness = swarm[leader].fitness;
  pareto.admit(lbest, lbest_fitness, lbest_fitness.violations);

  const std::uint64_t ceiling = store.open_bucket_count();
  int iterations = 0;
  int stagnant = 0;
  while (iterations < cfg_.max_iterations) {
    if (lbest_fitness.violations == 0 && lbest_fitness.coverage >= ceiling) break;
    ++iterations;
    leader = sweep([&](Particle& p, Rng& rng) {
      p.velocity = update_velocity(p, lbest, values, cfg_, [&rng] { return rng.unit(); });
      p.position = update_position(p.position, p.velocity, values);
      p.fitness = evaluate(p.position, store, constraints);
      if (better(p.fitness, p.pbest_fitness)) {
        p.pbest_position = p.position;
        p.pbest_fitness = p.fitness;
      }
    });
    const Particle& top = swarm[leader];
    const bool improved = pareto.admit(top.position, top.fitness, top.fitness.violations);
    if (better(top.fitness, lbest_fitness)) {
      lbest = top.position;
      lbest_fitness = top.fitness;
    }
    stagnant = improved ? 0 : stagnant + 1;
    if (stagnant >= cfg_.stagnation_window) break;
  }

  const ParetoSet::Entry* winner = pareto.select();
  if (!winner) winner = pareto.best();
  Rng refine_rng(derive_seed(round_seed, static_cast<std::uint64_t>(m)));
  SwarmResult result;
  result.position = neighbour_refine(winner->position, store, constraints, refine_rng);
  result.position = cover_densest_bucket(std::move(result.position), store, constraints,
                                         refine_rng);
  result.fitness = evaluate(result.position, store, constraints);
  result.iterations = iterations;
  if (result.fitness.violations != 0 || result.fitness.coverage == 0) {
    throw NoFeasibleRow("swarm found no violation-free row covering an open tuple after " +
                        std::to_string(iterations) + " iterations");
  }
  return result;
}

SwarmResult run_swarm_round(const TupleStore& store, const ConstraintSet& constraints,
                            const SwarmConfig& cfg) {
  Swarm swarm(cfg);
  return swarm.run_round(store, constraints, cfg.seed);
}

}  // namespace swarmcit

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "boundary/distance.hpp"
#include "boundary/generators.hpp"
#include "boundary/rng.hpp"
#include "boundary/test_set.hpp"

namespace boundary {

/// Level-1 nested Monte-Carlo search settings.
struct NmcsBudget {
  /// Options tried at each choice point.
  std::size_t choices_evaluated = 2;
  /// Random playouts per tried option.
  std::size_t playouts_per_choice = 1;
  /// Choice points searched per selection; later points keep the best playout's answers.
  std::size_t max_choice_points = 256;
  /// Consecutive duplicate-only selections tolerated before GenerationStall.
  std::size_t stall_limit = 50;
};

/// Bookkeeping for one accepted candidate.
struct SelectionRound {
  /// Fitness of every playout evaluated in the accepted attempt, in order.
  std::vector<double> evaluated;
  double accepted_fitness = 0;
  /// Attempts discarded as duplicates before this one.
  std::size_t rejected_attempts = 0;
  ChoiceTrace trace;
};

struct Tset {
  TestSet candidates{Role::tset};
  std::string metric_name;
  std::size_t target_size = 0;
  std::vector<SelectionRound> rounds;
};

/// `count` distinct random samples tagged origin "initial".
TestSet initial_test_set(const Generator& generator, std::size_t count, Rng& rng);

/// Grows `initial` to `target_size` members. Each new member is the best
/// playout of a level-1 NMCS over the generator's choice points, scored by
/// its minimum distance to the current set (maximized). Exact duplicates
/// score 0 and are never accepted. Deterministic for a given rng state.
///
/// Throws GenerationStall after `budget.stall_limit` consecutive attempts
/// whose best playout is a duplicate, and std::invalid_argument when the
/// initial set is already larger than `target_size`.
Tset nmcs_step1(const Generator& generator, const TestSet& initial, const DistanceMetric& metric,
                std::size_t target_size, const NmcsBudget& budget, Rng& rng,
                std::uint64_t run_seed = 0);

}  // namespace boundary

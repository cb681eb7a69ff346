#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boundary/mutation.hpp"
#include "boundary/oracles.hpp"
#include "boundary/rng.hpp"
#include "boundary/test_set.hpp"

namespace boundary {

enum class WalkMode {
  /// Every mutant becomes the next parent (random walk).
  advance_always,
  /// Mutants are drawn from the last switch point until validity flips.
  advance_on_switch,
};

std::string_view to_string(WalkMode mode);
std::optional<WalkMode> parse_walk_mode(std::string_view name);

struct SwitchBudget {
  std::size_t target_switches = 20;
  std::size_t max_mutations_per_switch = 500;
  std::size_t max_total_mutations = 5000;
  WalkMode walk_mode = WalkMode::advance_always;
};

struct TraceEntry {
  std::string text;
  bool valid = false;
  std::string operator_name;  // empty for the seed
  /// Trace index of the string this one was mutated from; empty for the seed.
  std::optional<std::size_t> parent;
};

enum class SearchOutcome {
  /// target_switches reached.
  completed,
  /// max_mutations_per_switch consecutive mutants kept the current validity.
  no_switch_found,
  /// max_total_mutations reached first.
  budget_exhausted,
  /// No operator in the set has a site in the current string.
  no_applicable_site,
};

std::string_view to_string(SearchOutcome outcome);

/// Valid and invalid mutants grown from one Tset member.
struct BoundaryPair {
  Candidate seed;
  std::size_t seed_index = 0;
  TestSet mvs{Role::mvs};
  TestSet mis{Role::mis};
  std::vector<TraceEntry> trace;
  /// Trace indices of mutants whose validity differs from their parent's.
  std::vector<std::size_t> switches;
  SearchOutcome outcome = SearchOutcome::completed;
  std::size_t oracle_evaluations = 0;
};

/// Mutates `seed` back and forth across the validity boundary.
///
/// Every mutant is checked by the oracle and added to mvs or mis. A mutant
/// whose validity differs from its parent's is a switch. Mutations without a
/// site are retried and not counted. Throws std::invalid_argument when the
/// seed is not valid or the budget has a zero field; OracleError propagates.
BoundaryPair property_switch_search(const Candidate& seed, const MutatorSet& operators,
                                    const ValidityOracle& oracle, const SwitchBudget& budget,
                                    Rng& rng, std::size_t seed_index = 0);

/// One pair per Tset member, each with its own stream derived from
/// `master_seed` and the member's index. Pairs are computed in parallel;
/// the result does not depend on the thread count. Throws EmptySetError.
std::vector<BoundaryPair> run_step2(const TestSet& tset, const MutatorSet& operators,
                                    const ValidityOracle& oracle, const SwitchBudget& budget,
                                    std::uint64_t master_seed);

/// Same as run_step2, one pair after another.
std::vector<BoundaryPair> run_step2_serial(const TestSet& tset, const MutatorSet& operators,
                                           const ValidityOracle& oracle,
                                           const SwitchBudget& budget, std::uint64_t master_seed);

/// Union of the pairs' mvs (or mis) in pair order, first occurrence kept.
TestSet aggregate_mvs(const std::vector<BoundaryPair>& pairs);
TestSet aggregate_mis(const std::vector<BoundaryPair>& pairs);

}  // namespace boundary

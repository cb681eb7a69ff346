#include "boundary/switchsearch.hpp"

#include <exception>
#include <stdexcept>

#include "boundary/errors.hpp"

namespace boundary {

std::string_view to_string(WalkMode mode) {
  return mode == WalkMode::advance_always ? "advance_always" : "advance_on_switch";
}

std::optional<WalkMode> parse_walk_mode(std::string_view name) {
  if (name == "advance_always") return WalkMode::advance_always;
  if (name == "advance_on_switch") return WalkMode::advance_on_switch;
  return std::nullopt;
}

std::string_view to_string(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::completed: return "completed";
    case SearchOutcome::no_switch_found: return "no_switch_found";
    case SearchOutcome::budget_exhausted: return "budget_exhausted";
    case SearchOutcome::no_applicable_site: return "no_applicable_site";
  }
  return "unknown";
}

BoundaryPair property_switch_search(const Candidate& seed, const MutatorSet& operators,
                                    const ValidityOracle& oracle, const SwitchBudget& budget,
                                    Rng& rng, std::size_t seed_index) {
  if (budget.target_switches == 0 || budget.max_mutations_per_switch == 0 ||
      budget.max_total_mutations == 0)
    throw std::invalid_argument("switch budget fields must be positive");

  BoundaryPair pair;
  pair.seed = seed;
  pair.seed_index = seed_index;
  pair.oracle_evaluations = 1;
  if (!oracle.check(seed.text).valid)
    throw std::invalid_argument("property switch search needs a valid seed: '" + seed.text + "'");
  pair.trace.push_back({seed.text, true, "", std::nullopt});

  std::size_t current = 0;  // trace index of the parent for the next mutation
  std::size_t since_switch = 0;
  std::size_t mutations = 0;
  pair.outcome = SearchOutcome::budget_exhausted;

  while (mutations < budget.max_total_mutations) {
    const TraceEntry& parent = pair.trace[current];
    if (!operators.any_site(parent.text)) {
      pair.outcome = SearchOutcome::no_applicable_site;
      break;
    }
    Mutation mutant = mutate(parent.text, operators, rng);
    if (mutant.no_site) continue;

    const bool parent_valid = parent.valid;
    const bool valid = oracle.check(mutant.text).valid;
    ++mutations;
    ++pair.oracle_evaluations;
    const std::size_t step = pair.trace.size();

    Candidate candidate{mutant.text, valid, {}};
    candidate.provenance.origin = "step2";
    candidate.provenance.seed_index = seed_index;
    candidate.provenance.step_index = step;
    candidate.provenance.operator_name = mutant.operator_name;
    (valid ? pair.mvs : pair.mis).insert(std::move(candidate));
    pair.trace.push_back({std::move(mutant.text), valid, std::move(mutant.operator_name), current});

    const bool switched = valid != parent_valid;
    if (switched) {
      pair.switches.push_back(step);
      since_switch = 0;
    } else {
      ++since_switch;
    }
    if (switched || budget.walk_mode == WalkMode::advance_always) current = step;

    if (pair.switches.size() >= budget.target_switches) {
      pair.outcome = SearchOutcome::completed;
      break;
    }
    if (since_switch >= budget.max_mutations_per_switch) {
      pair.outcome = SearchOutcome::no_switch_found;
      break;
    }
  }
  return pair;
}

namespace {

void check_tset(const TestSet& tset) {
  if (tset.empty()) throw EmptySetError("run_step2 needs a non-empty Tset");
}

}  // namespace

std::vector<BoundaryPair> run_step2(const TestSet& tset, const MutatorSet& operators,
                                    const ValidityOracle& oracle, const SwitchBudget& budget,
                                    std::uint64_t master_seed) {
  check_tset(tset);
  std::vector<BoundaryPair> pairs(tset.size());
  const auto n = static_cast<std::int64_t>(tset.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto index = static_cast<std::size_t>(i);
    try {
      Rng rng(derive_seed(master_seed, index));
      pairs[index] = property_switch_search(tset[index], operators, oracle, budget, rng, index);
    } catch (...) {
#pragma omp critical(boundary_step2_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return pairs;
}

std::vector<BoundaryPair> run_step2_serial(const TestSet& tset, const MutatorSet& operators,
                                           const ValidityOracle& oracle,
                                           const SwitchBudget& budget, std::uint64_t master_seed) {
  check_tset(tset);
  std::vector<BoundaryPair> pairs;
  pairs.reserve(tset.size());
  for (std::size_t i = 0; i < tset.size(); ++i) {
    Rng rng(derive_seed(master_seed, i));
    pairs.push_back(property_switch_search(tset[i], operators, oracle, budget, rng, i));
  }
  return pairs;
}

TestSet aggregate_mvs(const std::vector<BoundaryPair>& pairs) {
  TestSet out(Role::mvs);
  for (const auto& pair : pairs)
    for (const auto& c : pair.mvs) out.insert(c);
  return out;
}

TestSet aggregate_mis(const std::vector<BoundaryPair>& pairs) {
  TestSet out(Role::mis);
  for (const auto& pair : pairs)
    for (const auto& c : pair.mis) out.insert(c);
  return out;
}

}  // namespace boundary

#include "boundary/nmcs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "boundary/errors.hpp"

namespace boundary {
namespace {

struct Playout {
  std::string text;
  std::vector<Decision> decisions;
  double fitness = 0;
};

class Selector {
 public:
  Selector(const Generator& generator, const TestSet& tset, const DistanceMetric& metric,
           const NmcsBudget& budget, Rng& rng)
      : generator_(generator), tset_(tset), metric_(metric), budget_(budget), rng_(rng) {}

  Playout select(std::vector<double>& evaluated) {
    Playout best = playout({}, evaluated);
    for (std::size_t point = 0;
         point < best.decisions.size() && point < budget_.max_choice_points; ++point) {
      const std::size_t arity = best.decisions[point].arity;
      const std::vector<std::size_t> options = sample_options(arity);
      // Copy: `best` may be replaced while its prefix is in use.
      std::vector<Decision> prefix(best.decisions.begin(), best.decisions.begin() + point + 1);
      for (std::size_t option : options) {
        prefix.back().index = option;
        for (std::size_t p = 0; p < budget_.playouts_per_choice; ++p) {
          Playout candidate = playout(prefix, evaluated);
          if (candidate.fitness > best.fitness) best = std::move(candidate);
        }
      }
    }
    return best;
  }

 private:
  Playout playout(std::span<const Decision> prefix, std::vector<double>& evaluated) {
    RecordingChoices choices(&rng_, prefix);
    Playout out;
    out.text = generator_.generate(choices);
    out.decisions = choices.take();
    out.fitness = tset_.contains(out.text) ? 0.0 : min_dist_to_set(out.text, tset_, metric_);
    evaluated.push_back(out.fitness);
    return out;
  }

  // Distinct indices, drawn without replacement.
  std::vector<std::size_t> sample_options(std::size_t arity) {
    const std::size_t k = std::min(budget_.choices_evaluated, arity);
    std::vector<std::size_t> picked;
    picked.reserve(k);
    if (arity <= 64) {
      std::vector<std::size_t> pool(arity);
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng_.below(arity - i);
        std::swap(pool[i], pool[j]);
        picked.push_back(pool[i]);
      }
      return picked;
    }
    while (picked.size() < k) {
      const std::size_t option = rng_.below(arity);
      if (std::find(picked.begin(), picked.end(), option) == picked.end()) picked.push_back(option);
    }
    return picked;
  }

  const Generator& generator_;
  const TestSet& tset_;
  const DistanceMetric& metric_;
  const NmcsBudget& budget_;
  Rng& rng_;
};

}  // namespace

TestSet initial_test_set(const Generator& generator, std::size_t count, Rng& rng) {
  TestSet out(Role::tset);
  const std::size_t max_attempts = count * 100 + 100;
  for (std::size_t attempt = 0; out.size() < count && attempt < max_attempts; ++attempt) {
    Candidate candidate{sample(generator, rng).text, true, {}};
    candidate.provenance.origin = "initial";
    candidate.provenance.index = out.size();
    out.insert(std::move(candidate));
  }
  if (out.size() < count) throw GenerationStall("could not draw a distinct initial test set");
  return out;
}

Tset nmcs_step1(const Generator& generator, const TestSet& initial, const DistanceMetric& metric,
                std::size_t target_size, const NmcsBudget& budget, Rng& rng,
                std::uint64_t run_seed) {
  if (target_size == 0) throw std::invalid_argument("target_size must be positive");
  if (initial.size() > target_size)
    throw std::invalid_argument("initial set is larger than target_size");
  if (budget.choices_evaluated == 0 || budget.playouts_per_choice == 0 || budget.stall_limit == 0)
    throw std::invalid_argument("NMCS budget fields must be positive");

  Tset result;
  result.metric_name = metric.name;
  result.target_size = target_size;
  for (const auto& c : initial) result.candidates.insert(c);

  std::size_t stalls = 0;
  while (result.candidates.size() < target_size) {
    std::vector<double> evaluated;
    Selector selector(generator, result.candidates, metric, budget, rng);
    Playout best = selector.select(evaluated);
    if (best.fitness <= 0.0 || result.candidates.contains(best.text)) {
      if (++stalls >= budget.stall_limit)
        throw GenerationStall("step 1 produced only duplicates for " +
                              std::to_string(budget.stall_limit) + " consecutive selections");
      continue;
    }
    SelectionRound round;
    round.evaluated = std::move(evaluated);
    round.accepted_fitness = best.fitness;
    round.rejected_attempts = stalls;
    round.trace.decisions = std::move(best.decisions);
    round.trace.seed = run_seed;
    stalls = 0;

    Candidate candidate{std::move(best.text), true, {}};
    candidate.provenance.origin = "step1";
    candidate.provenance.seed = run_seed;
    candidate.provenance.index = result.candidates.size();
    result.candidates.insert(std::move(candidate));
    result.rounds.push_back(std::move(round));
  }
  return result;
}

}  // namespace boundary

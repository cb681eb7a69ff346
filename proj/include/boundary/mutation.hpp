#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boundary/rng.hpp"

namespace boundary {

struct MutationResult {
  std::string text;
  /// True when the input had no applicable site; text is then the input.
  bool no_site = false;
};

/// A genotype-level string mutation.
///
/// Sites are positions in Unicode scalar values. The random form picks a site
/// uniformly among the applicable ones; `apply_at` mutates a given position
/// and reports no_site when that position is not applicable.
struct MutationOperator {
  std::string name;
  bool size_preserving = false;
  bool (*applicable)(char32_t) = nullptr;
  MutationResult (*apply_at)(std::string_view, std::size_t position) = nullptr;

  MutationResult apply(std::string_view text, Rng& rng) const;
  std::vector<std::size_t> sites(std::string_view text) const;
  bool has_site(std::string_view text) const;
};

// Digit d -> d+1; '9' is removed.
MutationResult increase_int(std::string_view text, Rng& rng);
// Digit d -> d-1; '0' is removed.
MutationResult decrease_int(std::string_view text, Rng& rng);
// Digit d -> (d+1) mod 10.
MutationResult increase_int_keeping_size(std::string_view text, Rng& rng);
// Digit d -> (d-1) mod 10.
MutationResult decrease_int_keeping_size(std::string_view text, Rng& rng);
// Removes one character.
MutationResult delete_chars_1(std::string_view text, Rng& rng);
// Duplicates one character in place.
MutationResult copy_chars_1(std::string_view text, Rng& rng);

const MutationOperator& mutation_operator(std::string_view name);
std::span<const MutationOperator> all_mutation_operators();

/// Non-empty list of operators; mutate() picks one uniformly.
class MutatorSet {
 public:
  explicit MutatorSet(std::vector<MutationOperator> operators);

  /// "int", "int_keep_size" or "chars". Throws ConfigError otherwise.
  static MutatorSet preset(std::string_view name);

  std::span<const MutationOperator> operators() const { return operators_; }

  /// True when at least one operator has a site in text.
  bool any_site(std::string_view text) const;

 private:
  std::vector<MutationOperator> operators_;
};

std::span<const std::string_view> mutator_preset_names();

struct Mutation {
  std::string text;
  std::string operator_name;
  bool no_site = false;
};

Mutation mutate(std::string_view text, const MutatorSet& operators, Rng& rng);

}  // namespace boundary

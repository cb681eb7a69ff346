#include "boundary/mutation.hpp"

#include <algorithm>
#include <array>

#include "boundary/errors.hpp"
#include "boundary/utf8.hpp"

namespace boundary {
namespace {

constexpr std::array<std::string_view, 3> kPresetNames = {"int", "int_keep_size", "chars"};

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool any_char(char32_t) { return true; }

// Locates scalar value `position`; returns false when out of range.
bool locate(std::string_view text, std::size_t position, std::size_t& begin, std::size_t& end,
            char32_t& value) {
  const auto bounds = utf8::boundaries(text);
  if (position + 1 >= bounds.size()) return false;
  begin = bounds[position];
  end = bounds[position + 1];
  const std::u32string decoded = utf8::decode(text.substr(begin, end - begin));
  value = decoded.empty() ? 0 : decoded.front();
  return true;
}

template <typename Step>
MutationResult replace_digit(std::string_view text, std::size_t position, Step step) {
  std::size_t begin = 0, end = 0;
  char32_t c = 0;
  if (!locate(text, position, begin, end, c) || !is_digit(c)) return {std::string(text), true};
  const int next = step(static_cast<int>(c - U'0'));
  std::string out(text.substr(0, begin));
  if (next >= 0 && next <= 9) out += static_cast<char>('0' + next);
  out.append(text.substr(end));
  return {std::move(out), false};
}

MutationResult increase_at(std::string_view t, std::size_t p) {
  return replace_digit(t, p, [](int d) { return d + 1; });
}
MutationResult decrease_at(std::string_view t, std::size_t p) {
  return replace_digit(t, p, [](int d) { return d - 1; });
}
MutationResult increase_keep_at(std::string_view t, std::size_t p) {
  return replace_digit(t, p, [](int d) { return (d + 1) % 10; });
}
MutationResult decrease_keep_at(std::string_view t, std::size_t p) {
  return replace_digit(t, p, [](int d) { return (d + 9) % 10; });
}

MutationResult delete_at(std::string_view text, std::size_t position) {
  std::size_t begin = 0, end = 0;
  char32_t c = 0;
  if (!locate(text, position, begin, end, c)) return {std::string(text), true};
  std::string out(text.substr(0, begin));
  out.append(text.substr(end));
  return {std::move(out), false};
}

MutationResult copy_at(std::string_view text, std::size_t position) {
  std::size_t begin = 0, end = 0;
  char32_t c = 0;
  if (!locate(text, position, begin, end, c)) return {std::string(text), true};
  std::string out(text.substr(0, end));
  out.append(text.substr(begin, end - begin));
  out.append(text.substr(end));
  return {std::move(out), false};
}

const std::array<MutationOperator, 6>& registry() {
  static const std::array<MutationOperator, 6> kOperators = {{
      {"increase_int", false, is_digit, increase_at},
      {"decrease_int", false, is_digit, decrease_at},
      {"increase_int_keeping_size", true, is_digit, increase_keep_at},
      {"decrease_int_keeping_size", true, is_digit, decrease_keep_at},
      {"delete_chars_1", false, any_char, delete_at},
      {"copy_chars_1", false, any_char, copy_at},
  }};
  return kOperators;
}

}  // namespace

std::vector<std::size_t> MutationOperator::sites(std::string_view text) const {
  std::vector<std::size_t> out;
  const std::u32string decoded = utf8::decode(text);
  for (std::size_t i = 0; i < decoded.size(); ++i)
    if (applicable(decoded[i])) out.push_back(i);
  return out;
}

bool MutationOperator::has_site(std::string_view text) const {
  const std::u32string decoded = utf8::decode(text);
  return std::any_of(decoded.begin(), decoded.end(), applicable);
}

MutationResult MutationOperator::apply(std::string_view text, Rng& rng) const {
  const auto candidates = sites(text);
  if (candidates.empty()) return {std::string(text), true};
  return apply_at(text, candidates[rng.below(candidates.size())]);
}

MutationResult increase_int(std::string_view text, Rng& rng) {
  return mutation_operator("increase_int").apply(text, rng);
}
MutationResult decrease_int(std::string_view text, Rng& rng) {
  return mutation_operator("decrease_int").apply(text, rng);
}
MutationResult increase_int_keeping_size(std::string_view text, Rng& rng) {
  return mutation_operator("increase_int_keeping_size").apply(text, rng);
}
MutationResult decrease_int_keeping_size(std::string_view text, Rng& rng) {
  return mutation_operator("decrease_int_keeping_size").apply(text, rng);
}
MutationResult delete_chars_1(std::string_view text, Rng& rng) {
  return mutation_operator("delete_chars_1").apply(text, rng);
}
MutationResult copy_chars_1(std::string_view text, Rng& rng) {
  return mutation_operator("copy_chars_1").apply(text, rng);
}

const MutationOperator& mutation_operator(std::string_view name) {
  for (const auto& op : registry())
    if (op.name == name) return op;
  throw ConfigError("unknown mutation operator '" + std::string(name) + "'");
}

std::span<const MutationOperator> all_mutation_operators() { return registry(); }

MutatorSet::MutatorSet(std::vector<MutationOperator> operators) : operators_(std::move(operators)) {
  if (operators_.empty()) throw ConfigError("a mutator set needs at least one operator");
}

MutatorSet MutatorSet::preset(std::string_view name) {
  if (name == "int")
    return MutatorSet({mutation_operator("increase_int"), mutation_operator("decrease_int")});
  if (name == "int_keep_size")
    return MutatorSet({mutation_operator("increase_int_keeping_size"),
                       mutation_operator("decrease_int_keeping_size")});
  if (name == "chars")
    return MutatorSet({mutation_operator("delete_chars_1"), mutation_operator("copy_chars_1")});
  throw ConfigError("unknown mutator preset '" + std::string(name) + "'");
}

bool MutatorSet::any_site(std::string_view text) const {
  return std::any_of(operators_.begin(), operators_.end(),
                     [&](const MutationOperator& op) { return op.has_site(text); });
}

std::span<const std::string_view> mutator_preset_names() { return kPresetNames; }

Mutation mutate(std::string_view text, const MutatorSet& operators, Rng& rng) {
  const auto ops = operators.operators();
  const MutationOperator& op = ops[rng.below(ops.size())];
  MutationResult result = op.apply(text, rng);
  return {std::move(result.text), op.name, result.no_site};
}

}  // namespace boundary

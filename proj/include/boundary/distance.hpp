#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "boundary/calendar.hpp"
#include "boundary/test_set.hpp"

namespace boundary {

enum class MetricKind { domain_agnostic, encoding_specific, domain_specific };

/// Backend for NCD. zstd frames or raw deflate streams.
enum class Compressor { zstd, deflate };

std::string_view to_string(Compressor compressor);
std::optional<Compressor> parse_compressor(std::string_view name);

/// One compressor at one fixed level, used for every C(.) of a run.
struct CompressorSpec {
  Compressor kind = Compressor::zstd;
  int level = 6;

  friend bool operator==(const CompressorSpec&, const CompressorSpec&) = default;
};

/// Level used when a config names a compressor but no level.
int default_level(Compressor compressor);
/// Throws ConfigError when the level is outside the backend's range
/// (zstd 1..19, deflate 0..9).
void check_compressor(const CompressorSpec& spec);

struct DistanceOptions {
  /// Returned by the domain-specific metrics when an input cannot be interpreted.
  double incomparable_penalty = 1e6;
  CompressorSpec compressor;
  std::vector<calendar::DateFormat> date_formats = calendar::default_formats();
};

/// A named, symmetric, non-negative distance over strings.
struct DistanceMetric {
  std::string name;
  MetricKind kind = MetricKind::domain_agnostic;
  std::function<double(std::string_view, std::string_view)> eval;
  /// Set for NCD. Set-level routines then compress each member once and
  /// reuse the sizes; values are identical to calling eval pairwise.
  std::optional<CompressorSpec> compressor;

  double operator()(std::string_view a, std::string_view b) const { return eval(a, b); }
};

/// Edit distance over Unicode scalar values.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Compressed byte length C(bytes). Throws CompressorError if the backend fails.
std::size_t compressed_size(std::string_view bytes, const CompressorSpec& spec = {});

/// Normalized compression distance
///   (C(ab) - min(C(a), C(b))) / max(C(a), C(b))
/// over UTF-8 bytes.
double ncd(std::string_view a, std::string_view b, const CompressorSpec& spec = {});

/// ncd() with C(a) and C(b) already known.
double ncd_with_sizes(std::string_view a, std::size_t size_a, std::string_view b, std::size_t size_b,
                      const CompressorSpec& spec = {});

/// Absolute day difference between two date-shaped strings. Real dates give
/// the exact calendar difference; out-of-range month/day fields are carried
/// (see calendar::normalized_day_number). Strings that are not date-shaped
/// give `penalty`.
double day_distance(std::string_view a, std::string_view b,
                    std::span<const calendar::DateFormat> formats, double penalty);

/// Difference between the largest decimal integer token of each string.
/// `penalty` when either string has no digit.
double msid(std::string_view a, std::string_view b, double penalty);

/// Value of the largest maximal digit run, leading zeros ignored. Empty when
/// the text has no digit.
std::optional<long double> most_significant_int(std::string_view text);

/// Names accepted by make_metric, in registry order.
std::span<const std::string_view> metric_names();

/// Throws ConfigError for an unknown name.
DistanceMetric make_metric(std::string_view name, const DistanceOptions& options = {});

/// min over s in set of m(c, s); +infinity for an empty set.
double min_dist_to_set(std::string_view candidate, std::span<const std::string> set,
                       const DistanceMetric& metric);
double min_dist_to_set(std::string_view candidate, const TestSet& set,
                       const DistanceMetric& metric);

/// For each a in `from`, min_dist_to_set(a, to). OpenMP over `from`; the
/// result is identical to set_min_distances_serial.
std::vector<double> set_min_distances(std::span<const std::string> from,
                                      std::span<const std::string> to,
                                      const DistanceMetric& metric);
std::vector<double> set_min_distances(const TestSet& from, const TestSet& to,
                                      const DistanceMetric& metric);

/// Single-threaded reference for set_min_distances.
std::vector<double> set_min_distances_serial(std::span<const std::string> from,
                                             std::span<const std::string> to,
                                             const DistanceMetric& metric);

}  // namespace boundary

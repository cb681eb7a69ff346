#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "boundary/distance.hpp"
#include "boundary/test_set.hpp"

namespace boundary {

/// Listed in report order.
enum class Comparison {
  mvs_vs_reference_invalid,
  mvs_vs_random,
  mvs_vs_tset,
  mvs_vs_mis,
  mvs_vs_alt_mvs,
};

std::string_view to_string(Comparison comparison);

struct SummaryStats {
  std::size_t n = 0;
  double min = 0;
  double q1 = 0;
  double median = 0;
  double q3 = 0;
  double max = 0;
  double mean = 0;
};

/// Quartiles by linear interpolation between closest ranks (R type 7).
/// Throws EmptySetError on empty input.
SummaryStats summarize(std::span<const double> values);

/// Type-7 quantile of sorted data, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

struct ComparisonRow {
  Comparison comparison;
  std::vector<double> distances;  // one per MVS element, MVS order
  SummaryStats stats;
};

struct ComparisonReport {
  std::string metric_name;
  std::vector<ComparisonRow> rows;

  const ComparisonRow* find(Comparison comparison) const;
};

/// Per-element minimum distances from `mvs` to each provided set, one row per
/// set. Throws EmptySetError if mvs or any provided set is empty.
ComparisonReport compare_sets(const TestSet& mvs, const std::map<Comparison, const TestSet*>& others,
                              const DistanceMetric& metric);

struct BoundaryVerdict {
  bool holds = false;
  /// Smallest other median minus the MVS-vs-MIS median.
  double margin = 0;
  std::map<Comparison, double> medians;
  /// Present with an mvs_vs_alt_mvs row: whether its median exceeds the
  /// MVS-vs-MIS median. That row is a sanity check and does not affect `holds`.
  std::optional<bool> alt_mvs_farther;
};

/// Holds iff the MVS-vs-MIS median is strictly below the median of every
/// set-comparison row (reference_invalid, random, tset).
/// Throws MissingRowError without an mvs_vs_mis row and at least one of those.
BoundaryVerdict verdict(const ComparisonReport& report);

/// The sets one run hands to analysis. Optional sets may be null.
struct AnalysisSets {
  const TestSet* mvs = nullptr;
  const TestSet* mis = nullptr;
  const TestSet* tset = nullptr;
  const TestSet* random = nullptr;
  const TestSet* reference_invalid = nullptr;
  const TestSet* alt_mvs = nullptr;
};

/// One report per metric over the same sets.
std::vector<ComparisonReport> cross_metric_analysis(const AnalysisSets& sets,
                                                    std::span<const DistanceMetric> metrics);

/// `comparison,element_index,element,distance`
void write_distances_csv(std::ostream& out, const ComparisonReport& report, const TestSet& mvs);
/// `comparison,n,min,q1,median,q3,max,mean`
void write_summary_csv(std::ostream& out, const ComparisonReport& report);
/// {holds, margin, medians: {...}}
std::string verdict_json(const BoundaryVerdict& verdict);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

}  // namespace boundary

#include "boundary/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>

#include "boundary/errors.hpp"

namespace boundary {
namespace {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return nlohmann::json(value).dump();
}

}  // namespace

std::string_view to_string(Comparison comparison) {
  switch (comparison) {
    case Comparison::mvs_vs_reference_invalid: return "mvs_vs_reference_invalid";
    case Comparison::mvs_vs_random: return "mvs_vs_random";
    case Comparison::mvs_vs_tset: return "mvs_vs_tset";
    case Comparison::mvs_vs_mis: return "mvs_vs_mis";
    case Comparison::mvs_vs_alt_mvs: return "mvs_vs_alt_mvs";
  }
  return "unknown";
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw EmptySetError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SummaryStats summarize(std::span<const double> values) {
  if (values.empty()) throw EmptySetError("summary of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  SummaryStats s;
  s.n = sorted.size();
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
  // Rounding can push the mean a hair outside [min, max] for constant samples.
  s.mean = std::clamp(s.mean, s.min, s.max);
  return s;
}

const ComparisonRow* ComparisonReport::find(Comparison comparison) const {
  for (const auto& row : rows)
    if (row.comparison == comparison) return &row;
  return nullptr;
}

ComparisonReport compare_sets(const TestSet& mvs, const std::map<Comparison, const TestSet*>& others,
                              const DistanceMetric& metric) {
  if (mvs.empty()) throw EmptySetError("compare_sets: MVS is empty");
  ComparisonReport report;
  report.metric_name = metric.name;
  const auto mvs_texts = mvs.texts();
  for (const auto& [comparison, set] : others) {
    if (set == nullptr) continue;
    if (set->empty())
      throw EmptySetError("compare_sets: " + std::string(to_string(comparison)) + " set is empty");
    const auto texts = set->texts();
    ComparisonRow row{comparison, set_min_distances(mvs_texts, texts, metric), {}};
    row.stats = summarize(row.distances);
    report.rows.push_back(std::move(row));
  }
  return report;
}

BoundaryVerdict verdict(const ComparisonReport& report) {
  const ComparisonRow* mis = report.find(Comparison::mvs_vs_mis);
  if (mis == nullptr) throw MissingRowError("verdict needs an mvs_vs_mis row");
  BoundaryVerdict v;
  double smallest_other = std::numeric_limits<double>::infinity();
  std::size_t compared = 0;
  for (const auto& row : report.rows) {
    v.medians[row.comparison] = row.stats.median;
    if (row.comparison == Comparison::mvs_vs_mis) continue;
    if (row.comparison == Comparison::mvs_vs_alt_mvs) {
      v.alt_mvs_farther = row.stats.median > mis->stats.median;
      continue;
    }
    smallest_other = std::min(smallest_other, row.stats.median);
    ++compared;
  }
  if (compared == 0)
    throw MissingRowError("verdict needs a set-comparison row besides mvs_vs_mis");
  v.margin = smallest_other - mis->stats.median;
  v.holds = mis->stats.median < smallest_other;
  return v;
}

std::vector<ComparisonReport> cross_metric_analysis(const AnalysisSets& sets,
                                                    std::span<const DistanceMetric> metrics) {
  if (sets.mvs == nullptr || sets.mis == nullptr)
    throw MissingRowError("cross_metric_analysis needs MVS and MIS");
  const std::map<Comparison, const TestSet*> others = {
      {Comparison::mvs_vs_reference_invalid, sets.reference_invalid},
      {Comparison::mvs_vs_random, sets.random},
      {Comparison::mvs_vs_tset, sets.tset},
      {Comparison::mvs_vs_mis, sets.mis},
      {Comparison::mvs_vs_alt_mvs, sets.alt_mvs},
  };
  std::vector<ComparisonReport> reports;
  reports.reserve(metrics.size());
  for (const auto& metric : metrics) reports.push_back(compare_sets(*sets.mvs, others, metric));
  return reports;
}

std::string csv_field(std::string_view text) {
  const bool quote = text.find_first_of(",\"\r\n") != std::string_view::npos ||
                     (!text.empty() && (text.front() == ' ' || text.back() == ' '));
  if (!quote) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_distances_csv(std::ostream& out, const ComparisonReport& report, const TestSet& mvs) {
  out << "comparison,element_index,element,distance\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.distances.size(); ++i) {
      out << to_string(row.comparison) << ',' << i << ',' << csv_field(mvs[i].text) << ','
          << format_number(row.distances[i]) << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, const ComparisonReport& report) {
  out << "comparison,n,min,q1,median,q3,max,mean\n";
  for (const auto& row : report.rows) {
    const auto& s = row.stats;
    out << to_string(row.comparison) << ',' << s.n << ',' << format_number(s.min) << ','
        << format_number(s.q1) << ',' << format_number(s.median) << ',' << format_number(s.q3)
        << ',' << format_number(s.max) << ',' << format_number(s.mean) << '\n';
  }
}

std::string verdict_json(const BoundaryVerdict& verdict) {
  nlohmann::ordered_json j;
  j["holds"] = verdict.holds;
  j["margin"] = verdict.margin;
  if (verdict.alt_mvs_farther) j["alt_mvs_farther"] = *verdict.alt_mvs_farther;
  nlohmann::ordered_json medians = nlohmann::ordered_json::object();
  for (const auto& [comparison, median] : verdict.medians) medians[std::string(to_string(comparison))] = median;
  j["medians"] = medians;
  return j.dump(2);
}

}  // namespace boundary

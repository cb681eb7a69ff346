#include "boundary/distance.hpp"

#include <zlib.h>
#include <zstd/zstd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "boundary/errors.hpp"
#include "boundary/utf8.hpp"

namespace boundary {
namespace {

constexpr std::array<std::string_view, 4> kMetricNames = {"ncd", "levenshtein", "day", "msid"};

// One deflate stream per thread and level; deflateReset is far cheaper than
// deflateInit for the short strings this tool compares.
class Deflater {
 public:
  explicit Deflater(int level) : level_(level) {
    stream_ = {};
    if (deflateInit2(&stream_, level, Z_DEFLATED, -15, 9, Z_DEFAULT_STRATEGY) != Z_OK)
      throw CompressorError("deflateInit2 failed for level " + std::to_string(level));
  }
  Deflater(const Deflater&) = delete;
  Deflater& operator=(const Deflater&) = delete;
  ~Deflater() { deflateEnd(&stream_); }

  int level() const { return level_; }

  std::size_t compressed_size(std::string_view bytes) {
    if (deflateReset(&stream_) != Z_OK) throw CompressorError("deflateReset failed");
    const uLong bound = deflateBound(&stream_, static_cast<uLong>(bytes.size()));
    if (buffer_.size() < bound) buffer_.resize(bound);
    stream_.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(bytes.data()));
    stream_.avail_in = static_cast<uInt>(bytes.size());
    stream_.next_out = buffer_.data();
    stream_.avail_out = static_cast<uInt>(buffer_.size());
    if (deflate(&stream_, Z_FINISH) != Z_STREAM_END) throw CompressorError("deflate did not finish");
    return stream_.total_out;
  }

 private:
  int level_;
  z_stream stream_;
  std::vector<Bytef> buffer_;
};

class ZstdCompressor {
 public:
  ZstdCompressor() : context_(ZSTD_createCCtx()) {
    if (context_ == nullptr) throw CompressorError("ZSTD_createCCtx failed");
  }
  ZstdCompressor(const ZstdCompressor&) = delete;
  ZstdCompressor& operator=(const ZstdCompressor&) = delete;
  ~ZstdCompressor() { ZSTD_freeCCtx(context_); }

  std::size_t compressed_size(std::string_view bytes, int level) {
    const std::size_t bound = ZSTD_compressBound(bytes.size());
    if (buffer_.size() < bound) buffer_.resize(bound);
    const std::size_t n =
        ZSTD_compressCCtx(context_, buffer_.data(), buffer_.size(), bytes.data(), bytes.size(), level);
    if (ZSTD_isError(n)) throw CompressorError(std::string("zstd: ") + ZSTD_getErrorName(n));
    return n;
  }

 private:
  ZSTD_CCtx* context_;
  std::vector<char> buffer_;
};

Deflater& thread_deflater(int level) {
  thread_local std::vector<std::unique_ptr<Deflater>> pool;
  for (auto& d : pool)
    if (d->level() == level) return *d;
  pool.push_back(std::make_unique<Deflater>(level));
  return *pool.back();
}

ZstdCompressor& thread_zstd() {
  thread_local ZstdCompressor compressor;
  return compressor;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Exact edit distance when it is at most `limit`, otherwise limit + 1.
// Only the diagonal band |i - j| <= limit is filled, and the scan stops as
// soon as a whole row exceeds the limit.
std::size_t bounded_levenshtein(std::u32string_view s, std::u32string_view t, std::size_t limit) {
  if (s.size() > t.size()) std::swap(s, t);
  const std::size_t n = s.size();
  const std::size_t m = t.size();
  const std::size_t over = limit + 1;
  if (m - n > limit) return over;
  if (n == 0) return m;
  thread_local std::vector<std::size_t> row;
  row.assign(m + 1, over);
  for (std::size_t j = 0; j <= std::min(m, limit); ++j) row[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t lo = i > limit ? i - limit : 1;
    const std::size_t hi = std::min(m, i + limit);
    std::size_t diagonal = row[lo - 1];
    row[lo - 1] = lo == 1 ? std::min(i, over) : over;
    std::size_t row_min = row[lo - 1];
    for (std::size_t j = lo; j <= hi; ++j) {
      const std::size_t above = row[j];
      const std::size_t substitution = diagonal + (s[i - 1] == t[j - 1] ? 0 : 1);
      const std::size_t value = std::min({above + 1, row[j - 1] + 1, substitution, over});
      diagonal = above;
      row[j] = value;
      row_min = std::min(row_min, value);
    }
    if (row_min > limit) return over;
  }
  return std::min(row[m], over);
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const std::u32string s = utf8::decode(a);
  const std::u32string t = utf8::decode(b);
  if (s.empty()) return t.size();
  if (t.empty()) return s.size();
  std::vector<std::size_t> row(t.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= s.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= t.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t substitution = diagonal + (s[i - 1] == t[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, substitution});
      diagonal = above;
    }
  }
  return row.back();
}

std::string_view to_string(Compressor compressor) {
  return compressor == Compressor::zstd ? "zstd" : "deflate";
}

std::optional<Compressor> parse_compressor(std::string_view name) {
  if (name == "zstd") return Compressor::zstd;
  if (name == "deflate") return Compressor::deflate;
  return std::nullopt;
}

int default_level(Compressor compressor) { return compressor == Compressor::zstd ? 6 : 9; }

void check_compressor(const CompressorSpec& spec) {
  const bool ok = spec.kind == Compressor::zstd ? (spec.level >= 1 && spec.level <= 19)
                                                : (spec.level >= 0 && spec.level <= 9);
  if (!ok)
    throw ConfigError("compression_level " + std::to_string(spec.level) + " is out of range for " +
                      std::string(to_string(spec.kind)));
}

std::size_t compressed_size(std::string_view bytes, const CompressorSpec& spec) {
  if (spec.kind == Compressor::zstd) return thread_zstd().compressed_size(bytes, spec.level);
  if (spec.level < 0 || spec.level > 9)
    throw CompressorError("invalid deflate level " + std::to_string(spec.level));
  return thread_deflater(spec.level).compressed_size(bytes);
}

double ncd_with_sizes(std::string_view a, std::size_t size_a, std::string_view b, std::size_t size_b,
                      const CompressorSpec& spec) {
  thread_local std::string joined;
  joined.assign(a).append(b);
  const auto cab = static_cast<double>(compressed_size(joined, spec));
  const auto ca = static_cast<double>(size_a);
  const auto cb = static_cast<double>(size_b);
  return (cab - std::min(ca, cb)) / std::max(ca, cb);
}

double ncd(std::string_view a, std::string_view b, const CompressorSpec& spec) {
  const std::size_t ca = compressed_size(a, spec);
  const std::size_t cb = compressed_size(b, spec);
  return ncd_with_sizes(a, ca, b, cb, spec);
}

double day_distance(std::string_view a, std::string_view b,
                    std::span<const calendar::DateFormat> formats, double penalty) {
  const auto fa = calendar::lex(a, formats);
  const auto fb = calendar::lex(b, formats);
  if (!fa || !fb) return penalty;
  const std::int64_t diff =
      calendar::normalized_day_number(*fa) - calendar::normalized_day_number(*fb);
  return static_cast<double>(diff < 0 ? -diff : diff);
}

std::optional<long double> most_significant_int(std::string_view text) {
  std::string_view best;
  bool found = false;
  for (std::size_t i = 0; i < text.size();) {
    if (!is_digit(text[i])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && is_digit(text[end])) ++end;
    std::size_t first = i;
    while (first + 1 < end && text[first] == '0') ++first;
    const std::string_view token = text.substr(first, end - first);
    if (!found || token.size() > best.size() || (token.size() == best.size() && token > best))
      best = token;
    found = true;
    i = end;
  }
  if (!found) return std::nullopt;
  long double value = 0;
  for (char c : best) value = value * 10 + (c - '0');
  return value;
}

double msid(std::string_view a, std::string_view b, double penalty) {
  const auto va = most_significant_int(a);
  const auto vb = most_significant_int(b);
  if (!va || !vb) return penalty;
  return static_cast<double>(std::fabs(*va - *vb));
}

std::span<const std::string_view> metric_names() { return kMetricNames; }

DistanceMetric make_metric(std::string_view name, const DistanceOptions& options) {
  if (name == "ncd") {
    const CompressorSpec spec = options.compressor;
    check_compressor(spec);
    return {"ncd", MetricKind::domain_agnostic,
            [spec](std::string_view a, std::string_view b) { return ncd(a, b, spec); }, spec};
  }
  if (name == "levenshtein") {
    return {"levenshtein", MetricKind::encoding_specific, [](std::string_view a, std::string_view b) {
              return static_cast<double>(levenshtein(a, b));
            },
            std::nullopt};
  }
  if (name == "day") {
    return {"day", MetricKind::domain_specific,
            [formats = options.date_formats, penalty = options.incomparable_penalty](
                std::string_view a, std::string_view b) {
              return day_distance(a, b, formats, penalty);
            },
            std::nullopt};
  }
  if (name == "msid") {
    return {"msid", MetricKind::domain_specific,
            [penalty = options.incomparable_penalty](std::string_view a, std::string_view b) {
              return msid(a, b, penalty);
            },
            std::nullopt};
  }
  throw ConfigError("unknown distance metric '" + std::string(name) + "'");
}

double min_dist_to_set(std::string_view candidate, std::span<const std::string> set,
                       const DistanceMetric& metric) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& member : set) best = std::min(best, metric(candidate, member));
  return best;
}

double min_dist_to_set(std::string_view candidate, const TestSet& set,
                       const DistanceMetric& metric) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& member : set) best = std::min(best, metric(candidate, member.text));
  return best;
}

std::vector<double> set_min_distances_serial(std::span<const std::string> from,
                                             std::span<const std::string> to,
                                             const DistanceMetric& metric) {
  if (from.empty() || to.empty()) throw EmptySetError("set_min_distances needs two non-empty sets");
  std::vector<double> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) out[i] = min_dist_to_set(from[i], to, metric);
  return out;
}

std::vector<double> set_min_distances(std::span<const std::string> from,
                                      std::span<const std::string> to,
                                      const DistanceMetric& metric) {
  if (from.empty() || to.empty()) throw EmptySetError("set_min_distances needs two non-empty sets");
  std::vector<double> out(from.size());
  const auto n = static_cast<std::int64_t>(from.size());
  const auto m = static_cast<std::int64_t>(to.size());
  std::vector<std::size_t> to_sizes;
  // Exceptions may not cross a parallel region; the first one is rethrown.
  std::exception_ptr failure;
  auto record_failure = [&failure] {
#pragma omp critical(boundary_distance_failure)
    if (!failure) failure = std::current_exception();
  };

  if (metric.compressor) {
    const CompressorSpec spec = *metric.compressor;
    to_sizes.resize(to.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < m; ++j) {
      try {
        to_sizes[static_cast<std::size_t>(j)] = compressed_size(to[static_cast<std::size_t>(j)], spec);
      } catch (...) {
        record_failure();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  // Levenshtein only needs to beat the running minimum, so members are decoded
  // once and compared with a cutoff.
  std::vector<std::u32string> decoded_to;
  if (metric.name == "levenshtein") {
    decoded_to.reserve(to.size());
    for (const auto& b : to) decoded_to.push_back(utf8::decode(b));
  }
  std::vector<std::size_t> by_length(decoded_to.size());
  std::iota(by_length.begin(), by_length.end(), std::size_t{0});
  std::stable_sort(by_length.begin(), by_length.end(), [&](std::size_t x, std::size_t y) {
    return decoded_to[x].size() < decoded_to[y].size();
  });

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const auto& a = from[static_cast<std::size_t>(i)];
      double best = std::numeric_limits<double>::infinity();
      if (metric.compressor) {
        const CompressorSpec spec = *metric.compressor;
        const std::size_t size_a = compressed_size(a, spec);
        for (std::size_t j = 0; j < to.size(); ++j)
          best = std::min(best, ncd_with_sizes(a, size_a, to[j], to_sizes[j], spec));
      } else if (!decoded_to.empty()) {
        // Visit members by increasing length difference, which is a lower
        // bound on the distance, and stop once it reaches the best so far.
        const std::u32string s = utf8::decode(a);
        auto gap = [&](std::size_t k) {
          const std::size_t len = decoded_to[by_length[k]].size();
          return len > s.size() ? len - s.size() : s.size() - len;
        };
        std::size_t right = static_cast<std::size_t>(
            std::partition_point(by_length.begin(), by_length.end(),
                                 [&](std::size_t k) { return decoded_to[k].size() < s.size(); }) -
            by_length.begin());
        std::size_t left = right;
        std::size_t closest = std::numeric_limits<std::size_t>::max();
        while (left > 0 || right < by_length.size()) {
          const bool take_right = left == 0 || (right < by_length.size() && gap(right) <= gap(left - 1));
          const std::size_t k = take_right ? right++ : --left;
          if (gap(k) >= closest) break;
          const auto& t = decoded_to[by_length[k]];
          const std::size_t limit = std::min(closest - 1, std::max(s.size(), t.size()));
          closest = std::min(closest, bounded_levenshtein(s, t, limit));
        }
        best = static_cast<double>(closest);
      } else {
        for (const auto& b : to) best = std::min(best, metric(a, b));
      }
      out[static_cast<std::size_t>(i)] = best;
    } catch (...) {
      record_failure();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> set_min_distances(const TestSet& from, const TestSet& to,
                                      const DistanceMetric& metric) {
  const auto a = from.texts();
  const auto b = to.texts();
  return set_min_distances(a, b, metric);
}

}  // namespace boundary

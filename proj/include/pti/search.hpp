#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pti/inertia.hpp"
#include "pti/states.hpp"

namespace pti {

struct SearchConfig {
  BipartiteDims dims{3, 3};
  std::vector<std::size_t> rank_set{3};
  Ensemble ensemble = Ensemble::real;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double tol_zero = kDefaultTolZero;
  // Structured mode: each sample's state has this many random product
  // vectors in its kernel. 0 disables it.
  std::size_t kernel_products = 0;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  /// Canonical text of everything that affects the output (workers excluded).
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;
};

using Histogram = std::map<Inertia, std::uint64_t>;

struct Alarm {
  Inertia inertia;
  std::uint64_t sample_index = 0;
  std::uint64_t sample_seed = 0;  // mix_seed(config seed, sample index)
  std::size_t rank = 0;
};

struct SearchRecord {
  SearchConfig config;
  std::string config_hash;
  Histogram histogram;           // unflagged samples
  std::uint64_t marginal = 0;    // classification changed between tol/10 and 10 tol
  Histogram marginal_histogram;  // their inertia at tol_zero, for diagnostics only
  std::vector<Alarm> alarms;     // sorted by sample index
  double wall_seconds = 0.0;     // not serialized

  std::uint64_t total() const;
  /// One JSON object on one line.
  std::string to_json_line() const;
  static SearchRecord from_json_line(const std::string& line);

  /// Everything except wall time.
  friend bool operator==(const SearchRecord& a, const SearchRecord& b);
};

struct SampleOutcome {
  Inertia inertia;
  bool marginal = false;
  std::size_t rank = 0;
  std::uint64_t sample_seed = 0;
};

/// State for one sample index; identical to what run_search saw.
BipartiteState search_sample(const SearchConfig& cfg, std::uint64_t index);
SampleOutcome classify_sample(const SearchConfig& cfg, std::uint64_t index);

SearchRecord run_search(const SearchConfig& cfg, const std::set<Inertia>& alarm_set);

/// Regenerates the state behind alarm `alarm_index`. Rejects a record whose
/// hash does not match its config, and a record without that alarm.
BipartiteState replay(const SearchRecord& record, std::size_t alarm_index);

/// "(4,1,4);(3,2,4)"
std::set<Inertia> parse_alarm_set(const std::string& text);
/// "2,3,4"
std::vector<std::size_t> parse_rank_list(const std::string& text);

/// Histogram table for humans: "v- v0 v+  count".
std::string format_histogram(const SearchRecord& r);

}  // namespace pti

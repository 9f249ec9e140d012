#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "moa/core.hpp"
#include "moa/mining.hpp"
#include "moa/nsga2.hpp"

namespace moa {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_real(double v);

// Field parsers; errors are ConfigError naming `field`.
double parse_double(const std::string& text, const std::string& field);
std::uint64_t parse_uint(const std::string& text, const std::string& field);
bool parse_bool(const std::string& text, const std::string& field);

/// Flat `section.key = value` text. '#' starts a comment; blank lines are ignored.
class KeyValueConfig {
 public:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };

  static KeyValueConfig parse(std::istream& in, const std::string& source = "<config>");
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  /// "source:line" of a key, or the source name when absent.
  std::string where(const std::string& key) const;
  /// Keys under `prefix.` with the prefix stripped.
  std::map<std::string, std::string> section(const std::string& prefix) const;
  const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  /// Throws ConfigError at the first key that is neither listed nor under one
  /// of the listed `prefix.` sections.
  void reject_unknown(const std::set<std::string>& keys, const std::set<std::string>& prefixes) const;

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
};

struct AnalysisOptions {
  std::size_t k = 3;
  CartConfig cart;
  PNorm p_norm = PNorm::two;
  std::uint64_t balance_factor = 1;
  std::string label_column;
  std::size_t neighborhood_objective = 0;
  double neighborhood_tolerance = 0.05;
  Sense neighborhood_sense = Sense::minimize;
};

struct SpaceOverride {
  std::size_t index = 0;
  std::optional<double> lo;
  std::optional<double> hi;
};

struct StudyConfig {
  std::string problem_name;
  std::map<std::string, std::string> problem_settings;
  std::vector<SpaceOverride> space_overrides;
  AlgorithmConfig algorithm;
  std::size_t runs = 1;
  std::uint64_t master_seed = 0;
  std::string output_dir = "study";
  std::size_t jobs = 1;
  double convergence_threshold = 0.05;
  std::optional<double> epsilon;
  AnalysisOptions analysis;

  /// Per-run seed; adding runs never changes earlier ones.
  std::uint64_t run_seed(std::size_t run_index) const { return master_seed + run_index; }
};

/// Throws ConfigError with "source:line:" anchors.
StudyConfig study_config_from(const KeyValueConfig& kv);
StudyConfig load_study_config(const std::filesystem::path& path);

/// Problem bounds with the configured overrides applied.
SearchSpace effective_space(const Problem& problem, const std::vector<SpaceOverride>& overrides);

}  // namespace moa

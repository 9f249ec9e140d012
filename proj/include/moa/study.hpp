#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "moa/aggregate.hpp"
#include "moa/archive.hpp"
#include "moa/config.hpp"

namespace moa {

struct OptimizeOptions {
  std::optional<std::size_t> jobs;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> eval_seed;
  bool record_timing = false;
};

struct OptimizeResult {
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> archives;
};

/// Runs every configured seed and writes run_NNN.json archives plus manifest.json.
OptimizeResult cmd_optimize(const StudyConfig& config, const OptimizeOptions& options,
                            std::ostream& log);
OptimizeResult cmd_optimize(const std::filesystem::path& config_path,
                            const OptimizeOptions& options, std::ostream& log);

struct AggregateOptions {
  std::filesystem::path out = "aggregate";
  std::optional<double> epsilon;
  std::optional<double> threshold;
  DistanceMetric metric = DistanceMetric::euclidean;
};

struct AggregateResult {
  Front psi0;
  std::optional<DisparityReport> report;
  std::optional<ConvergenceVerdict> verdict;
  std::optional<Front> conservative;
  std::vector<std::filesystem::path> files;
};

/// Writes disparity.json, psi0.csv, psi1.csv and (with epsilon) psi_cons.csv.
/// The verdict goes to `out`.
AggregateResult cmd_aggregate(const std::vector<std::filesystem::path>& inputs,
                              const AggregateOptions& options, std::ostream& out);

enum class Analysis { kmeans, cart, autocorrelation, compromise, neighborhood, wta, aero };

std::string to_string(Analysis a);

struct AnalyzeOptions {
  std::filesystem::path out = "analysis";
  /// Empty selects every analysis applicable to the input.
  std::set<Analysis> analyses;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> balance_factor;
  std::optional<std::string> label_column;
  std::optional<PNorm> p_norm;
  std::optional<double> epsilon;
  std::optional<std::filesystem::path> kinematics;
  std::optional<double> neighborhood_tolerance;
  std::optional<std::size_t> neighborhood_objective;
  std::optional<Sense> neighborhood_sense;
  std::optional<CartConfig> cart;
  std::uint64_t seed = 0;
};

struct AnalyzeResult {
  std::vector<std::filesystem::path> files;
};

/// `input` is a study manifest (or run archive) or a front CSV.
AnalyzeResult cmd_analyze(const std::filesystem::path& input, const AnalyzeOptions& options,
                          std::ostream& out);

/// Compares psi0 of two studies (manifests, archives or front CSV files).
ComparisonVerdict cmd_compare(const std::filesystem::path& a, const std::filesystem::path& b,
                              std::ostream& out);

/// Entry point of the command-line tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace moa

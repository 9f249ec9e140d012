#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "moa/config.hpp"
#include "moa/core.hpp"
#include "moa/nsga2.hpp"
#include "moa/problems.hpp"

namespace moa {

/// Everything needed to interpret and rebuild a problem without its config file.
struct ProblemInfo {
  std::string name;
  std::map<std::string, std::string> settings;
  std::vector<Sense> senses;
  std::vector<std::string> objective_names;
  SearchSpace space;

  static ProblemInfo describe(const Problem& problem, const SearchSpace& space);
  std::unique_ptr<Problem> rebuild() const;

  friend bool operator==(const ProblemInfo&, const ProblemInfo&) = default;
};

struct RunArchive {
  nlohmann::json study;  // the study configuration, embedded verbatim
  ProblemInfo problem;
  AlgorithmConfig algorithm;
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t nonfinite_evaluations = 0;
  std::uint64_t evaluation_warnings = 0;
  /// Only recorded on request; its presence makes archives non-reproducible.
  std::optional<double> wall_clock_seconds;
  Front front;

  friend bool operator==(const RunArchive&, const RunArchive&) = default;
};

struct ManifestEntry {
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  std::string archive;  // relative to the manifest's directory
};

struct StudyManifest {
  nlohmann::json study;
  ProblemInfo problem;
  std::vector<ManifestEntry> runs;
};

nlohmann::json to_json(const StudyConfig& config);
nlohmann::json to_json(const RunArchive& archive);
nlohmann::json to_json(const StudyManifest& manifest);
RunArchive archive_from_json(const nlohmann::json& j);
StudyManifest manifest_from_json(const nlohmann::json& j);

/// Writes through a temporary file and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

void save_archive(const std::filesystem::path& path, const RunArchive& archive);
RunArchive load_archive(const std::filesystem::path& path);
void save_manifest(const std::filesystem::path& path, const StudyManifest& manifest);
StudyManifest load_manifest(const std::filesystem::path& path);

/// Detects whether a JSON file is a manifest or a run archive.
bool is_manifest_file(const std::filesystem::path& path);

/// Archives named by a manifest, or the archives given directly, sorted by
/// (run index, seed) so the input order never matters.
std::vector<RunArchive> load_runs(const std::vector<std::filesystem::path>& inputs);

}  // namespace moa

#include "moa/archive.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "moa/errors.hpp"

namespace moa {

using nlohmann::json;

namespace {

constexpr const char* kArchiveFormat = "moa-run-archive";
constexpr const char* kManifestFormat = "moa-study-manifest";
constexpr int kFormatVersion = 1;

json problem_to_json(const ProblemInfo& p) {
  json bounds = json::array();
  for (const auto& b : p.space.bounds()) {
    bounds.push_back({{"name", b.name}, {"unit", b.unit}, {"lo", b.lo}, {"hi", b.hi}});
  }
  json senses = json::array();
  for (auto s : p.senses) senses.push_back(to_string(s));
  return {{"name", p.name},
          {"settings", p.settings},
          {"objectives", p.objective_names},
          {"senses", senses},
          {"bounds", bounds}};
}

ProblemInfo problem_from_json(const json& j) {
  ProblemInfo p;
  p.name = j.at("name").get<std::string>();
  p.settings = j.at("settings").get<std::map<std::string, std::string>>();
  p.objective_names = j.at("objectives").get<std::vector<std::string>>();
  for (const auto& s : j.at("senses")) p.senses.push_back(parse_sense(s.get<std::string>()));
  std::vector<Bound> bounds;
  for (const auto& b : j.at("bounds")) {
    bounds.push_back(Bound{b.at("lo").get<double>(), b.at("hi").get<double>(),
                           b.at("name").get<std::string>(), b.at("unit").get<std::string>()});
  }
  p.space = SearchSpace(std::move(bounds));
  if (p.senses.size() != p.objective_names.size()) throw DataError("senses and objective names differ in length");
  return p;
}

json algorithm_to_json(const AlgorithmConfig& a) {
  return {{"population_size", a.population_size},
          {"generations", a.generations},
          {"crossover_probability", a.crossover_probability},
          {"mutation_probability", a.mutation_probability},
          {"sbx_eta", a.sbx_eta},
          {"mutation_eta", a.mutation_eta},
          {"seed", a.seed},
          {"parallel_evaluation", a.evaluation == Exec::parallel}};
}

AlgorithmConfig algorithm_from_json(const json& j) {
  AlgorithmConfig a;
  a.population_size = j.at("population_size").get<std::size_t>();
  a.generations = j.at("generations").get<std::size_t>();
  a.crossover_probability = j.at("crossover_probability").get<double>();
  a.mutation_probability = j.at("mutation_probability").get<double>();
  a.sbx_eta = j.at("sbx_eta").get<double>();
  a.mutation_eta = j.at("mutation_eta").get<double>();
  a.seed = j.at("seed").get<std::uint64_t>();
  a.evaluation = j.at("parallel_evaluation").get<bool>() ? Exec::parallel : Exec::serial;
  return a;
}

json front_to_json(const Front& front, const std::vector<Sense>& senses) {
  json members = json::array();
  for (const auto& s : front) {
    members.push_back({{"run", s.provenance.run},
                       {"generation", s.provenance.generation},
                       {"evaluation", s.provenance.evaluation},
                       {"parameters", std::vector<double>(s.parameters.begin(), s.parameters.end())},
                       {"objectives", to_physical(senses, s.objectives.values())}});
  }
  return members;
}

Front front_from_json(const json& j, const std::vector<Sense>& senses) {
  std::vector<Solution> members;
  for (const auto& m : j) {
    const auto physical = m.at("objectives").get<std::vector<double>>();
    if (physical.size() != senses.size()) throw DataError("front member has the wrong objective count");
    Solution s;
    s.parameters = ParameterVector(m.at("parameters").get<std::vector<double>>());
    s.objectives = ObjectiveVector(to_internal(senses, physical));
    s.provenance = Provenance{m.at("run").get<std::int64_t>(), m.at("generation").get<std::int64_t>(),
                              m.at("evaluation").get<std::int64_t>()};
    members.push_back(std::move(s));
  }
  try {
    return Front::from_members(std::move(members));
  } catch (const UsageError& e) {
    throw DataError(std::string("archived front is not mutually non-dominated: ") + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": invalid JSON: " + e.what());
  }
}

}  // namespace

ProblemInfo ProblemInfo::describe(const Problem& problem, const SearchSpace& space) {
  return ProblemInfo{problem.name(), problem.settings(), problem.senses(), problem.objective_names(),
                     space};
}

std::unique_ptr<Problem> ProblemInfo::rebuild() const {
  try {
    return make_problem(name, settings);
  } catch (const ConfigError& e) {
    throw DataError(std::string("archived problem cannot be rebuilt: ") + e.what());
  }
}

json to_json(const StudyConfig& c) {
  json overrides = json::array();
  for (const auto& o : c.space_overrides) {
    json e = {{"index", o.index}};
    if (o.lo) e["lo"] = *o.lo;
    if (o.hi) e["hi"] = *o.hi;
    overrides.push_back(e);
  }
  json j = {{"problem", {{"name", c.problem_name}, {"settings", c.problem_settings}}},
            {"space_overrides", overrides},
            {"algorithm", algorithm_to_json(c.algorithm)},
            {"runs", c.runs},
            {"master_seed", c.master_seed},
            {"convergence_threshold", c.convergence_threshold},
            {"analysis",
             {{"k", c.analysis.k},
              {"p_norm", to_string(c.analysis.p_norm)},
              {"balance_factor", c.analysis.balance_factor},
              {"label_column", c.analysis.label_column},
              {"cart",
               {{"max_depth", c.analysis.cart.max_depth},
                {"min_samples_leaf", c.analysis.cart.min_samples_leaf},
                {"min_impurity_decrease", c.analysis.cart.min_impurity_decrease}}},
              {"neighborhood",
               {{"objective", c.analysis.neighborhood_objective},
                {"tolerance", c.analysis.neighborhood_tolerance},
                {"sense", to_string(c.analysis.neighborhood_sense)}}}}}};
  j["epsilon"] = c.epsilon ? json(*c.epsilon) : json(nullptr);
  return j;
}

json to_json(const RunArchive& a) {
  json j = {{"format", kArchiveFormat},
            {"version", kFormatVersion},
            {"study", a.study},
            {"problem", problem_to_json(a.problem)},
            {"algorithm", algorithm_to_json(a.algorithm)},
            {"run_index", a.run_index},
            {"seed", a.seed},
            {"evaluations", a.evaluations},
            {"warnings",
             {{"nonfinite_evaluations", a.nonfinite_evaluations},
              {"evaluation_warnings", a.evaluation_warnings}}},
            {"front", front_to_json(a.front, a.problem.senses)}};
  if (a.wall_clock_seconds) j["wall_clock_seconds"] = *a.wall_clock_seconds;
  return j;
}

RunArchive archive_from_json(const json& j) {
  try {
    if (j.at("format") != kArchiveFormat) throw DataError("not a run archive");
    if (j.at("version") != kFormatVersion) throw DataError("unsupported archive version");
    RunArchive a;
    a.study = j.at("study");
    a.problem = problem_from_json(j.at("problem"));
    a.algorithm = algorithm_from_json(j.at("algorithm"));
    a.run_index = j.at("run_index").get<std::size_t>();
    a.seed = j.at("seed").get<std::uint64_t>();
    a.evaluations = j.at("evaluations").get<std::uint64_t>();
    a.nonfinite_evaluations = j.at("warnings").at("nonfinite_evaluations").get<std::uint64_t>();
    a.evaluation_warnings = j.at("warnings").at("evaluation_warnings").get<std::uint64_t>();
    if (j.contains("wall_clock_seconds")) a.wall_clock_seconds = j["wall_clock_seconds"].get<double>();
    a.front = front_from_json(j.at("front"), a.problem.senses);
    return a;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed run archive: ") + e.what());
  } catch (const UsageError& e) {
    throw DataError(std::string("malformed run archive: ") + e.what());
  }
}

json to_json(const StudyManifest& m) {
  json runs = json::array();
  for (const auto& r : m.runs) {
    runs.push_back({{"run_index", r.run_index}, {"seed", r.seed}, {"archive", r.archive}});
  }
  return {{"format", kManifestFormat},
          {"version", kFormatVersion},
          {"study", m.study},
          {"problem", problem_to_json(m.problem)},
          {"runs", runs}};
}

StudyManifest manifest_from_json(const json& j) {
  try {
    if (j.at("format") != kManifestFormat) throw DataError("not a study manifest");
    StudyManifest m;
    m.study = j.at("study");
    m.problem = problem_from_json(j.at("problem"));
    for (const auto& r : j.at("runs")) {
      m.runs.push_back(ManifestEntry{r.at("run_index").get<std::size_t>(), r.at("seed").get<std::uint64_t>(),
                                     r.at("archive").get<std::string>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  } catch (const UsageError& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(tmp.string() + ": cannot write");
    out << text;
    if (!out) throw DataError(tmp.string() + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

void save_archive(const std::filesystem::path& path, const RunArchive& archive) {
  write_text_atomic(path, to_json(archive).dump(2) + "\n");
}

RunArchive load_archive(const std::filesystem::path& path) {
  try {
    return archive_from_json(read_json(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_manifest(const std::filesystem::path& path, const StudyManifest& manifest) {
  write_text_atomic(path, to_json(manifest).dump(2) + "\n");
}

StudyManifest load_manifest(const std::filesystem::path& path) {
  try {
    return manifest_from_json(read_json(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

bool is_manifest_file(const std::filesystem::path& path) {
  const auto j = read_json(path);
  return j.is_object() && j.contains("format") && j["format"] == kManifestFormat;
}

std::vector<RunArchive> load_runs(const std::vector<std::filesystem::path>& inputs) {
  std::vector<RunArchive> runs;
  for (const auto& p : inputs) {
    if (is_manifest_file(p)) {
      const auto m = load_manifest(p);
      for (const auto& e : m.runs) runs.push_back(load_archive(p.parent_path() / e.archive));
    } else {
      runs.push_back(load_archive(p));
    }
  }
  if (runs.empty()) throw DataError("no run archives given");
  std::stable_sort(runs.begin(), runs.end(), [](const RunArchive& a, const RunArchive& b) {
    return a.run_index != b.run_index ? a.run_index < b.run_index : a.seed < b.seed;
  });
  for (const auto& r : runs) {
    if (r.problem.senses.size() != runs.front().problem.senses.size()) {
      throw DataError("archives have mixed objective counts");
    }
    if (r.problem.senses != runs.front().problem.senses) {
      throw DataError("archives have mixed objective orientations");
    }
  }
  return runs;
}

}  // namespace moa

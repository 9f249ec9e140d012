#include "moa/study.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "moa/csv.hpp"
#include "moa/errors.hpp"
#include "moa/indicators.hpp"
#include "moa/mining.hpp"

namespace moa {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string archive_name(std::size_t run) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "run_%03zu.json", run);
  return buf;
}

std::vector<std::string> parameter_names(const SearchSpace& space) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < space.dimension(); ++i) out.push_back(space.name(i));
  return out;
}

json physical_json(const ObjectiveVector& v, const std::vector<Sense>& senses) {
  return to_physical(senses, v.values());
}

void write_file(const fs::path& path, const std::string& text, std::vector<fs::path>& files) {
  write_text_atomic(path, text);
  files.push_back(path);
}

}  // namespace

OptimizeResult cmd_optimize(const StudyConfig& input, const OptimizeOptions& options, std::ostream& log) {
  StudyConfig config = input;
  if (options.eval_seed) {
    config.problem_settings["eval_seed"] = std::to_string(*options.eval_seed);
  } else if (!config.problem_settings.count("eval_seed")) {
    config.problem_settings["eval_seed"] = std::to_string(config.master_seed);
  }
  if (options.jobs) config.jobs = *options.jobs;
  if (options.out) config.output_dir = options.out->string();
  if (config.jobs < 1) throw ConfigError("--jobs must be >= 1");

  const auto probe = make_problem(config.problem_name, config.problem_settings);
  const SearchSpace space = effective_space(*probe, config.space_overrides);
  const ProblemInfo info = ProblemInfo::describe(*probe, space);
  const json study = to_json(config);
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);

  OptimizeResult result;
  result.archives.resize(config.runs);
  std::vector<std::exception_ptr> errors(config.runs);
  std::vector<std::string> lines(config.runs);

  const auto runs = static_cast<std::ptrdiff_t>(config.runs);
#pragma omp parallel for num_threads(static_cast<int>(config.jobs)) schedule(dynamic, 1)
  for (std::ptrdiff_t r = 0; r < runs; ++r) {
    const auto run = static_cast<std::size_t>(r);
    try {
      // One problem instance per run keeps its warning counters private.
      const auto problem = make_problem(config.problem_name, config.problem_settings);
      AlgorithmConfig algorithm = config.algorithm;
      algorithm.seed = config.run_seed(run);
      const auto start = std::chrono::steady_clock::now();
      auto outcome = run_nsga2(*problem, space, algorithm, static_cast<std::int64_t>(run));
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

      RunArchive archive;
      archive.study = study;
      archive.problem = info;
      archive.algorithm = algorithm;
      archive.run_index = run;
      archive.seed = algorithm.seed;
      archive.evaluations = outcome.evaluations;
      archive.nonfinite_evaluations = outcome.nonfinite_evaluations;
      archive.evaluation_warnings = problem->warning_count();
      if (options.record_timing) archive.wall_clock_seconds = elapsed.count();
      archive.front = std::move(outcome.front);

      const fs::path path = dir / archive_name(run);
      save_archive(path, archive);
      result.archives[run] = path;
      std::ostringstream line;
      line << "run " << run << " (seed " << algorithm.seed << "): " << archive.front.size()
           << " non-dominated solutions, " << archive.evaluations << " evaluations";
      if (archive.nonfinite_evaluations) line << ", " << archive.nonfinite_evaluations << " non-finite";
      if (archive.evaluation_warnings) line << ", " << archive.evaluation_warnings << " evaluation warnings";
      lines[run] = line.str();
    } catch (...) {
      errors[run] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& l : lines) log << l << '\n';

  StudyManifest manifest;
  manifest.study = study;
  manifest.problem = info;
  for (std::size_t r = 0; r < config.runs; ++r) {
    manifest.runs.push_back(ManifestEntry{r, config.run_seed(r), archive_name(r)});
  }
  result.manifest = dir / "manifest.json";
  save_manifest(result.manifest, manifest);
  log << "manifest: " << result.manifest.string() << '\n';
  return result;
}

OptimizeResult cmd_optimize(const fs::path& config_path, const OptimizeOptions& options, std::ostream& log) {
  return cmd_optimize(load_study_config(config_path), options, log);
}

AggregateResult cmd_aggregate(const std::vector<fs::path>& inputs, const AggregateOptions& options,
                              std::ostream& out) {
  const auto archives = load_runs(inputs);
  const auto& info = archives.front().problem;
  std::vector<Front> fronts;
  for (const auto& a : archives) fronts.push_back(a.front);
  const RunSet runs(std::move(fronts));
  const auto names = parameter_names(info.space);

  double threshold = kDefaultConvergenceThreshold;
  if (archives.front().study.contains("convergence_threshold")) {
    threshold = archives.front().study["convergence_threshold"].get<double>();
  }
  if (options.threshold) threshold = *options.threshold;
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("--threshold must lie in (0, 1)");

  AggregateResult result;
  result.psi0 = psi0(runs);
  json report = {{"runs", runs.size()},
                 {"objectives", info.objective_names},
                 {"senses", json::array()},
                 {"metric", options.metric == DistanceMetric::euclidean ? "euclidean" : "normalized"},
                 {"threshold", threshold},
                 {"psi0_size", result.psi0.size()}};
  for (auto s : info.senses) report["senses"].push_back(to_string(s));

  std::vector<double> per_point;
  if (runs.size() >= 2) per_point = per_point_disparity(result.psi0, runs, options.metric);

  if (runs.size() >= 2 && runs.objective_count() == 2) {
    DisparityReport r;
    const auto hv = hypervolume_disparity(runs);
    r.eta_bar = hv.eta_bar;
    r.hv_psi0 = hv.hv_psi0;
    r.hv_psi1 = hv.hv_psi1;
    r.relative_difference = hv.relative_difference;
    r.psi0 = result.psi0;
    r.psi1 = psi1(runs);
    r.per_point = per_point;
    result.verdict = convergence_check(r.relative_difference, threshold);
    report["eta_bar"] = physical_json(r.eta_bar, info.senses);
    report["hv_psi0"] = r.hv_psi0;
    report["hv_psi1"] = r.hv_psi1;
    report["relative_difference_defined"] = r.relative_difference.has_value();
    report["relative_difference"] = r.relative_difference ? json(*r.relative_difference) : json(nullptr);
    report["verdict"] = to_string(result.verdict->status);
    report["diagnostic"] = result.verdict->diagnostic;
    report["psi1_size"] = r.psi1.size();
    write_file(options.out / "psi1.csv", front_csv(r.psi1, names, info.objective_names, info.senses),
               result.files);
    result.report = std::move(r);
  } else if (runs.size() < 2) {
    report["note"] = "disparity statistics need at least 2 runs";
  } else {
    report["note"] = "hypervolume disparity and psi1 are computed for 2 objectives only";
  }

  json points = json::array();
  for (std::size_t i = 0; i < per_point.size(); ++i) {
    points.push_back({{"objectives", physical_json(result.psi0[i].objectives, info.senses)},
                      {"run", result.psi0[i].provenance.run},
                      {"disparity", per_point[i]}});
  }
  report["per_point"] = points;

  write_file(options.out / "psi0.csv", front_csv(result.psi0, names, info.objective_names, info.senses),
             result.files);
  if (options.epsilon && per_point.empty()) throw DataError("--epsilon needs at least 2 runs");
  std::optional<double> epsilon = options.epsilon;
  if (!epsilon) {
    const auto& study = archives.front().study;
    if (study.contains("epsilon") && study["epsilon"].is_number()) epsilon = study["epsilon"].get<double>();
  }
  if (epsilon && !per_point.empty()) {
    result.conservative = conservative_front(result.psi0, per_point, *epsilon);
    report["epsilon"] = *epsilon;
    report["psi_cons_size"] = result.conservative->size();
    write_file(options.out / "psi_cons.csv",
               front_csv(*result.conservative, names, info.objective_names, info.senses), result.files);
  }
  write_file(options.out / "disparity.json", report.dump(2) + "\n", result.files);

  out << "runs: " << runs.size() << ", psi0: " << result.psi0.size() << " solutions\n";
  if (result.report) {
    out << std::setprecision(10) << "hypervolume psi0: " << result.report->hv_psi0
        << ", psi1: " << result.report->hv_psi1 << '\n';
  }
  if (result.conservative) out << "psi_cons: " << result.conservative->size() << " solutions\n";
  if (result.verdict) {
    out << "verdict: " << to_string(result.verdict->status) << " (" << result.verdict->diagnostic << ")\n";
  } else {
    out << "verdict: n/a (" << report.value("note", std::string{}) << ")\n";
  }
  return result;
}

std::string to_string(Analysis a) {
  switch (a) {
    case Analysis::kmeans: return "kmeans";
    case Analysis::cart: return "cart";
    case Analysis::autocorrelation: return "autocorrelation";
    case Analysis::compromise: return "compromise";
    case Analysis::neighborhood: return "neighborhood";
    case Analysis::wta: return "wta";
    case Analysis::aero: break;
  }
  return "aero";
}

namespace {

struct LoadedFront {
  Front front;
  std::vector<std::string> parameter_names;
  std::vector<std::string> objective_names;
  std::vector<Sense> senses;
  std::optional<ProblemInfo> problem;
  json study;
  std::map<std::string, std::vector<std::string>> extra;
};

bool is_csv(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv";
}

LoadedFront load_front(const fs::path& input, const std::optional<std::string>& label_column,
                       std::optional<double> epsilon) {
  LoadedFront lf;
  if (is_csv(input)) {
    std::vector<std::string> aside;
    if (label_column) aside.push_back(*label_column);
    auto table = read_front_csv(input, aside);
    try {
      lf.front = Front::from_members(std::move(table.rows));
    } catch (const UsageError& e) {
      throw DataError(input.string() + ": rows are not a non-dominated front: " + std::string(e.what()));
    }
    lf.parameter_names = std::move(table.parameter_names);
    lf.objective_names = std::move(table.objective_names);
    lf.senses = std::move(table.senses);
    lf.extra = std::move(table.extra);
    return lf;
  }
  if (label_column) {
    throw IncompatibleAnalysisError("--label-column needs a front CSV input carrying that column");
  }
  const auto archives = load_runs({input});
  std::vector<Front> fronts;
  for (const auto& a : archives) fronts.push_back(a.front);
  const RunSet runs(std::move(fronts));
  lf.front = psi0(runs);
  if (epsilon && runs.size() >= 2) {
    lf.front = conservative_front(lf.front, per_point_disparity(lf.front, runs), *epsilon);
  }
  lf.problem = archives.front().problem;
  lf.parameter_names = parameter_names(lf.problem->space);
  lf.objective_names = lf.problem->objective_names;
  lf.senses = lf.problem->senses;
  lf.study = archives.front().study;
  return lf;
}

template <typename T>
T study_value(const json& study, std::initializer_list<const char*> path, T fallback) {
  const json* node = &study;
  for (const char* key : path) {
    if (!node->is_object() || !node->contains(key)) return fallback;
    node = &(*node)[key];
  }
  if (node->is_null()) return fallback;
  return node->get<T>();
}

std::string clusters_csv(const LoadedFront& lf, const ClusterAssignment& ca) {
  std::ostringstream os;
  os << "index,cluster";
  for (const auto& n : lf.parameter_names) os << ',' << n;
  os << '\n';
  for (std::size_t i = 0; i < lf.front.size(); ++i) {
    os << i << ',' << ca.assignment[i];
    for (double v : lf.front[i].parameters) os << ',' << format_real(v);
    os << '\n';
  }
  return os.str();
}

// Parameters rescaled to [0, 1] by the front's own range so that no unit dominates.
std::vector<double> scaled_parameters(const Front& front) {
  const std::size_t m = front[0].parameters.size();
  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
  for (const auto& s : front) {
    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = std::min(lo[j], s.parameters[j]);
      hi[j] = std::max(hi[j], s.parameters[j]);
    }
  }
  std::vector<double> out;
  out.reserve(front.size() * m);
  for (const auto& s : front) {
    for (std::size_t j = 0; j < m; ++j) {
      out.push_back(hi[j] > lo[j] ? (s.parameters[j] - lo[j]) / (hi[j] - lo[j]) : 0.0);
    }
  }
  return out;
}

}  // namespace

AnalyzeResult cmd_analyze(const fs::path& input, const AnalyzeOptions& options, std::ostream& out) {
  const auto lf = load_front(input, options.label_column, options.epsilon);
  if (lf.front.empty()) throw DataError("the front to analyze is empty");
  const bool has_parameters = !lf.parameter_names.empty() && lf.front[0].parameters.size() == lf.parameter_names.size();
  const bool is_wta = lf.problem && lf.problem->name == "wta";

  const std::size_t k = options.k.value_or(study_value<std::size_t>(lf.study, {"analysis", "k"}, 3));
  const std::uint64_t factor =
      options.balance_factor.value_or(study_value<std::uint64_t>(lf.study, {"analysis", "balance_factor"}, 1));
  PNorm p_norm = options.p_norm.value_or(
      parse_pnorm(study_value<std::string>(lf.study, {"analysis", "p_norm"}, "2")));
  CartConfig cart_config;
  cart_config.max_depth = study_value<std::size_t>(lf.study, {"analysis", "cart", "max_depth"}, cart_config.max_depth);
  cart_config.min_samples_leaf =
      study_value<std::uint64_t>(lf.study, {"analysis", "cart", "min_samples_leaf"}, cart_config.min_samples_leaf);
  cart_config.min_impurity_decrease = study_value<double>(lf.study, {"analysis", "cart", "min_impurity_decrease"},
                                                          cart_config.min_impurity_decrease);
  if (options.cart) cart_config = *options.cart;
  const double nb_tol = options.neighborhood_tolerance.value_or(
      study_value<double>(lf.study, {"analysis", "neighborhood", "tolerance"}, 0.05));
  const std::size_t nb_obj = options.neighborhood_objective.value_or(
      study_value<std::size_t>(lf.study, {"analysis", "neighborhood", "objective"}, 0));
  const Sense nb_sense = options.neighborhood_sense.value_or(
      parse_sense(study_value<std::string>(lf.study, {"analysis", "neighborhood", "sense"},
                                           nb_obj < lf.senses.size() ? to_string(lf.senses[nb_obj]) : "min")));
  const bool has_labels = options.label_column.has_value() || is_wta;

  std::set<Analysis> todo = options.analyses;
  if (todo.empty()) {
    todo = {Analysis::compromise, Analysis::neighborhood};
    if (has_parameters && lf.front.size() >= 3) todo.insert(Analysis::autocorrelation);
    if (has_parameters && lf.front.size() >= k) todo.insert(Analysis::kmeans);
    if (has_parameters && has_labels) todo.insert(Analysis::cart);
    if (is_wta) todo.insert(Analysis::wta);
    if (options.kinematics) todo.insert(Analysis::aero);
  }

  AnalyzeResult result;
  const auto& front = lf.front;
  const auto require_parameters = [&](Analysis a) {
    if (!has_parameters) {
      throw IncompatibleAnalysisError(to_string(a) + " needs parameter values, but the input front has none");
    }
  };
  out << "front: " << front.size() << " solutions, " << lf.parameter_names.size() << " parameters\n";

  std::optional<WtaProblem> wta;
  if (todo.count(Analysis::wta) || (todo.count(Analysis::cart) && !options.label_column)) {
    if (!is_wta) {
      throw IncompatibleAnalysisError(
          "plausibility labelling is only defined for the 'wta' problem, input problem is '" +
          (lf.problem ? lf.problem->name : std::string("unknown (CSV input)")) +
          "'; supply --label-column for CART");
    }
    wta.emplace(wta_spec_from_settings(lf.problem->settings));
  }

  if (todo.count(Analysis::wta)) {
    std::ostringstream os;
    os << "index,base_level,mean_selected,mean_unselected,plausible,dual_selection_rate\n";
    std::size_t plausible = 0;
    for (std::size_t i = 0; i < front.size(); ++i) {
      const auto x = front[i].parameters.values();
      const auto net = wta->network(x);
      const auto inputs = wta->inputs_for(x);
      const auto p = wta_base_level_and_plausibility(net, inputs);
      const double dual = dual_selection_rate(net, inputs);
      plausible += p.plausible;
      os << i << ',' << format_real(p.base_level) << ',' << format_real(p.mean_selected) << ','
         << format_real(p.mean_unselected) << ',' << (p.plausible ? "P" : "NP") << ',' << format_real(dual) << '\n';
    }
    write_file(options.out / "wta_diagnostics.csv", os.str(), result.files);
    out << "wta: " << plausible << " plausible of " << front.size() << '\n';
  }

  if (todo.count(Analysis::kmeans)) {
    require_parameters(Analysis::kmeans);
    if (k > front.size()) {
      throw IncompatibleAnalysisError("kmeans: k = " + std::to_string(k) + " exceeds the front size " +
                                      std::to_string(front.size()));
    }
    const auto features = scaled_parameters(front);
    const auto ca = kmeans(PointsView{features, lf.parameter_names.size()}, k, options.seed);
    write_file(options.out / "clusters.csv", clusters_csv(lf, ca), result.files);
    out << "kmeans: k=" << k << ", wcss=" << ca.wcss << " (scaled parameters), " << ca.iterations
        << " iterations\n";
  }

  if (todo.count(Analysis::cart)) {
    require_parameters(Analysis::cart);
    std::vector<std::string> class_names;
    std::vector<LabeledSample> samples;
    if (options.label_column) {
      const auto& column = lf.extra.at(*options.label_column);
      class_names = column;
      std::sort(class_names.begin(), class_names.end());
      class_names.erase(std::unique(class_names.begin(), class_names.end()), class_names.end());
      for (std::size_t i = 0; i < front.size(); ++i) {
        const auto label = static_cast<std::size_t>(
            std::find(class_names.begin(), class_names.end(), column[i]) - class_names.begin());
        const auto x = front[i].parameters.values();
        samples.push_back(LabeledSample{{x.begin(), x.end()}, label, 1});
      }
    } else {
      class_names = {"NP", "P"};
      for (const auto& s : front) {
        const auto x = s.parameters.values();
        const bool p = wta_base_level_and_plausibility(wta->network(x), wta->inputs_for(x)).plausible;
        samples.push_back(LabeledSample{{x.begin(), x.end()}, p ? 1u : 0u, 1});
      }
    }
    const auto before = class_weights(samples, class_names.size());
    std::size_t minority = 0;
    for (std::size_t c = 0; c < before.size(); ++c) {
      if (before[c] > 0 && (before[minority] == 0 || before[c] < before[minority])) minority = c;
    }
    samples = balance_by_replication(std::move(samples), factor, minority);
    const auto after = class_weights(samples, class_names.size());
    const auto tree = cart_train(samples, cart_config);

    std::ostringstream counts;
    for (std::size_t c = 0; c < class_names.size(); ++c) {
      counts << (c ? ", " : "") << class_names[c] << "=" << before[c];
      if (after[c] != before[c]) counts << " -> " << after[c];
    }
    std::ostringstream rules;
    rules << "# class weights: " << counts.str();
    if (factor > 1) rules << " (" << class_names[minority] << " replicated x" << factor << ")";
    rules << "\n" << tree.rules_text(lf.parameter_names, class_names);
    write_file(options.out / "rules.txt", rules.str(), result.files);
    write_file(options.out / "tree.dot", tree.to_dot(lf.parameter_names, class_names), result.files);
    out << "cart: class weights " << counts.str() << "; depth " << tree.depth() << ", " << tree.leaf_count()
        << " leaves, training accuracy " << tree.training_accuracy() * 100.0 << "%\n";
  }

  if (todo.count(Analysis::autocorrelation)) {
    require_parameters(Analysis::autocorrelation);
    if (front.size() < 3) throw IncompatibleAnalysisError("autocorrelation needs at least 3 solutions");
    std::ostringstream os;
    os << "parameter,autocorrelation\n";
    for (std::size_t j = 0; j < lf.parameter_names.size(); ++j) {
      const auto r = parameter_autocorrelation(front, j, 0);
      os << lf.parameter_names[j] << ',' << (r ? format_real(*r) : "undefined") << '\n';
    }
    write_file(options.out / "autocorrelation.csv", os.str(), result.files);
    out << "autocorrelation: " << lf.parameter_names.size() << " parameters\n";
  }

  if (todo.count(Analysis::compromise)) {
    const auto c = select_compromise(front, p_norm);
    std::vector<Solution> one{c.solution};
    write_file(options.out / "compromise.csv",
               front_csv(Front::from_members(std::move(one)), lf.parameter_names, lf.objective_names, lf.senses),
               result.files);
    out << "compromise (p=" << to_string(p_norm) << "): index " << c.index << ", normalized distance "
        << c.distance << '\n';
  }

  if (todo.count(Analysis::neighborhood)) {
    if (nb_obj >= lf.senses.size()) throw IncompatibleAnalysisError("neighborhood objective index out of range");
    const auto nb = select_neighborhood(front, lf.senses, nb_obj, nb_tol, nb_sense);
    write_file(options.out / "neighborhood.csv",
               front_csv(nb.members, lf.parameter_names, lf.objective_names, lf.senses), result.files);
    out << "neighborhood of best " << lf.objective_names[nb_obj] << " (" << to_string(nb_sense)
        << "): " << nb.members.size() << " solutions within " << nb_tol * 100.0 << "%\n";
  }

  if (todo.count(Analysis::aero)) {
    if (!options.kinematics) throw IncompatibleAnalysisError("aero analysis needs --kinematics <csv>");
    const auto records = read_kinematics_csv(*options.kinematics);
    write_file(options.out / "aero_features.csv", aero_features_csv(records), result.files);
    out << "aero: " << records.size() << " kinematic records\n";
  }
  return result;
}

namespace {

LoadedFront front_for_compare(const fs::path& p) { return load_front(p, std::nullopt, std::nullopt); }

}  // namespace

ComparisonVerdict cmd_compare(const fs::path& a, const fs::path& b, std::ostream& out) {
  const auto fa = front_for_compare(a);
  const auto fb = front_for_compare(b);
  if (fa.senses.size() != fb.senses.size()) {
    throw DataError("fronts have different objective counts (" + std::to_string(fa.senses.size()) + " vs " +
                    std::to_string(fb.senses.size()) + ")");
  }
  if (fa.senses != fb.senses) throw DataError("fronts have different objective orientations");
  const auto v = front_compare(fa.front, fb.front);
  out << "verdict: " << to_string(v.kind) << '\n';
  auto print = [&](const char* label, const std::vector<Solution>& w) {
    out << label << " (" << w.size() << "):\n";
    for (const auto& s : w) {
      out << " ";
      for (double x : to_physical(fa.senses, s.objectives.values())) out << ' ' << format_real(x);
      out << '\n';
    }
  };
  if (v.kind == ComparisonVerdict::Kind::incomparable) {
    print("first-front witnesses not dominated by the second", v.first_witnesses);
    print("second-front witnesses not dominated by the first", v.second_witnesses);
  }
  return v;
}

}  // namespace moa

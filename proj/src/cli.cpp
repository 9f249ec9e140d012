#include <CLI11.hpp>

#include <ostream>

#include "moa/errors.hpp"
#include "moa/study.hpp"

namespace moa {

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitIncompatible = 4;

const std::map<std::string, Analysis> kAnalysisNames = {
    {"kmeans", Analysis::kmeans},           {"cart", Analysis::cart},
    {"autocorrelation", Analysis::autocorrelation}, {"compromise", Analysis::compromise},
    {"neighborhood", Analysis::neighborhood}, {"wta", Analysis::wta},
    {"aero", Analysis::aero},
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-objective optimization studies: repeated runs, front disparity and front mining"};
  app.require_subcommand(1);

  OptimizeOptions opt;
  std::string config_path;
  std::size_t jobs = 0;
  std::string opt_out;
  std::uint64_t eval_seed = 0;
  auto* optimize = app.add_subcommand("optimize", "run the seeded optimizations of a study");
  optimize->add_option("--config", config_path, "study configuration file")->required();
  auto* jobs_opt = optimize->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);
  auto* out_opt = optimize->add_option("--out", opt_out, "output directory (overrides study.output)");
  auto* eval_opt = optimize->add_option("--eval-seed", eval_seed, "seed of the evaluation-side randomness");
  optimize->add_flag("--timing", opt.record_timing, "record wall-clock time in the archives");

  AggregateOptions agg;
  std::vector<std::string> agg_inputs;
  std::string agg_out = "aggregate";
  std::string metric = "euclidean";
  double agg_epsilon = 0.0;
  double agg_threshold = 0.0;
  auto* aggregate = app.add_subcommand("aggregate", "compute psi0/psi1, disparity and the convergence verdict");
  aggregate->add_option("inputs", agg_inputs, "study manifests or run archives")->required();
  aggregate->add_option("--out", agg_out, "output directory");
  auto* agg_eps_opt = aggregate->add_option("--epsilon", agg_epsilon, "disparity bound for the conservative front");
  auto* agg_thr_opt = aggregate->add_option("--threshold", agg_threshold, "relative hypervolume threshold");
  aggregate->add_option("--metric", metric, "per-point distance")->check(CLI::IsMember({"euclidean", "normalized"}));

  AnalyzeOptions ana;
  std::string ana_input;
  std::string ana_out = "analysis";
  std::vector<std::string> analyses;
  std::size_t k = 0;
  std::uint64_t balance = 1;
  std::string label_column;
  std::string p_norm;
  double ana_epsilon = 0.0;
  std::string kinematics;
  double nb_tol = 0.0;
  std::size_t nb_obj = 0;
  std::string nb_sense;
  CartConfig cart;
  std::uint64_t seed = 0;
  auto* analyze = app.add_subcommand("analyze", "mine an aggregated front");
  analyze->add_option("input", ana_input, "study manifest, run archive or front CSV")->required();
  analyze->add_option("--out", ana_out, "output directory");
  analyze->add_option("--analysis", analyses, "analyses to run (default: all applicable)")
      ->check(CLI::IsMember({"kmeans", "cart", "autocorrelation", "compromise", "neighborhood", "wta", "aero"}))
      ->delimiter(',');
  auto* k_opt = analyze->add_option("--k", k, "number of clusters")->check(CLI::PositiveNumber);
  auto* bal_opt = analyze->add_option("--balance-factor", balance, "replication factor of the minority class")
                      ->check(CLI::PositiveNumber);
  auto* label_opt = analyze->add_option("--label-column", label_column, "CSV column holding class labels");
  auto* p_opt = analyze->add_option("--p-norm", p_norm, "compromise distance: 1, 2 or inf");
  auto* ana_eps_opt = analyze->add_option("--epsilon", ana_epsilon, "analyze the conservative front");
  auto* kin_opt = analyze->add_option("--kinematics", kinematics, "kinematics CSV for the aero transform");
  auto* tol_opt = analyze->add_option("--neighborhood-tolerance", nb_tol, "relative tolerance");
  auto* obj_opt = analyze->add_option("--neighborhood-objective", nb_obj, "objective index");
  auto* sense_opt = analyze->add_option("--neighborhood-sense", nb_sense, "min or max")
                        ->check(CLI::IsMember({"min", "max"}));
  auto* depth_opt = analyze->add_option("--max-depth", cart.max_depth, "CART depth limit");
  auto* leaf_opt = analyze->add_option("--min-samples-leaf", cart.min_samples_leaf, "CART leaf weight");
  auto* dec_opt = analyze->add_option("--min-impurity-decrease", cart.min_impurity_decrease, "CART split gain");
  analyze->add_option("--seed", seed, "k-means seed");

  std::string cmp_a, cmp_b;
  auto* compare = app.add_subcommand("compare", "compare psi0 of two studies");
  compare->add_option("first", cmp_a, "study A")->required();
  compare->add_option("second", cmp_b, "study B")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (optimize->parsed()) {
      if (*jobs_opt) opt.jobs = jobs;
      if (*out_opt) opt.out = opt_out;
      if (*eval_opt) opt.eval_seed = eval_seed;
      cmd_optimize(std::filesystem::path(config_path), opt, out);
    } else if (aggregate->parsed()) {
      std::vector<std::filesystem::path> inputs(agg_inputs.begin(), agg_inputs.end());
      agg.out = agg_out;
      agg.metric = metric == "normalized" ? DistanceMetric::normalized : DistanceMetric::euclidean;
      if (*agg_eps_opt) agg.epsilon = agg_epsilon;
      if (*agg_thr_opt) agg.threshold = agg_threshold;
      cmd_aggregate(inputs, agg, out);
    } else if (analyze->parsed()) {
      ana.out = ana_out;
      for (const auto& a : analyses) ana.analyses.insert(kAnalysisNames.at(a));
      if (*k_opt) ana.k = k;
      if (*bal_opt) ana.balance_factor = balance;
      if (*label_opt) ana.label_column = label_column;
      if (*p_opt) {
        try {
          ana.p_norm = parse_pnorm(p_norm);
        } catch (const UsageError& e) {
          throw ConfigError(std::string("--p-norm: ") + e.what());
        }
      }
      if (*ana_eps_opt) ana.epsilon = ana_epsilon;
      if (*kin_opt) ana.kinematics = kinematics;
      if (*tol_opt) ana.neighborhood_tolerance = nb_tol;
      if (*obj_opt) ana.neighborhood_objective = nb_obj;
      if (*sense_opt) ana.neighborhood_sense = parse_sense(nb_sense);
      if (*depth_opt || *leaf_opt || *dec_opt) ana.cart = cart;
      ana.seed = seed;
      cmd_analyze(ana_input, ana, out);
    } else if (compare->parsed()) {
      cmd_compare(cmp_a, cmp_b, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IncompatibleAnalysisError& e) {
    err << "incompatible analysis: " << e.what() << '\n';
    return kExitIncompatible;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const UsageError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace moa

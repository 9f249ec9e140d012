#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "moa/config.hpp"
#include "moa/errors.hpp"
#include "moa/problems.hpp"
#include "moa/rng.hpp"

namespace moa {

InputSet draw_inputs(std::size_t channels, std::size_t samples, std::uint64_t seed) {
  InputSet set;
  set.channels = channels;
  set.values.resize(channels * samples);
  CounterRng rng(seed, Stream::evaluation);
  for (auto& v : set.values) v = rng.uniform();
  return set;
}

WtaWeights WtaWeights::from(std::span<const double> x) {
  if (x.size() != 4) throw UsageError("WTA model takes exactly 4 weights");
  for (double w : x) {
    if (!(w >= kWtaWeightLo && w <= kWtaWeightHi)) {
      throw UsageError("WTA weights must lie in [0.05, 1]");
    }
  }
  return WtaWeights{x[0], x[1], x[2], x[3]};
}

RateNetwork::RateNetwork(WtaWeights weights, std::size_t channels, std::size_t settle_iterations,
                         double settle_tolerance)
    : w_(weights),
      channels_(channels),
      settle_iterations_(settle_iterations),
      settle_tolerance_(settle_tolerance) {
  if (channels_ < 2) throw UsageError("WTA network needs at least 2 channels");
}

std::vector<double> RateNetwork::respond(std::span<const double> input) const {
  bool settled = true;
  return respond(input, settled);
}

std::vector<double> RateNetwork::respond(std::span<const double> input, bool& settled) const {
  if (input.size() != channels_) throw UsageError("input has the wrong channel count");
  const std::size_t k = channels_;
  const double others = static_cast<double>(k - 1);
  std::vector<double> a(k, 0.0), next(k);
  settled = false;
  for (std::size_t it = 0; it < settle_iterations_; ++it) {
    const double total = std::accumulate(a.begin(), a.end(), 0.0);
    double change = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double lateral = (total - a[i]) / others;
      const double drive = w_.input_gain * input[i] + w_.self_excitation * a[i] -
                           w_.lateral_inhibition * lateral;
      const double r = std::max(drive, 0.0);
      next[i] = (1.0 - kLeak) * a[i] + kLeak * r / (1.0 + r);
      change = std::max(change, std::abs(next[i] - a[i]));
    }
    a.swap(next);
    if (change < settle_tolerance_) {
      settled = true;
      break;
    }
  }
  const double total = std::accumulate(a.begin(), a.end(), 0.0);
  std::vector<double> y(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double lateral = (total - a[i]) / others;
    y[i] = std::clamp(w_.output_offset - a[i] + w_.lateral_inhibition * lateral, 0.0, 1.0);
  }
  return y;
}

std::size_t selected_channel(std::span<const double> input) {
  return static_cast<std::size_t>(std::max_element(input.begin(), input.end()) - input.begin());
}

WtaScores wta_scores(const ChannelModel& model, const InputSet& inputs) {
  if (inputs.size() == 0) throw UsageError("WTA scoring needs at least one input");
  if (inputs.channels != model.channels()) throw UsageError("inputs and model differ in channel count");
  const double others = static_cast<double>(inputs.channels - 1);
  double selected = 0.0, unselected = 0.0;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    const auto u = inputs[s];
    const auto y = model.respond(u);
    const std::size_t sc = selected_channel(u);
    double rest = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i != sc) rest += y[i];
    }
    selected += y[sc];
    unselected += rest / others;
  }
  const double n = static_cast<double>(inputs.size());
  return WtaScores{selected / n, 1.0 - unselected / n};
}

ObjectiveVector wta_evaluate(const WtaModelSpec& spec, const ParameterVector& weights) {
  WtaProblem problem(spec);
  return ObjectiveVector(problem.evaluate_internal(weights.values()));
}

bool is_plausible(double base_level, double mean_selected, double mean_unselected) {
  return mean_selected < base_level && mean_unselected > base_level;
}

WtaPlausibility wta_base_level_and_plausibility(const ChannelModel& model, const InputSet& inputs) {
  const std::vector<double> silence(model.channels(), 0.0);
  const auto rest = model.respond(silence);
  WtaPlausibility out;
  out.base_level = std::accumulate(rest.begin(), rest.end(), 0.0) / static_cast<double>(rest.size());
  const auto scores = wta_scores(model, inputs);
  out.mean_selected = scores.f1;
  out.mean_unselected = 1.0 - scores.f2;
  out.plausible = is_plausible(out.base_level, out.mean_selected, out.mean_unselected);
  return out;
}

double dual_selection_rate(const ChannelModel& model, const InputSet& inputs, double tol) {
  if (model.channels() < 2) throw UsageError("dual selection needs at least 2 channels");
  if (inputs.size() == 0) return 0.0;
  std::size_t dual = 0;
  for (std::size_t s = 0; s < inputs.size(); ++s) {
    auto y = model.respond(inputs[s]);
    std::partial_sort(y.begin(), y.begin() + 2, y.end());
    if (y[1] - y[0] < tol) ++dual;
  }
  return static_cast<double>(dual) / static_cast<double>(inputs.size());
}

namespace {

SearchSpace wta_space() {
  return SearchSpace({Bound{kWtaWeightLo, kWtaWeightHi, "self_excitation", ""},
                      Bound{kWtaWeightLo, kWtaWeightHi, "lateral_inhibition", ""},
                      Bound{kWtaWeightLo, kWtaWeightHi, "input_gain", ""},
                      Bound{kWtaWeightLo, kWtaWeightHi, "output_offset", ""}});
}

}  // namespace

WtaProblem::WtaProblem(WtaModelSpec spec)
    : spec_(spec),
      space_(wta_space()),
      inputs_(draw_inputs(spec.channels, spec.samples, spec.eval_seed)) {
  if (spec_.channels < 2) throw ConfigError("problem.channels: need at least 2 channels");
  if (spec_.samples < 1) throw ConfigError("problem.samples: need at least 1 input sample");
  if (spec_.settle_iterations < 1) throw ConfigError("problem.settle_iterations: must be >= 1");
}

RateNetwork WtaProblem::network(std::span<const double> x) const {
  return RateNetwork(WtaWeights::from(x), spec_.channels, spec_.settle_iterations,
                     spec_.settle_tolerance);
}

InputSet WtaProblem::inputs_for(std::span<const double> x) const {
  if (!spec_.redraw_inputs) return inputs_;
  std::uint64_t h = spec_.eval_seed;
  for (double v : x) h = mix64(h ^ std::bit_cast<std::uint64_t>(v));
  return draw_inputs(spec_.channels, spec_.samples, h);
}

std::vector<double> WtaProblem::evaluate_physical(std::span<const double> x) const {
  const auto net = network(x);
  const auto redrawn = spec_.redraw_inputs ? inputs_for(x) : InputSet{};
  const InputSet& set = spec_.redraw_inputs ? redrawn : inputs_;
  const double others = static_cast<double>(spec_.channels - 1);
  double selected = 0.0, unselected = 0.0;
  std::uint64_t unsettled = 0;
  for (std::size_t s = 0; s < set.size(); ++s) {
    const auto u = set[s];
    bool settled = true;
    const auto y = net.respond(u, settled);
    if (!settled) ++unsettled;
    const std::size_t sc = selected_channel(u);
    double rest = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i != sc) rest += y[i];
    }
    selected += y[sc];
    unselected += rest / others;
  }
  if (unsettled) unsettled_.fetch_add(unsettled, std::memory_order_relaxed);
  const double n = static_cast<double>(set.size());
  return {selected / n, 1.0 - unselected / n};
}

std::map<std::string, std::string> WtaProblem::settings() const {
  return {{"channels", std::to_string(spec_.channels)},
          {"samples", std::to_string(spec_.samples)},
          {"settle_iterations", std::to_string(spec_.settle_iterations)},
          {"settle_tolerance", format_real(spec_.settle_tolerance)},
          {"eval_seed", std::to_string(spec_.eval_seed)},
          {"redraw_inputs", spec_.redraw_inputs ? "true" : "false"}};
}

WtaModelSpec wta_spec_from_settings(const std::map<std::string, std::string>& settings) {
  WtaModelSpec spec;
  for (const auto& [k, v] : settings) {
    const std::string field = "problem." + k;
    if (k == "channels") {
      spec.channels = parse_uint(v, field);
    } else if (k == "samples") {
      spec.samples = parse_uint(v, field);
    } else if (k == "settle_iterations") {
      spec.settle_iterations = parse_uint(v, field);
    } else if (k == "settle_tolerance") {
      spec.settle_tolerance = parse_double(v, field);
    } else if (k == "eval_seed") {
      spec.eval_seed = parse_uint(v, field);
    } else if (k == "redraw_inputs") {
      spec.redraw_inputs = parse_bool(v, field);
    } else {
      throw ConfigError(field + ": not a setting of problem 'wta'");
    }
  }
  return spec;
}

}  // namespace moa

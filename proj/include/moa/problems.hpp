#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "moa/core.hpp"

namespace moa {

enum class Sense { minimize, maximize };

std::string to_string(Sense s);
Sense parse_sense(const std::string& s);

/// Physical values -> internal maximized orientation (minimized objectives negated).
std::vector<double> to_internal(std::span<const Sense> senses, std::span<const double> physical);
/// Inverse of to_internal. Negation is exact, so the round trip is lossless.
std::vector<double> to_physical(std::span<const Sense> senses, std::span<const double> internal);

/// An objective function over a bounded parameter space. evaluate_physical must
/// be a pure, reentrant function of the parameters and the problem's own
/// evaluation seed; the optimizer calls it concurrently.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual const SearchSpace& space() const = 0;
  virtual std::vector<Sense> senses() const = 0;
  virtual std::vector<std::string> objective_names() const = 0;
  /// Objective values in their declared physical orientation. May be non-finite.
  virtual std::vector<double> evaluate_physical(std::span<const double> x) const = 0;
  /// Settings needed to rebuild the problem through make_problem.
  virtual std::map<std::string, std::string> settings() const { return {}; }
  /// Evaluation-side warnings (for example unsettled dynamics) seen so far.
  virtual std::uint64_t warning_count() const { return 0; }

  std::size_t objective_count() const { return senses().size(); }
  std::vector<double> evaluate_internal(std::span<const double> x) const;
};

/// Builds a registered problem by name ("synthetic", "wta"). Throws ConfigError
/// naming the offending field for unknown names or bad settings.
std::unique_ptr<Problem> make_problem(const std::string& name,
                                      const std::map<std::string, std::string>& settings);

// ---------------------------------------------------------------------------
// Synthetic biobjective problem with a known front.

/// f1 = 1 - x^2, f2 = 1 - (1 - x)^2, both maximized; every x in [0, 1] is
/// Pareto-optimal. Throws UsageError outside [0, 1].
ObjectiveVector synthetic_biobjective(double x);

/// Hypervolume of the analytic front of synthetic_biobjective against the
/// reference point (r1, r2), with r1, r2 <= 0.
double synthetic_biobjective_optimal_hypervolume(double r1 = 0.0, double r2 = 0.0);

class SyntheticBiobjective final : public Problem {
 public:
  SyntheticBiobjective();
  std::string name() const override { return "synthetic"; }
  const SearchSpace& space() const override { return space_; }
  std::vector<Sense> senses() const override { return {Sense::maximize, Sense::maximize}; }
  std::vector<std::string> objective_names() const override { return {"f1", "f2"}; }
  std::vector<double> evaluate_physical(std::span<const double> x) const override;

 private:
  SearchSpace space_;
};

// ---------------------------------------------------------------------------
// Soft winner-takes-all rate network.

struct WtaModelSpec {
  std::size_t channels = 3;
  std::size_t samples = 500;
  std::size_t settle_iterations = 100;
  double settle_tolerance = 1e-6;
  std::uint64_t eval_seed = 0;
  /// Redraw the input set per candidate (seeded from the parameters) instead
  /// of sharing one set across the study.
  bool redraw_inputs = false;
};

inline constexpr double kWtaWeightLo = 0.05;
inline constexpr double kWtaWeightHi = 1.0;

/// Row-major set of input vectors, one row per sample.
struct InputSet {
  std::size_t channels = 0;
  std::vector<double> values;

  std::size_t size() const noexcept { return channels == 0 ? 0 : values.size() / channels; }
  std::span<const double> operator[](std::size_t i) const {
    return std::span<const double>(values).subspan(i * channels, channels);
  }
};

/// `samples` inputs drawn uniformly in [0, 1] from `seed`.
InputSet draw_inputs(std::size_t channels, std::size_t samples, std::uint64_t seed);

/// Anything mapping a k-channel input to k channel outputs in [0, 1].
class ChannelModel {
 public:
  virtual ~ChannelModel() = default;
  virtual std::size_t channels() const = 0;
  virtual std::vector<double> respond(std::span<const double> input) const = 0;
};

struct WtaWeights {
  double self_excitation;
  double lateral_inhibition;
  double input_gain;
  double output_offset;

  static WtaWeights from(std::span<const double> x);
};

/// Discrete-time leaky k-channel network. Internal activity a follows
///   a_i <- (1 - leak) a_i + leak s(gain u_i + self a_i - lateral mean_{j!=i} a_j)
/// with the saturating rectifier s(z) = max(z, 0) / (1 + max(z, 0)), so a stays in [0, 1).
/// The (inhibitory) output is y_i = clamp(offset - a_i + lateral mean_{j!=i} a_j) in [0, 1].
/// Zero input leaves a = 0, so the base level equals the offset.
class RateNetwork final : public ChannelModel {
 public:
  RateNetwork(WtaWeights weights, std::size_t channels, std::size_t settle_iterations = 100,
              double settle_tolerance = 1e-6);

  std::size_t channels() const override { return channels_; }
  std::vector<double> respond(std::span<const double> input) const override;
  /// As respond, also reporting whether the dynamics settled before the cap.
  std::vector<double> respond(std::span<const double> input, bool& settled) const;

  static constexpr double kLeak = 0.5;

 private:
  WtaWeights w_;
  std::size_t channels_;
  std::size_t settle_iterations_;
  double settle_tolerance_;
};

/// Physical (minimized) WTA scores, both in [0, 1].
struct WtaScores {
  double f1 = 0.0;  // mean output of the selected channel
  double f2 = 0.0;  // 1 - mean output of the non-selected channels
};

/// Index of the largest input; ties go to the lowest index.
std::size_t selected_channel(std::span<const double> input);

WtaScores wta_scores(const ChannelModel& model, const InputSet& inputs);

/// Scores of the rate network with `weights` as a (-f1, -f2) internal vector.
ObjectiveVector wta_evaluate(const WtaModelSpec& spec, const ParameterVector& weights);

struct WtaPlausibility {
  double base_level = 0.0;
  double mean_selected = 0.0;
  double mean_unselected = 0.0;
  bool plausible = false;
};

/// Selected output strictly below the base level and unselected strictly above.
bool is_plausible(double base_level, double mean_selected, double mean_unselected);

/// Base level is the mean channel output under an all-zero input.
WtaPlausibility wta_base_level_and_plausibility(const ChannelModel& model, const InputSet& inputs);

/// Fraction of inputs whose two lowest channel outputs differ by less than tol.
double dual_selection_rate(const ChannelModel& model, const InputSet& inputs, double tol = 0.01);

class WtaProblem final : public Problem {
 public:
  explicit WtaProblem(WtaModelSpec spec);

  std::string name() const override { return "wta"; }
  const SearchSpace& space() const override { return space_; }
  std::vector<Sense> senses() const override { return {Sense::minimize, Sense::minimize}; }
  std::vector<std::string> objective_names() const override { return {"f1", "f2"}; }
  std::vector<double> evaluate_physical(std::span<const double> x) const override;
  std::map<std::string, std::string> settings() const override;
  std::uint64_t warning_count() const override { return unsettled_.load(); }

  const WtaModelSpec& spec() const noexcept { return spec_; }
  const InputSet& inputs() const noexcept { return inputs_; }
  RateNetwork network(std::span<const double> x) const;
  /// The input set a candidate is scored on (shared, or redrawn per candidate).
  InputSet inputs_for(std::span<const double> x) const;

 private:
  WtaModelSpec spec_;
  SearchSpace space_;
  InputSet inputs_;
  mutable std::atomic<std::uint64_t> unsettled_{0};
};

WtaModelSpec wta_spec_from_settings(const std::map<std::string, std::string>& settings);

// ---------------------------------------------------------------------------
// Flapping-wing kinematics and dimensionless numbers. Angles in degrees.

struct KinematicRecord {
  double a_di = 0.0;   // dihedral amplitude (deg)
  double p_di = 1.0;   // flapping period (s)
  double r_twi = 0.0;  // internal twist reference (deg)
  double a_twi = 0.0;  // internal twist amplitude (deg)
  double p_twi = 0.0;  // internal twist phase, fraction of a period
  double r_twe = 0.0;  // external twist reference (deg)
  double a_twe = 0.0;  // external twist amplitude (deg)
  double p_twe = 0.0;  // external twist phase
  double speed = 1.0;  // cruise speed U (m/s)
};

/// Throws DataError when a field falls outside its admissible range.
void validate(const KinematicRecord& rec);

struct AeroConstants {
  double wingspan = 1.93;       // b (m)
  double wing_area = 0.407;     // S (m^2)
  double mean_chord = 0.2;      // c_m (m)
  double viscosity = 1.5e-5;    // kinematic viscosity nu (m^2/s)
};

struct WingAngles {
  double dihedral;
  double internal_twist;
  double external_twist;
};

WingAngles kinematic_waveforms(const KinematicRecord& rec, double t);

struct AeroFeatures {
  double reynolds;
  double strouhal;
  double reduced_frequency;
  double internal_twist_frequency;
  double external_twist_frequency;
};

/// Throws UsageError for non-positive speed or period.
AeroFeatures aero_features(const KinematicRecord& rec, const AeroConstants& consts = {});

}  // namespace moa

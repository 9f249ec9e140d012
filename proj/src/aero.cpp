#include <cmath>
#include <numbers>
#include <sstream>

#include "moa/errors.hpp"
#include "moa/problems.hpp"

namespace moa {

namespace {

void check_range(const char* name, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi)) {
    std::ostringstream msg;
    msg << name << " = " << v << " outside [" << lo << ", " << hi << "]";
    throw DataError(msg.str());
  }
}

double deg_to_rad(double deg) { return std::numbers::pi * deg / 180.0; }

}  // namespace

void validate(const KinematicRecord& rec) {
  check_range("a_DI", rec.a_di, 0.0, 45.0);
  check_range("p_DI", rec.p_di, 0.2, 1.0);
  check_range("r_TWi", rec.r_twi, -22.5, 22.5);
  check_range("a_TWi", rec.a_twi, 0.0, 45.0);
  check_range("p_TWi", rec.p_twi, 0.0, 1.0);
  check_range("r_TWe", rec.r_twe, -22.5, 22.5);
  check_range("a_TWe", rec.a_twe, 0.0, 45.0);
  check_range("p_TWe", rec.p_twe, 0.0, 1.0);
  if (!(rec.speed > 0.0) || !std::isfinite(rec.speed)) throw DataError("U must be positive");
}

WingAngles kinematic_waveforms(const KinematicRecord& rec, double t) {
  if (!(rec.p_di > 0.0)) throw UsageError("flapping period must be positive");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double cycles = t / rec.p_di;
  return WingAngles{
      rec.a_di * std::sin(two_pi * cycles),
      rec.r_twi + rec.a_twi * std::sin(two_pi * (cycles + rec.p_twi)),
      rec.r_twe + rec.a_twe * std::sin(two_pi * (cycles + rec.p_twe)),
  };
}

AeroFeatures aero_features(const KinematicRecord& rec, const AeroConstants& consts) {
  if (!(rec.speed > 0.0)) throw UsageError("cruise speed must be positive");
  if (!(rec.p_di > 0.0)) throw UsageError("flapping period must be positive");
  const double u_p = rec.speed * rec.p_di;
  const double k = std::numbers::pi * consts.mean_chord / u_p;
  return AeroFeatures{
      rec.speed * consts.mean_chord / consts.viscosity,
      std::sin(deg_to_rad(rec.a_di)) * consts.wingspan / u_p,
      k,
      2.0 * std::abs(deg_to_rad(rec.a_twi)) * k,
      2.0 * std::abs(deg_to_rad(rec.a_twe)) * k,
  };
}

}  // namespace moa

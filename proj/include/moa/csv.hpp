#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "moa/core.hpp"
#include "moa/problems.hpp"

namespace moa {

/// Column layout of a front CSV file:
///   run,generation,evaluation,<parameter...>,<objective>[min|max]...
/// Objectives are written in their physical orientation with round-trip precision.
struct FrontTable {
  std::vector<std::string> parameter_names;
  std::vector<std::string> objective_names;
  std::vector<Sense> senses;
  std::vector<Solution> rows;  // objectives in internal orientation
  /// Columns set aside by name (for example a label column), one value per row.
  std::map<std::string, std::vector<std::string>> extra;
};

std::string front_csv(const Front& front, const std::vector<std::string>& parameter_names,
                      const std::vector<std::string>& objective_names,
                      const std::vector<Sense>& senses);

/// Columns named in `set_aside` are kept out of the parameters and returned in `extra`.
FrontTable parse_front_csv(const std::string& text, const std::vector<std::string>& set_aside = {},
                           const std::string& source = "<csv>");
FrontTable read_front_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& set_aside = {});

/// Rows with columns a_DI,p_DI,r_TWi,a_TWi,p_TWi,r_TWe,a_TWe,p_TWe,U in any order.
std::vector<KinematicRecord> read_kinematics_csv(const std::filesystem::path& path);
std::vector<KinematicRecord> parse_kinematics_csv(const std::string& text,
                                                  const std::string& source = "<csv>");
std::string aero_features_csv(const std::vector<KinematicRecord>& records,
                              const AeroConstants& consts = {});

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace moa

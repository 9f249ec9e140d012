#include "moa/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "moa/config.hpp"
#include "moa/errors.hpp"

namespace moa {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> rows_of(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

double cell_number(const std::string& cell, const std::string& source, std::size_t line,
                   const std::string& column) {
  try {
    return parse_double(cell, column);
  } catch (const ConfigError& e) {
    throw DataError(source + ":" + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  // Double-quoted cells may contain commas; "" inside quotes is a literal quote.
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false, was_quoted = false;
  auto flush = [&] {
    if (was_quoted) {
      cells.push_back(cell);
    } else {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    cell.clear();
    was_quoted = false;
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"' && cell.find_first_not_of(" \t") == std::string::npos) {
      cell.clear();
      quoted = was_quoted = true;
    } else if (ch == ',') {
      flush();
    } else if (!(was_quoted && (ch == ' ' || ch == '\t'))) {
      cell += ch;
    }
  }
  if (!line.empty()) flush();
  return cells;
}

std::string front_csv(const Front& front, const std::vector<std::string>& parameter_names,
                      const std::vector<std::string>& objective_names,
                      const std::vector<Sense>& senses) {
  std::ostringstream os;
  os << "run,generation,evaluation";
  for (const auto& p : parameter_names) os << ',' << p;
  for (std::size_t j = 0; j < objective_names.size(); ++j) {
    os << ',' << objective_names[j] << '[' << to_string(senses[j]) << ']';
  }
  os << '\n';
  for (const auto& s : front) {
    os << s.provenance.run << ',' << s.provenance.generation << ',' << s.provenance.evaluation;
    // Synthetic points carry no parameters; leave those cells empty.
    for (std::size_t i = 0; i < parameter_names.size(); ++i) {
      os << ',';
      if (i < s.parameters.size()) os << format_real(s.parameters[i]);
    }
    for (double v : to_physical(senses, s.objectives.values())) os << ',' << format_real(v);
    os << '\n';
  }
  return os.str();
}

FrontTable parse_front_csv(const std::string& text, const std::vector<std::string>& set_aside,
                           const std::string& source) {
  const auto rows = rows_of(text);
  if (rows.empty()) throw DataError(source + ": empty CSV");
  const auto& header = rows.front();

  enum class Kind { run, generation, evaluation, parameter, objective, extra };
  std::vector<Kind> kinds;
  FrontTable table;
  for (const auto& name : header) {
    if (name == "run") {
      kinds.push_back(Kind::run);
    } else if (name == "generation") {
      kinds.push_back(Kind::generation);
    } else if (name == "evaluation") {
      kinds.push_back(Kind::evaluation);
    } else if (std::find(set_aside.begin(), set_aside.end(), name) != set_aside.end()) {
      kinds.push_back(Kind::extra);
      table.extra[name];
    } else if (name.size() > 5 && name.back() == ']' && name.find('[') != std::string::npos) {
      const auto open = name.rfind('[');
      try {
        table.senses.push_back(parse_sense(name.substr(open + 1, name.size() - open - 2)));
      } catch (const UsageError& e) {
        throw DataError(source + ":1: column '" + name + "': " + e.what());
      }
      table.objective_names.push_back(name.substr(0, open));
      kinds.push_back(Kind::objective);
    } else {
      table.parameter_names.push_back(name);
      kinds.push_back(Kind::parameter);
    }
  }
  for (const auto& want : set_aside) {
    if (!table.extra.count(want)) throw DataError(source + ": no column named '" + want + "'");
  }
  if (table.objective_names.size() < 2) {
    throw DataError(source + ": need at least two objective columns named like 'f1[min]'");
  }

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t line = r + 1;
    if (row.size() != header.size()) {
      throw DataError(source + ":" + std::to_string(line) + ": expected " + std::to_string(header.size()) +
                      " cells, got " + std::to_string(row.size()));
    }
    Solution s;
    std::vector<double> params, physical;
    for (std::size_t c = 0; c < row.size(); ++c) {
      switch (kinds[c]) {
        case Kind::run: s.provenance.run = static_cast<std::int64_t>(cell_number(row[c], source, line, header[c])); break;
        case Kind::generation: s.provenance.generation = static_cast<std::int64_t>(cell_number(row[c], source, line, header[c])); break;
        case Kind::evaluation: s.provenance.evaluation = static_cast<std::int64_t>(cell_number(row[c], source, line, header[c])); break;
        case Kind::parameter:
          if (!row[c].empty()) params.push_back(cell_number(row[c], source, line, header[c]));
          break;
        case Kind::objective: physical.push_back(cell_number(row[c], source, line, header[c])); break;
        case Kind::extra: table.extra[header[c]].push_back(row[c]); break;
      }
    }
    s.parameters = ParameterVector(std::move(params));
    try {
      s.objectives = ObjectiveVector(to_internal(table.senses, physical));
    } catch (const UsageError& e) {
      throw DataError(source + ":" + std::to_string(line) + ": " + e.what());
    }
    table.rows.push_back(std::move(s));
  }
  return table;
}

FrontTable read_front_csv(const std::filesystem::path& path, const std::vector<std::string>& set_aside) {
  return parse_front_csv(read_file(path), set_aside, path.string());
}

std::vector<KinematicRecord> parse_kinematics_csv(const std::string& text, const std::string& source) {
  const auto rows = rows_of(text);
  if (rows.empty()) throw DataError(source + ": empty CSV");
  const auto& header = rows.front();
  const std::vector<std::pair<std::string, double KinematicRecord::*>> fields = {
      {"a_DI", &KinematicRecord::a_di},   {"p_DI", &KinematicRecord::p_di},
      {"r_TWi", &KinematicRecord::r_twi}, {"a_TWi", &KinematicRecord::a_twi},
      {"p_TWi", &KinematicRecord::p_twi}, {"r_TWe", &KinematicRecord::r_twe},
      {"a_TWe", &KinematicRecord::a_twe}, {"p_TWe", &KinematicRecord::p_twe},
      {"U", &KinematicRecord::speed}};
  std::vector<std::size_t> column(fields.size());
  for (std::size_t f = 0; f < fields.size(); ++f) {
    auto it = std::find(header.begin(), header.end(), fields[f].first);
    if (it == header.end()) throw DataError(source + ":1: missing column '" + fields[f].first + "'");
    column[f] = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<KinematicRecord> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw DataError(source + ":" + std::to_string(r + 1) + ": wrong number of cells");
    }
    KinematicRecord rec;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      rec.*(fields[f].second) = cell_number(row[column[f]], source, r + 1, fields[f].first);
    }
    try {
      validate(rec);
    } catch (const DataError& e) {
      throw DataError(source + ":" + std::to_string(r + 1) + ": " + e.what());
    }
    out.push_back(rec);
  }
  return out;
}

std::vector<KinematicRecord> read_kinematics_csv(const std::filesystem::path& path) {
  return parse_kinematics_csv(read_file(path), path.string());
}

std::string aero_features_csv(const std::vector<KinematicRecord>& records, const AeroConstants& consts) {
  std::ostringstream os;
  os << "U,Re,St,k,kappa1,kappa2\n";
  for (const auto& rec : records) {
    const auto f = aero_features(rec, consts);
    os << format_real(rec.speed) << ',' << format_real(f.reynolds) << ',' << format_real(f.strouhal) << ','
       << format_real(f.reduced_frequency) << ',' << format_real(f.internal_twist_frequency) << ','
       << format_real(f.external_twist_frequency) << '\n';
  }
  return os.str();
}

}  // namespace moa

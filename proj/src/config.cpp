#include "moa/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "moa/errors.hpp"

namespace moa {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(const std::string& text, const std::string& field) {
  const auto t = trim(text);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc{} || ptr != end) {
    if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
    throw ConfigError(field + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& text, const std::string& field) {
  const auto t = trim(text);
  std::uint64_t v = 0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (t.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError(field + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& field) {
  const auto t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(field + ": expected true/false, got '" + text + "'");
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const auto text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const std::string anchor = source + ":" + std::to_string(line) + ": ";
    if (eq == std::string::npos) throw ConfigError(anchor + "expected 'key = value'");
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(anchor + "empty key");
    if (cfg.entries_.count(key)) {
      throw ConfigError(anchor + "duplicate key '" + key + "' (first set on line " +
                        std::to_string(cfg.entries_[key].line) + ")");
    }
    cfg.entries_[key] = Entry{value, line};
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  return parse(in, path.string());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

std::string KeyValueConfig::where(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return source_;
  return source_ + ":" + std::to_string(it->second.line);
}

std::map<std::string, std::string> KeyValueConfig::section(const std::string& prefix) const {
  std::map<std::string, std::string> out;
  const auto p = prefix + ".";
  for (const auto& [k, e] : entries_) {
    if (k.rfind(p, 0) == 0) out[k.substr(p.size())] = e.value;
  }
  return out;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    return parse_double(*v, key);
  } catch (const ConfigError& e) {
    throw ConfigError(where(key) + ": " + e.what());
  }
}

std::uint64_t KeyValueConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    return parse_uint(*v, key);
  } catch (const ConfigError& e) {
    throw ConfigError(where(key) + ": " + e.what());
  }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    return parse_bool(*v, key);
  } catch (const ConfigError& e) {
    throw ConfigError(where(key) + ": " + e.what());
  }
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

void KeyValueConfig::reject_unknown(const std::set<std::string>& keys,
                                    const std::set<std::string>& prefixes) const {
  for (const auto& [k, e] : entries_) {
    if (keys.count(k)) continue;
    const bool under = std::any_of(prefixes.begin(), prefixes.end(),
                                   [&](const std::string& p) { return k.rfind(p + ".", 0) == 0; });
    if (!under) {
      throw ConfigError(source_ + ":" + std::to_string(e.line) + ": unknown key '" + k + "'");
    }
  }
}

StudyConfig study_config_from(const KeyValueConfig& kv) {
  kv.reject_unknown(
      {"problem.name", "study.runs", "study.seed", "study.output", "study.jobs",
       "study.threshold", "study.epsilon", "algorithm.population_size", "algorithm.generations",
       "algorithm.crossover_probability", "algorithm.mutation_probability", "algorithm.sbx_eta",
       "algorithm.mutation_eta", "algorithm.parallel_evaluation", "analysis.k",
       "analysis.p_norm", "analysis.balance_factor", "analysis.label_column",
       "analysis.cart.max_depth", "analysis.cart.min_samples_leaf",
       "analysis.cart.min_impurity_decrease", "analysis.neighborhood.objective",
       "analysis.neighborhood.tolerance", "analysis.neighborhood.sense"},
      {"problem", "space"});

  StudyConfig c;
  auto name = kv.get("problem.name");
  if (!name) throw ConfigError(kv.where("problem.name") + ": missing required key 'problem.name'");
  c.problem_name = *name;
  c.problem_settings = kv.section("problem");
  c.problem_settings.erase("name");

  for (const auto& [key, value] : kv.section("space")) {
    const auto dot = key.find('.');
    const std::string full = "space." + key;
    const std::string anchor = kv.where(full) + ": ";
    if (dot == std::string::npos) throw ConfigError(anchor + "expected space.<index>.lo|hi");
    const auto attr = key.substr(dot + 1);
    std::size_t index = 0;
    try {
      index = parse_uint(key.substr(0, dot), full);
    } catch (const ConfigError& e) {
      throw ConfigError(anchor + e.what());
    }
    auto it = std::find_if(c.space_overrides.begin(), c.space_overrides.end(),
                           [&](const SpaceOverride& o) { return o.index == index; });
    if (it == c.space_overrides.end()) {
      c.space_overrides.push_back(SpaceOverride{index, {}, {}});
      it = std::prev(c.space_overrides.end());
    }
    if (attr == "lo") {
      it->lo = kv.get_double(full, 0.0);
    } else if (attr == "hi") {
      it->hi = kv.get_double(full, 0.0);
    } else {
      throw ConfigError(anchor + "unknown key '" + full + "'");
    }
  }

  c.runs = kv.get_uint("study.runs", 1);
  if (c.runs < 1) throw ConfigError(kv.where("study.runs") + ": study.runs must be >= 1");
  c.master_seed = kv.get_uint("study.seed", 0);
  c.output_dir = kv.get_string("study.output", "study");
  c.jobs = kv.get_uint("study.jobs", 1);
  if (c.jobs < 1) throw ConfigError(kv.where("study.jobs") + ": study.jobs must be >= 1");
  c.convergence_threshold = kv.get_double("study.threshold", 0.05);
  if (!(c.convergence_threshold > 0.0 && c.convergence_threshold < 1.0)) {
    throw ConfigError(kv.where("study.threshold") + ": study.threshold must lie in (0, 1)");
  }
  if (kv.has("study.epsilon")) {
    c.epsilon = kv.get_double("study.epsilon", 0.0);
    if (!(*c.epsilon > 0.0)) throw ConfigError(kv.where("study.epsilon") + ": study.epsilon must be positive");
  }

  auto& a = c.algorithm;
  a.population_size = kv.get_uint("algorithm.population_size", a.population_size);
  a.generations = kv.get_uint("algorithm.generations", a.generations);
  a.crossover_probability = kv.get_double("algorithm.crossover_probability", a.crossover_probability);
  a.mutation_probability = kv.get_double("algorithm.mutation_probability", a.mutation_probability);
  a.sbx_eta = kv.get_double("algorithm.sbx_eta", a.sbx_eta);
  a.mutation_eta = kv.get_double("algorithm.mutation_eta", a.mutation_eta);
  a.evaluation = kv.get_bool("algorithm.parallel_evaluation", true) ? Exec::parallel : Exec::serial;
  try {
    a.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(kv.where("algorithm.population_size") + ": " + e.what());
  }

  auto& an = c.analysis;
  an.k = kv.get_uint("analysis.k", an.k);
  if (auto p = kv.get("analysis.p_norm")) {
    try {
      an.p_norm = parse_pnorm(*p);
    } catch (const UsageError& e) {
      throw ConfigError(kv.where("analysis.p_norm") + ": " + e.what());
    }
  }
  an.balance_factor = kv.get_uint("analysis.balance_factor", an.balance_factor);
  an.label_column = kv.get_string("analysis.label_column", "");
  an.cart.max_depth = kv.get_uint("analysis.cart.max_depth", an.cart.max_depth);
  an.cart.min_samples_leaf = kv.get_uint("analysis.cart.min_samples_leaf", an.cart.min_samples_leaf);
  an.cart.min_impurity_decrease =
      kv.get_double("analysis.cart.min_impurity_decrease", an.cart.min_impurity_decrease);
  an.neighborhood_objective = kv.get_uint("analysis.neighborhood.objective", 0);
  an.neighborhood_tolerance = kv.get_double("analysis.neighborhood.tolerance", 0.05);
  if (auto s = kv.get("analysis.neighborhood.sense")) {
    try {
      an.neighborhood_sense = parse_sense(*s);
    } catch (const UsageError& e) {
      throw ConfigError(kv.where("analysis.neighborhood.sense") + ": " + e.what());
    }
  }

  // Resolve the problem now so unknown names and bad settings fail at load time.
  try {
    auto problem = make_problem(c.problem_name, c.problem_settings);
    effective_space(*problem, c.space_overrides);
  } catch (const ConfigError& e) {
    throw ConfigError(kv.where("problem.name") + ": " + e.what());
  }
  return c;
}

StudyConfig load_study_config(const std::filesystem::path& path) {
  return study_config_from(KeyValueConfig::load(path));
}

SearchSpace effective_space(const Problem& problem, const std::vector<SpaceOverride>& overrides) {
  auto bounds = problem.space().bounds();
  for (const auto& o : overrides) {
    if (o.index >= bounds.size()) {
      throw ConfigError("space." + std::to_string(o.index) + ": problem '" + problem.name() +
                        "' has only " + std::to_string(bounds.size()) + " parameters");
    }
    auto& b = bounds[o.index];
    const double lo = o.lo.value_or(b.lo);
    const double hi = o.hi.value_or(b.hi);
    if (!(lo >= b.lo && hi <= b.hi && lo < hi)) {
      throw ConfigError("space." + std::to_string(o.index) + ": override must narrow the problem bounds [" +
                        std::to_string(b.lo) + ", " + std::to_string(b.hi) + "]");
    }
    b.lo = lo;
    b.hi = hi;
  }
  return SearchSpace(std::move(bounds));
}

}  // namespace moa

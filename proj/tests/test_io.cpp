#include <gtest/gtest.h>

#include <sstream>

#include "moa/archive.hpp"
#include "moa/config.hpp"
#include "moa/csv.hpp"
#include "moa/errors.hpp"
#include "oracles.hpp"
#include "tempdir.hpp"

using namespace moa;

namespace {

KeyValueConfig kv(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in, "study.cfg");
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(FormatReal, RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, 123456.789}) {
    EXPECT_EQ(std::stod(format_real(v)), v);
  }
  EXPECT_EQ(format_real(0.5), "0.5");
}

TEST(KeyValueConfig, ParsesCommentsAndSections) {
  const auto c = kv("# study\nproblem.name = wta\n\nproblem.samples = 50  # fewer\nstudy.runs=3\n");
  EXPECT_EQ(c.get_string("problem.name", ""), "wta");
  EXPECT_EQ(c.get_uint("problem.samples", 0), 50u);
  EXPECT_EQ(c.section("problem").size(), 2u);
  EXPECT_EQ(c.where("study.runs"), "study.cfg:5");
}

TEST(KeyValueConfig, ErrorsAreLineAnchored) {
  EXPECT_NE(error_of([] { kv("a = 1\na = 2\n"); }).find("study.cfg:2"), std::string::npos);
  EXPECT_NE(error_of([] { kv("just words\n"); }).find("study.cfg:1"), std::string::npos);
  const auto c = kv("study.runs = many\n");
  EXPECT_NE(error_of([&] { c.get_uint("study.runs", 1); }).find("study.cfg:1"), std::string::npos);
}

TEST(StudyConfig, DefaultsAndOverrides) {
  const auto c = study_config_from(kv(
      "problem.name = synthetic\nstudy.runs = 4\nstudy.seed = 10\nalgorithm.population_size = 20\n"
      "algorithm.generations = 5\nanalysis.p_norm = inf\nstudy.epsilon = 0.5\n"));
  EXPECT_EQ(c.problem_name, "synthetic");
  EXPECT_EQ(c.runs, 4u);
  EXPECT_EQ(c.run_seed(3), 13u);
  EXPECT_EQ(c.algorithm.population_size, 20u);
  EXPECT_EQ(c.algorithm.crossover_probability, 0.9);
  EXPECT_EQ(c.analysis.p_norm, PNorm::infinity);
  EXPECT_EQ(c.epsilon, 0.5);
  EXPECT_EQ(c.convergence_threshold, 0.05);
}

TEST(StudyConfig, Errors) {
  const auto unknown = error_of([] { study_config_from(kv("# x\nproblem.name = rocket\n")); });
  EXPECT_NE(unknown.find("problem.name"), std::string::npos);
  EXPECT_NE(unknown.find("study.cfg:2"), std::string::npos);
  EXPECT_NE(error_of([] { study_config_from(kv("problem.name = synthetic\nstudy.rnus = 3\n")); }).find("study.rnus"),
            std::string::npos);
  EXPECT_FALSE(error_of([] { study_config_from(kv("problem.name = synthetic\nstudy.runs = 0\n")); }).empty());
  EXPECT_FALSE(error_of([] { study_config_from(kv("problem.name = synthetic\nalgorithm.population_size = 5\n")); }).empty());
  EXPECT_FALSE(error_of([] { study_config_from(kv("study.runs = 2\n")); }).empty());
  EXPECT_FALSE(error_of([] { study_config_from(kv("problem.name = synthetic\nproblem.samples = 3\n")); }).empty());
}

TEST(StudyConfig, SpaceOverridesMustNarrow) {
  const auto c = study_config_from(kv("problem.name = synthetic\nspace.0.lo = 0.25\n"));
  const auto p = make_problem("synthetic", {});
  const auto s = effective_space(*p, c.space_overrides);
  EXPECT_EQ(s[0].lo, 0.25);
  EXPECT_EQ(s[0].hi, 1.0);
  EXPECT_THROW(study_config_from(kv("problem.name = synthetic\nspace.0.hi = 2\n")), ConfigError);
  EXPECT_THROW(effective_space(*p, {SpaceOverride{0, -1.0, {}}}), ConfigError);
}

TEST(FrontCsv, RoundTripInPhysicalOrientation) {
  const std::vector<Sense> senses{Sense::minimize, Sense::maximize};
  std::vector<Solution> members{
      {ParameterVector{0.1, 0.2}, ObjectiveVector{-1.0 / 3.0, 2.0}, {0, 4, 17}},
      {ParameterVector{0.3, 0.4}, ObjectiveVector{-2.0, 3.0}, {1, 5, 40}},
  };
  members.push_back(synthetic_point(ObjectiveVector{-3.0, 4.0}));
  const auto front = Front::from_members(members);
  const auto text = front_csv(front, {"a", "b"}, {"power", "speed"}, senses);
  EXPECT_EQ(text.substr(0, text.find('\n')), "run,generation,evaluation,a,b,power[min],speed[max]");
  EXPECT_NE(text.find("0.3333333333333333"), std::string::npos);  // physical, full precision
  EXPECT_NE(text.find("-1,0,0,,,3,4"), std::string::npos);

  const auto table = parse_front_csv(text);
  EXPECT_EQ(table.parameter_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(table.senses, senses);
  ASSERT_EQ(table.rows.size(), 3u);
  EXPECT_EQ(table.rows[0], members[0]);
  EXPECT_EQ(table.rows[1], members[1]);
  EXPECT_EQ(table.rows[2].objectives, members[2].objectives);
}

TEST(FrontCsv, Errors) {
  EXPECT_THROW(parse_front_csv(""), DataError);
  EXPECT_THROW(parse_front_csv("run,generation,evaluation,x,f1[min]\n0,0,0,1,2\n"), DataError);
  EXPECT_THROW(parse_front_csv("run,generation,evaluation,x,f1[min],f2[min]\n0,0,0,1,2\n"), DataError);
  EXPECT_THROW(parse_front_csv("run,generation,evaluation,x,f1[min],f2[min]\n0,0,0,1,abc,3\n"), DataError);
  EXPECT_THROW(parse_front_csv("run,generation,evaluation,x,f1[min],f2[min]\n0,0,0,1,2,3\n", {"label"}), DataError);
  const auto t = parse_front_csv("run,generation,evaluation,x,label,f1[min],f2[min]\n0,0,0,1,P,2,3\n", {"label"});
  EXPECT_EQ(t.extra.at("label"), (std::vector<std::string>{"P"}));
  EXPECT_EQ(t.parameter_names, (std::vector<std::string>{"x"}));
}

TEST(KinematicsCsv, ParseAndFeatures) {
  const std::string text =
      "U,a_DI,p_DI,r_TWi,a_TWi,p_TWi,r_TWe,a_TWe,p_TWe\n7.5,20,0.5,-5,10,0.1,2,8,0.2\n37.3,0,0.2,0,0,0,0,0,0\n";
  const auto recs = parse_kinematics_csv(text);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].speed, 7.5);
  EXPECT_EQ(recs[0].r_twi, -5.0);
  const auto csv = aero_features_csv(recs);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "U,Re,St,k,kappa1,kappa2");
  const auto first = csv.substr(csv.find('\n') + 1);
  const auto cells = split_csv_line(first.substr(0, first.find('\n')));
  ASSERT_EQ(cells.size(), 6u);
  EXPECT_EQ(cells[0], "7.5");
  EXPECT_NEAR(std::stod(cells[1]), 7.5 * 0.2 / 1.5e-5, 1e-6);
  EXPECT_THROW(parse_kinematics_csv("U,a_DI\n1,2\n"), DataError);
  EXPECT_THROW(parse_kinematics_csv(
                   "U,a_DI,p_DI,r_TWi,a_TWi,p_TWi,r_TWe,a_TWe,p_TWe\n7.5,90,0.5,-5,10,0.1,2,8,0.2\n"),
               DataError);
}

TEST(SplitCsvLine, Quotes) {
  EXPECT_EQ(split_csv_line("a,\"b,c\",d"), (std::vector<std::string>{"a", "b,c", "d"}));
  EXPECT_EQ(split_csv_line("a,,"), (std::vector<std::string>{"a", "", ""}));
}

TEST(Archive, RoundTrip) {
  TempDir dir;
  const auto problem = make_problem("wta", {{"samples", "20"}, {"eval_seed", "3"}});
  RunArchive a;
  a.study = {{"runs", 1}};
  a.problem = ProblemInfo::describe(*problem, problem->space());
  a.algorithm.seed = 99;
  a.run_index = 2;
  a.seed = 99;
  a.evaluations = 1234;
  a.nonfinite_evaluations = 1;
  a.evaluation_warnings = 7;
  a.wall_clock_seconds = 0.25;
  a.front = Front::from_members({{ParameterVector{0.1, 0.2, 0.3, 0.4}, ObjectiveVector{-0.1, -0.7}, {2, 3, 4}},
                                 {ParameterVector{0.5, 0.6, 0.7, 0.8}, ObjectiveVector{-0.2, -0.3}, {2, 5, 6}}});
  const auto path = dir / "run.json";
  save_archive(path, a);
  const auto b = load_archive(path);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b.problem.rebuild()->settings(), problem->settings());
  EXPECT_FALSE(is_manifest_file(path));

  save_archive(path, b);
  const auto first = slurp(path);
  save_archive(path, load_archive(path));
  EXPECT_EQ(slurp(path), first);
}

TEST(Archive, RejectsGarbage) {
  TempDir dir;
  EXPECT_THROW(load_archive(dir.write("bad.json", "{not json")), DataError);
  EXPECT_THROW(load_archive(dir.write("other.json", "{\"format\": \"something\"}")), DataError);
  EXPECT_THROW(load_archive(dir / "missing.json"), DataError);
}

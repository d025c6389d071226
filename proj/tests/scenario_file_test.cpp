#include <gtest/gtest.h>

#include <sstream>

#include "quizreward/error.hpp"
#include "quizreward/scenario_file.hpp"

namespace quizreward {
namespace {

const std::string kData = QUIZREWARD_TEST_DATA;

std::string parse_error(const std::string& file) {
  try {
    parse_scenario(kData + "/" + file);
  } catch (const QuizError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    return e.what();
  }
  return "";
}

TEST(ParseScenario, ValidFiles) {
  const Scenario case2 = parse_scenario(kData + "/case2.json");
  EXPECT_EQ(case2.config.cp, 0.75);
  EXPECT_EQ(case2.config.quiz_case, QuizCase::Case2);
  EXPECT_EQ(case2.num_players, 10000);
  EXPECT_EQ(case2.trials, 100);
  EXPECT_EQ(case2.seed, 42u);

  const Scenario case3 = parse_scenario(kData + "/case3.json");
  EXPECT_EQ(case3.config.fee, Money::units(1));  // integer micro-units
  EXPECT_EQ(case3.config.user_cost(), parse_money("0.1"));
  EXPECT_TRUE(std::holds_alternative<population::Uniform>(case3.population));
}

TEST(ParseScenario, Errors) {
  EXPECT_EQ(parse_error("bad_cp.json"), "config.cp: must lie in (0,1]");
  EXPECT_NE(parse_error("case1_partial_fee.json").find("Case1 requires cp = 1"), std::string::npos);
  EXPECT_EQ(parse_error("unknown_field.json"), "config.feee: unknown field");
  const std::string malformed = parse_error("malformed.json");
  EXPECT_NE(malformed.find("malformed JSON"), std::string::npos);
  EXPECT_NE(malformed.find("line 4"), std::string::npos) << malformed;
  EXPECT_NE(parse_error("does_not_exist.json").find("cannot read"), std::string::npos);
}

TEST(ParseScenario, PopulationAndSimulationSections) {
  const auto err = [](const char* text) -> std::string {
    try {
      parse_scenario_text(text);
    } catch (const QuizError& e) {
      return e.what();
    }
    return "";
  };
  const std::string config = R"("config":{"case":2,"ipp":"100","fee":"1","ratio":0.9695})";
  EXPECT_EQ(err(("{" + config + R"(,"population":{"kind":"bernoulli","p_win":2},"simulation":{"num_players":5}})").c_str()),
            "population.p_win: must lie in [0,1]");
  EXPECT_EQ(err(("{" + config + R"(,"population":{"kind":"zipf"},"simulation":{"num_players":5}})").c_str()),
            "population.kind: must be one of fixed, uniform, truncated_normal, bernoulli");
  EXPECT_EQ(err(("{" + config + R"(,"population":{"kind":"fixed","value":1},"simulation":{"num_players":0}})").c_str()),
            "simulation.num_players: must be a positive integer");
  EXPECT_EQ(err(("{" + config + R"(,"population":{"kind":"fixed","value":1},"simulation":{"num_players":3,"seed":-1}})").c_str()),
            "simulation.seed: must be an unsigned 64-bit integer");
  EXPECT_EQ(err(("{" + config + R"(,"population":{"kind":"fixed","value":1},"simulation":{"num_players":3},"extra":{}})").c_str()),
            "scenario.extra: unknown field");
}

TEST(ScenarioJson, CanonicalFormRoundTripsAndHashes) {
  const Scenario s = parse_scenario(kData + "/case3.json");
  const Scenario again = scenario_from_json(scenario_to_json(s));
  EXPECT_EQ(scenario_to_json(again), scenario_to_json(s));
  EXPECT_EQ(scenario_hash(again), scenario_hash(s));
  Scenario other = s;
  other.seed += 1;
  EXPECT_NE(scenario_hash(other), scenario_hash(s));
  EXPECT_EQ(scenario_hash(s).rfind("fnv1a64:", 0), 0u);
}

TEST(ReportJson, OwnOutputParsesBackIdentically) {
  Scenario s = parse_scenario(kData + "/case3.json");
  const TrialSummary summary = run_trials(s);
  const nlohmann::json doc = simulation_document(s, summary);
  EXPECT_EQ(doc["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(doc["seed"], s.seed);
  EXPECT_EQ(doc["scenario_hash"], scenario_hash(s));
  const auto reparsed = nlohmann::json::parse(doc.dump());
  ASSERT_EQ(reparsed["reports"].size(), summary.reports.size());
  for (std::size_t i = 0; i < summary.reports.size(); ++i) {
    EXPECT_EQ(report_from_json(reparsed["reports"][i]), summary.reports[i]);
  }
  EXPECT_EQ(scenario_from_json(reparsed["scenario"]).config, s.config);
  const auto& payout = reparsed["reports"][0]["total_payout"];
  EXPECT_EQ(parse_money(payout["decimal"].get<std::string>()).micros(), payout["micros"].get<std::int64_t>());
}

TEST(SweepCsv, HeaderAndErrorRows) {
  const Scenario s = Scenario::baseline(QuizCase::Case2, 200, 2);
  const std::vector<SweepParameter> grid = {parse_sweep_parameter("cp=0.5:1.5:0.5")};
  const auto rows = sweep(s, grid);
  std::ostringstream out;
  write_sweep_csv(out, grid, rows);
  std::istringstream lines(out.str());
  std::string header, line;
  std::getline(lines, header);
  EXPECT_EQ(header,
            "cp,capacity,trials,winners_mean,winners_std,winners_min,winners_max,"
            "registrations_mean,registrations_std,registrations_min,registrations_max,"
            "profit_mean,profit_std,profit_min,profit_max,error");
  const auto columns = [](const std::string& l) {
    std::ptrdiff_t n = 1;
    bool quoted = false;
    for (char c : l) {
      if (c == '"') quoted = !quoted;
      if (c == ',' && !quoted) ++n;
    }
    return n;
  };
  std::vector<std::string> body;
  while (std::getline(lines, line)) body.push_back(line);
  ASSERT_EQ(body.size(), 3u);
  EXPECT_EQ(body[0].substr(0, 7), "0.5,59,");
  EXPECT_EQ(body[1].substr(0, 5), "1,37,");
  EXPECT_NE(body[2].find("config.cp: must lie in (0,1]"), std::string::npos);
  for (const auto& l : body) EXPECT_EQ(columns(l), columns(header)) << l;
}

}  // namespace
}  // namespace quizreward

#include "quizreward/scenario_file.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "quizreward/error.hpp"
#include "quizreward/event_log.hpp"

namespace quizreward {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  fail(ErrorKind::Validation, path + ": " + what);
}

void reject_unknown(const json& object, const std::string& path,
                    std::initializer_list<std::string_view> known) {
  if (!object.is_object()) invalid(path, "expected an object");
  for (const auto& [key, value] : object.items()) {
    bool found = false;
    for (auto k : known) found = found || k == key;
    if (!found) invalid(path + "." + key, "unknown field");
  }
}

const json& required(const json& object, const std::string& path, const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) invalid(path + "." + key, "missing required field");
  return *it;
}

double number(const json& object, const std::string& path, const char* key) {
  const json& v = required(object, path, key);
  if (!v.is_number()) invalid(path + "." + key, "expected a number");
  return v.get<double>();
}

std::int64_t positive_integer(const json& object, const std::string& path, const char* key) {
  const json& v = required(object, path, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    invalid(path + "." + key, "must be a positive integer");
  }
  return v.get<std::int64_t>();
}

PopulationModel population_from_json(const json& p) {
  const std::string path = "population";
  if (!p.is_object()) invalid(path, "expected an object");
  const json& kind_value = required(p, path, "kind");
  if (!kind_value.is_string()) invalid(path + ".kind", "expected a string");
  const auto kind = kind_value.get<std::string>();
  PopulationModel model;
  if (kind == "fixed") {
    reject_unknown(p, path, {"kind", "value"});
    model = population::FixedScore{number(p, path, "value")};
  } else if (kind == "uniform") {
    reject_unknown(p, path, {"kind", "low", "high"});
    model = population::Uniform{number(p, path, "low"), number(p, path, "high")};
  } else if (kind == "truncated_normal") {
    reject_unknown(p, path, {"kind", "mean", "stddev"});
    model = population::TruncatedNormal{number(p, path, "mean"), number(p, path, "stddev")};
  } else if (kind == "bernoulli") {
    reject_unknown(p, path, {"kind", "p_win"});
    model = population::Bernoulli{number(p, path, "p_win")};
  } else {
    invalid(path + ".kind", "must be one of fixed, uniform, truncated_normal, bernoulli");
  }
  validate_population(model);
  return model;
}

json population_to_json(const PopulationModel& model) {
  if (const auto* m = std::get_if<population::FixedScore>(&model)) {
    return json{{"kind", "fixed"}, {"value", m->value}};
  }
  if (const auto* m = std::get_if<population::Uniform>(&model)) {
    return json{{"kind", "uniform"}, {"low", m->low}, {"high", m->high}};
  }
  if (const auto* m = std::get_if<population::TruncatedNormal>(&model)) {
    return json{{"kind", "truncated_normal"}, {"mean", m->mean}, {"stddev", m->stddev}};
  }
  const auto& m = std::get<population::Bernoulli>(model);
  return json{{"kind", "bernoulli"}, {"p_win", m.p_win}};
}

RunEnd run_end_from_string(const std::string& s) {
  for (auto end : {RunEnd::FloorReached, RunEnd::PoolInsufficient, RunEnd::PlayersExhausted,
                   RunEnd::CapReached}) {
    if (s == to_string(end)) return end;
  }
  invalid("closure_reason", "unknown value \"" + s + "\"");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_number(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  reject_unknown(doc, "scenario", {"config", "population", "simulation"});
  Scenario s;
  s.config = config_from_json(required(doc, "scenario", "config"), "config");
  s.population = population_from_json(required(doc, "scenario", "population"));
  const json& sim = required(doc, "scenario", "simulation");
  reject_unknown(sim, "simulation", {"num_players", "seed", "trials"});
  s.num_players = positive_integer(sim, "simulation", "num_players");
  s.trials = sim.contains("trials") ? positive_integer(sim, "simulation", "trials") : 1;
  if (sim.contains("seed")) {
    const json& seed = sim["seed"];
    if (!seed.is_number_unsigned()) invalid("simulation.seed", "must be an unsigned 64-bit integer");
    s.seed = seed.get<std::uint64_t>();
  }
  s.validate();
  return s;
}

Scenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Validation, std::string("malformed JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Validation, "cannot read scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_text(text.str());
}

json scenario_to_json(const Scenario& s) {
  return json{{"config", config_to_json(s.config)},
              {"population", population_to_json(s.population)},
              {"simulation", {{"num_players", s.num_players}, {"seed", s.seed}, {"trials", s.trials}}}};
}

std::string scenario_hash(const Scenario& scenario) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : scenario_to_json(scenario).dump()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

json money_to_json(Money amount) {
  return json{{"micros", amount.micros()}, {"decimal", amount.to_decimal()}};
}

json money_to_json(SignedMoney amount) {
  return json{{"micros", amount.micros}, {"decimal", amount.to_decimal()}};
}

json report_to_json(const SimReport& r) {
  json trajectory = json::array();
  for (const auto& point : r.threshold_trajectory) trajectory.push_back({point.seq, point.threshold});
  return json{{"seed", r.seed},
              {"capacity", r.capacity},
              {"registrations", r.registrations},
              {"submissions", r.submissions},
              {"winners", r.winners},
              {"total_payout", money_to_json(r.total_payout)},
              {"min_pool", money_to_json(r.min_pool)},
              {"profit", money_to_json(r.profit)},
              {"closure_reason", to_string(r.closure_reason)},
              {"threshold_trajectory", std::move(trajectory)}};
}

SimReport report_from_json(const json& v) {
  SimReport r;
  r.seed = v.at("seed").get<std::uint64_t>();
  r.capacity = v.at("capacity").get<std::int64_t>();
  r.registrations = v.at("registrations").get<std::int64_t>();
  r.submissions = v.at("submissions").get<std::int64_t>();
  r.winners = v.at("winners").get<std::int64_t>();
  r.total_payout = Money::from_micros(v.at("total_payout").at("micros").get<std::int64_t>());
  r.min_pool = Money::from_micros(v.at("min_pool").at("micros").get<std::int64_t>());
  r.profit = SignedMoney{v.at("profit").at("micros").get<std::int64_t>()};
  r.closure_reason = run_end_from_string(v.at("closure_reason").get<std::string>());
  for (const auto& point : v.at("threshold_trajectory")) {
    r.threshold_trajectory.push_back({point.at(0).get<std::int64_t>(), point.at(1).get<double>()});
  }
  return r;
}

json stats_to_json(const Stats& s) {
  return json{{"mean", s.mean}, {"stddev", s.stddev}, {"min", s.min}, {"max", s.max}};
}

json simulation_document(const Scenario& scenario, const TrialSummary& summary) {
  json reports = json::array();
  for (const auto& r : summary.reports) reports.push_back(report_to_json(r));
  return json{{"schema_version", kReportSchemaVersion},
              {"scenario_hash", scenario_hash(scenario)},
              {"seed", scenario.seed},
              {"scenario", scenario_to_json(scenario)},
              {"trials", scenario.trials},
              {"reports", std::move(reports)},
              {"summary",
               {{"winners", stats_to_json(summary.winners)},
                {"registrations", stats_to_json(summary.registrations)},
                {"total_payout", stats_to_json(summary.total_payout)},
                {"profit", stats_to_json(summary.profit)},
                {"success_rate", stats_to_json(summary.success_rate)}}}};
}

void write_sweep_csv(std::ostream& out, std::span<const SweepParameter> grid,
                     std::span<const SweepRow> rows) {
  for (const auto& p : grid) out << p.name << ',';
  out << "capacity,trials";
  for (const char* metric : {"winners", "registrations", "profit"}) {
    for (const char* stat : {"mean", "std", "min", "max"}) out << ',' << metric << '_' << stat;
  }
  out << ",error\n";

  for (const auto& row : rows) {
    for (const auto& [name, value] : row.parameters) out << format_number(value, "%.10g") << ',';
    if (row.summary) {
      out << *row.capacity << ',' << row.summary->reports.size();
      for (const Stats* s : {&row.summary->winners, &row.summary->registrations, &row.summary->profit}) {
        for (double v : {s->mean, s->stddev, s->min, s->max}) out << ',' << format_number(v, "%.6f");
      }
      out << ",\n";
    } else {
      out << ',';
      for (int i = 0; i < 12; ++i) out << ',';
      out << ',' << csv_field(row.error) << '\n';
    }
  }
}

}  // namespace quizreward

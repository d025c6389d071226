// quizreward: inspect reward schedules, optimize the GP ratio, run seeded
// simulations and sweeps, and replay quiz event logs.
//
// Exit codes: 0 success, 1 runtime failure (no viable schedule, corrupt log),
// 2 usage or validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "quizreward/config.hpp"
#include "quizreward/engine.hpp"
#include "quizreward/error.hpp"
#include "quizreward/event_log.hpp"
#include "quizreward/mechanism.hpp"
#include "quizreward/scenario_file.hpp"
#include "quizreward/simulator.hpp"

namespace {

using namespace quizreward;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kUsage = 2;

struct MechanismArgs {
  std::string pool = "100";
  std::string fee = "1";
  double ratio = 0.9695;
  int quiz_case = 1;
  std::optional<double> cp;
};

void add_mechanism_options(CLI::App& cmd, MechanismArgs& args, bool with_ratio) {
  cmd.add_option("--pool", args.pool, "Initial prize pool (decimal)")->capture_default_str();
  cmd.add_option("--fee", args.fee, "Registration fee (decimal)")->capture_default_str();
  if (with_ratio) cmd.add_option("--ratio", args.ratio, "GP common ratio x")->capture_default_str();
  cmd.add_option("--case", args.quiz_case, "Mechanism case (1, 2 or 3)")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  cmd.add_option("--cp", args.cp, "Share of the fee kept by the house (default 1 for Case 1, 0.75 otherwise)");
}

QuizConfig config_from_args(const MechanismArgs& args) {
  QuizConfig config = QuizConfig::baseline(static_cast<QuizCase>(args.quiz_case));
  config.ipp = parse_money(args.pool);
  config.fee = parse_money(args.fee);
  config.ratio = Ratio(args.ratio);
  if (args.cp) config.cp = *args.cp;
  config.validate();
  return config;
}

std::string format_ratio(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

int cmd_schedule(const MechanismArgs& args, bool as_json) {
  const QuizConfig config = config_from_args(args);
  const RewardSchedule schedule = build_schedule(config);
  const Money total = schedule_sum(schedule, schedule.capacity);

  if (as_json) {
    json rewards = json::array();
    for (std::int64_t k = 1; k <= schedule.capacity; ++k) {
      rewards.push_back({{"k", k}, {"reward", money_to_json(nth_reward(schedule, k))}});
    }
    const json doc{{"case", args.quiz_case},
                   {"pool", money_to_json(config.ipp)},
                   {"fee", money_to_json(config.fee)},
                   {"cp", config.cp},
                   {"ratio", schedule.ratio.value()},
                   {"first_term", money_to_json(schedule.first_term)},
                   {"floor", money_to_json(schedule.floor)},
                   {"capacity", schedule.capacity},
                   {"sum", money_to_json(total)},
                   {"rewards", std::move(rewards)}};
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }

  std::cout << "k,reward\n";
  for (std::int64_t k = 1; k <= schedule.capacity; ++k) {
    std::cout << k << ',' << nth_reward(schedule, k).to_decimal() << '\n';
  }
  std::cout << "capacity: " << schedule.capacity << '\n'
            << "sum: " << total.to_decimal() << '\n'
            << "floor: " << schedule.floor.to_decimal() << '\n';
  return kOk;
}

int cmd_optimize(const MechanismArgs& args, double grid_step, bool as_json) {
  const QuizConfig config = config_from_args(args);
  const auto best = optimal_ratio(config.ipp, config.viability_floor(), grid_step);
  if (!best) {
    std::cerr << "no viable schedule: pool " << config.ipp.to_decimal()
              << " cannot fund a first reward above the floor " << config.viability_floor().to_decimal()
              << '\n';
    return kRuntimeFailure;
  }
  if (as_json) {
    const json doc{{"ratio", best->ratio.value()},
                   {"capacity", best->capacity},
                   {"floor", money_to_json(config.viability_floor())},
                   {"grid_step", grid_step},
                   {"plateau",
                    {{"low", best->plateau_low},
                     {"high", best->plateau_high},
                     {"points", best->plateau_points}}}};
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }
  std::cout << "x*: " << format_ratio(best->ratio.value()) << '\n'
            << "n*: " << best->capacity << '\n'
            << "floor: " << config.viability_floor().to_decimal() << '\n'
            << "plateau: [" << format_ratio(best->plateau_low) << ", "
            << format_ratio(best->plateau_high) << "] (" << best->plateau_points
            << " grid points)\n";
  return kOk;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Validation, "cannot write " + path);
  out << text;
}

int cmd_simulate(const std::string& scenario_path, std::optional<std::uint64_t> seed,
                 const std::string& out_path, const std::string& events_path) {
  Scenario scenario = parse_scenario(scenario_path);
  if (seed) scenario.seed = *seed;
  const TrialSummary summary = run_trials(scenario);
  write_text(out_path, simulation_document(scenario, summary).dump(2) + "\n");
  if (!events_path.empty()) {
    const Quiz quiz = simulate_quiz(scenario, scenario.seed);
    std::ostringstream log;
    write_event_log(log, quiz.events());
    write_text(events_path, log.str());
  }
  return kOk;
}

int cmd_sweep(const std::string& scenario_path, std::optional<std::uint64_t> seed,
              const std::vector<std::string>& params, const std::string& out_path) {
  Scenario scenario = parse_scenario(scenario_path);
  if (seed) scenario.seed = *seed;
  std::vector<SweepParameter> grid;
  for (const auto& p : params) grid.push_back(parse_sweep_parameter(p));
  const auto rows = sweep(scenario, grid);
  std::ostringstream csv;
  write_sweep_csv(csv, grid, rows);
  write_text(out_path, csv.str());
  return kOk;
}

int cmd_replay(const std::string& log_path, bool as_json) {
  std::ifstream in(log_path);
  if (!in) fail(ErrorKind::Validation, "cannot read event log " + log_path);
  const auto log = read_event_log(in);
  const Quiz quiz = Quiz::replay(log);
  const Ledger& l = quiz.ledger();
  const PoolState& s = quiz.state();
  const std::string status =
      s.closed ? std::string("closed (") + to_string(*s.closed) + ")" : std::string("open");

  if (as_json) {
    const json doc{{"events", log.size()},
                   {"status", status},
                   {"pool", money_to_json(s.pool)},
                   {"winners", s.next_winner_index - 1},
                   {"registrations", s.registration_count},
                   {"threshold", s.threshold},
                   {"ledger",
                    {{"fees_collected", money_to_json(l.fees_collected)},
                     {"house_retained", money_to_json(l.house_retained)},
                     {"injected_to_pool", money_to_json(l.injected_to_pool)},
                     {"payouts", money_to_json(l.payouts)},
                     {"user_costs", money_to_json(l.user_costs)},
                     {"hosting_cost", money_to_json(l.hosting_cost)}}},
                   {"profit", money_to_json(quiz.profit())}};
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }
  std::cout << "events: " << log.size() << '\n'
            << "status: " << status << '\n'
            << "pool: " << s.pool.to_decimal() << '\n'
            << "winners: " << s.next_winner_index - 1 << '\n'
            << "registrations: " << s.registration_count << '\n'
            << "fees_collected: " << l.fees_collected.to_decimal() << '\n'
            << "house_retained: " << l.house_retained.to_decimal() << '\n'
            << "injected_to_pool: " << l.injected_to_pool.to_decimal() << '\n'
            << "payouts: " << l.payouts.to_decimal() << '\n'
            << "user_costs: " << l.user_costs.to_decimal() << '\n'
            << "hosting_cost: " << l.hosting_cost.to_decimal() << '\n'
            << "profit: " << quiz.profit().to_decimal() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric quiz reward mechanism: schedules, optimizer, simulator, replay"};
  app.require_subcommand(1);

  MechanismArgs mech;
  bool as_json = false;
  double grid_step = 1e-4;
  std::string scenario_path;
  std::string out_path;
  std::string events_path;
  std::string log_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> params;

  auto* schedule = app.add_subcommand("schedule", "Print the reward schedule for a mechanism");
  add_mechanism_options(*schedule, mech, true);
  schedule->add_flag("--json", as_json, "Emit JSON");

  auto* optimize = app.add_subcommand("optimize", "Grid-search the ratio maximizing winner capacity");
  add_mechanism_options(*optimize, mech, false);
  optimize->add_option("--grid-step", grid_step, "Grid resolution for x")->capture_default_str();
  optimize->add_flag("--json", as_json, "Emit JSON");

  auto* simulate = app.add_subcommand("simulate", "Run a seeded Monte Carlo scenario");
  simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  simulate->add_option("--seed", seed, "Override the scenario seed");
  simulate->add_option("--out", out_path, "Report path (default: stdout)");
  simulate->add_option("--events", events_path, "Also write the first trial's event log (JSONL)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep parameters and write a CSV table");
  sweep_cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  sweep_cmd->add_option("--param", params, "NAME=LO:HI:STEP (repeatable)")->required();
  sweep_cmd->add_option("--seed", seed, "Override the scenario seed");
  sweep_cmd->add_option("--out", out_path, "CSV path (default: stdout)");

  auto* replay = app.add_subcommand("replay", "Rebuild quiz state from a JSONL event log");
  replay->add_option("--log,log", log_path, "Event log path")->required();
  replay->add_flag("--json", as_json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (schedule->parsed()) return cmd_schedule(mech, as_json);
    if (optimize->parsed()) return cmd_optimize(mech, grid_step, as_json);
    if (simulate->parsed()) return cmd_simulate(scenario_path, seed, out_path, events_path);
    if (sweep_cmd->parsed()) return cmd_sweep(scenario_path, seed, params, out_path);
    if (replay->parsed()) return cmd_replay(log_path, as_json);
  } catch (const QuizError& e) {
    if (e.kind() == ErrorKind::NoViableSchedule) {
      std::cerr << e.what() << '\n';
      return kRuntimeFailure;
    }
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Validation ? kUsage : kRuntimeFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kUsage;
}

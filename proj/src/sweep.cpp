#include <array>
#include <cmath>
#include <string>

#include "quizreward/error.hpp"
#include "quizreward/simulator.hpp"

namespace quizreward {

namespace {

constexpr std::array<const char*, 15> kNames = {
    "cp", "ratio", "x", "fee", "ipp", "sf", "t0", "s_target", "window", "t_min", "t_max",
    "num_players", "trials", "p_win", "case"};

std::int64_t as_count(double v, const std::string& name) {
  if (!(std::isfinite(v) && v == std::round(v))) {
    fail(ErrorKind::Validation, name + ": must be an integer, got " + std::to_string(v));
  }
  return static_cast<std::int64_t>(v);
}

Money as_money(double units, const std::string& name) {
  if (!(std::isfinite(units) && units >= 0.0)) {
    fail(ErrorKind::Validation, name + ": must be a non-negative amount");
  }
  return Money::from_micros(std::llround(units * static_cast<double>(kMicrosPerUnit)));
}

void assign(Scenario& s, const std::string& name, double v) {
  auto& c = s.config;
  auto& ctl = c.controller;
  if (name == "cp") {
    c.cp = v;
  } else if (name == "ratio" || name == "x") {
    c.ratio = Ratio(v);
  } else if (name == "fee") {
    c.fee = as_money(v, name);
  } else if (name == "ipp") {
    c.ipp = as_money(v, name);
  } else if (name == "sf") {
    ctl.gain = v;
  } else if (name == "t0") {
    ctl.base_threshold = v;
  } else if (name == "s_target") {
    ctl.target_success = v;
  } else if (name == "window") {
    ctl.window = as_count(v, name);
  } else if (name == "t_min") {
    ctl.min_threshold = v;
  } else if (name == "t_max") {
    ctl.max_threshold = v;
  } else if (name == "num_players") {
    s.num_players = as_count(v, name);
  } else if (name == "trials") {
    s.trials = as_count(v, name);
  } else if (name == "p_win") {
    auto* bernoulli = std::get_if<population::Bernoulli>(&s.population);
    if (bernoulli == nullptr) fail(ErrorKind::Validation, "p_win: population is not bernoulli");
    bernoulli->p_win = v;
  } else if (name == "case") {
    const auto k = as_count(v, name);
    if (k < 1 || k > 3) fail(ErrorKind::Validation, "case: must be 1, 2 or 3");
    c.quiz_case = static_cast<QuizCase>(k);
  } else {
    fail(ErrorKind::Validation, "unknown sweep parameter \"" + name + "\"");
  }
}

}  // namespace

std::span<const char* const> sweep_parameter_names() { return kNames; }

SweepParameter parse_sweep_parameter(const std::string& spec) {
  const auto bad = [&](const std::string& why) -> SweepParameter {
    fail(ErrorKind::Validation, "--param " + spec + ": " + why);
  };
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) return bad("expected NAME=LO:HI:STEP");
  SweepParameter param{spec.substr(0, eq), {}};
  bool known = false;
  for (const char* n : kNames) known = known || param.name == n;
  if (!known) return bad("unknown parameter \"" + param.name + "\"");

  std::vector<double> parts;
  std::string rest = spec.substr(eq + 1);
  std::size_t start = 0;
  while (true) {
    const auto colon = rest.find(':', start);
    const std::string token = rest.substr(start, colon - start);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      return bad("\"" + token + "\" is not a number");
    }
    if (used != token.size() || !std::isfinite(value)) return bad("\"" + token + "\" is not a number");
    parts.push_back(value);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) {
    param.values = parts;
    return param;
  }
  if (parts.size() != 3) return bad("expected NAME=LO:HI:STEP or NAME=VALUE");
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (!(step > 0.0)) return bad("STEP must be positive");
  if (lo > hi) return bad("LO must not exceed HI");
  for (std::int64_t i = 0;; ++i) {
    const double v = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
    if (v > hi + step * 1e-9) break;
    param.values.push_back(v);
  }
  return param;
}

std::vector<SweepRow> sweep(const Scenario& scenario, std::span<const SweepParameter> grid) {
  if (grid.empty()) fail(ErrorKind::Validation, "sweep grid must contain at least one parameter");
  for (const auto& p : grid) {
    if (p.values.empty()) fail(ErrorKind::Validation, "sweep parameter " + p.name + " has no values");
  }

  std::vector<SweepRow> rows;
  std::vector<std::size_t> digit(grid.size(), 0);
  for (;;) {
    SweepRow row;
    Scenario point = scenario;
    try {
      bool sweeps_cp = false;
      for (std::size_t d = 0; d < grid.size(); ++d) {
        const double v = grid[d].values[digit[d]];
        row.parameters.emplace_back(grid[d].name, v);
        assign(point, grid[d].name, v);
        sweeps_cp = sweeps_cp || grid[d].name == "cp";
      }
      if (sweeps_cp) {
        if (point.config.cp == 1.0) {
          point.config.quiz_case = QuizCase::Case1;
        } else if (point.config.quiz_case == QuizCase::Case1) {
          point.config.quiz_case = QuizCase::Case2;
        }
      }
      point.validate();
      row.capacity = build_schedule(point.config).capacity;
      row.summary = run_trials(point);
    } catch (const QuizError& e) {
      row.capacity.reset();
      row.summary.reset();
      row.error = e.what();
    }
    rows.push_back(std::move(row));

    // Odometer increment, last parameter fastest.
    std::size_t d = grid.size();
    while (d > 0) {
      --d;
      if (++digit[d] < grid[d].values.size()) break;
      digit[d] = 0;
      if (d == 0) return rows;
    }
  }
}

}  // namespace quizreward

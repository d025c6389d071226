#include "quizreward/event_log.hpp"

#include <cmath>
#include <initializer_list>
#include <istream>
#include <ostream>

#include "quizreward/error.hpp"

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

double number_at(const json& value, const std::string& path) {
  if (!value.is_number()) invalid(path, "expected a number");
  return value.get<double>();
}

std::int64_t integer_at(const json& value, const std::string& path) {
  if (!value.is_number_integer()) invalid(path, "expected an integer");
  return value.get<std::int64_t>();
}

std::string string_at(const json& value, const std::string& path) {
  if (!value.is_string()) invalid(path, "expected a string");
  return value.get<std::string>();
}

ControllerSettings controller_from_json(const json& value, const std::string& path) {
  reject_unknown(value, path, {"t0", "sf", "s_target", "window", "t_min", "t_max"});
  ControllerSettings s;
  if (value.contains("t0")) s.base_threshold = number_at(value["t0"], path + ".t0");
  if (value.contains("sf")) s.gain = number_at(value["sf"], path + ".sf");
  if (value.contains("s_target")) s.target_success = number_at(value["s_target"], path + ".s_target");
  if (value.contains("window")) s.window = integer_at(value["window"], path + ".window");
  if (value.contains("t_min")) s.min_threshold = number_at(value["t_min"], path + ".t_min");
  if (value.contains("t_max")) s.max_threshold = number_at(value["t_max"], path + ".t_max");
  return s;
}

json controller_to_json(const ControllerSettings& s) {
  return json{{"t0", s.base_threshold}, {"sf", s.gain},         {"s_target", s.target_success},
              {"window", s.window},     {"t_min", s.min_threshold}, {"t_max", s.max_threshold}};
}

}  // namespace

Money money_from_json(const json& value, const std::string& path) {
  try {
    if (value.is_number_integer()) return Money::from_micros(value.get<std::int64_t>());
    if (value.is_string()) return parse_money(value.get<std::string>());
  } catch (const QuizError& e) {
    invalid(path, e.what());
  }
  invalid(path, "expected a decimal string or integer micro-units");
}

json config_to_json(const QuizConfig& c) {
  json out{{"case", static_cast<int>(c.quiz_case)},
           {"ipp", c.ipp.micros()},
           {"fee", c.fee.micros()},
           {"cp", c.cp},
           {"ratio", c.ratio.value()},
           {"user_cost_pct", c.user_cost_pct},
           {"hosting_cost_pct", c.hosting_cost_pct},
           {"controller", controller_to_json(c.controller)}};
  if (c.user_cost_override) out["user_cost"] = c.user_cost_override->micros();
  if (c.hosting_cost_override) out["hosting_cost"] = c.hosting_cost_override->micros();
  if (c.registration_cap) out["registration_cap"] = *c.registration_cap;
  return out;
}

QuizConfig config_from_json(const json& value, const std::string& path) {
  reject_unknown(value, path,
                 {"case", "ipp", "fee", "cp", "ratio", "user_cost", "hosting_cost", "user_cost_pct",
                  "hosting_cost_pct", "registration_cap", "controller"});
  QuizConfig c;
  const auto quiz_case = integer_at(required(value, path, "case"), path + ".case");
  if (quiz_case < 1 || quiz_case > 3) invalid(path + ".case", "must be 1, 2 or 3");
  c.quiz_case = static_cast<QuizCase>(quiz_case);
  c.ipp = money_from_json(required(value, path, "ipp"), path + ".ipp");
  c.fee = money_from_json(required(value, path, "fee"), path + ".fee");
  c.cp = value.contains("cp") ? number_at(value["cp"], path + ".cp")
                              : (c.quiz_case == QuizCase::Case1 ? 1.0 : 0.75);
  if (!(std::isfinite(c.cp) && c.cp > 0.0 && c.cp <= 1.0)) invalid(path + ".cp", "must lie in (0,1]");
  const double ratio = number_at(required(value, path, "ratio"), path + ".ratio");
  if (!(ratio > 0.0 && ratio < 1.0)) invalid(path + ".ratio", "must lie strictly inside (0,1)");
  c.ratio = Ratio(ratio);
  if (value.contains("user_cost")) {
    c.user_cost_override = money_from_json(value["user_cost"], path + ".user_cost");
  }
  if (value.contains("hosting_cost")) {
    c.hosting_cost_override = money_from_json(value["hosting_cost"], path + ".hosting_cost");
  }
  if (value.contains("user_cost_pct")) {
    c.user_cost_pct = number_at(value["user_cost_pct"], path + ".user_cost_pct");
  }
  if (value.contains("hosting_cost_pct")) {
    c.hosting_cost_pct = number_at(value["hosting_cost_pct"], path + ".hosting_cost_pct");
  }
  if (value.contains("registration_cap")) {
    c.registration_cap = integer_at(value["registration_cap"], path + ".registration_cap");
  }
  if (value.contains("controller")) {
    c.controller = controller_from_json(value["controller"], path + ".controller");
  }
  // Field-level messages from validate() are already prefixed with "config.".
  c.validate();
  return c;
}

std::string event_to_json_line(const Event& event) {
  json out{{"seq", event.seq}};
  std::visit(
      [&out](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, events::QuizCreated>) {
          out["kind"] = "QuizCreated";
          out["payload"] = json{{"config", config_to_json(e.config)}};
        } else if constexpr (std::is_same_v<T, events::Registered>) {
          out["kind"] = "Registered";
          out["payload"] = json{{"player_id", e.player_id}};
        } else if constexpr (std::is_same_v<T, events::ScoreSubmitted>) {
          out["kind"] = "ScoreSubmitted";
          out["payload"] = json{{"player_id", e.player_id}, {"score", e.score}};
        } else if constexpr (std::is_same_v<T, events::RewardPaid>) {
          out["kind"] = "RewardPaid";
          out["payload"] = json{{"player_id", e.player_id},
                                {"amount_micros", e.amount.micros()},
                                {"winner_index", e.winner_index}};
        } else if constexpr (std::is_same_v<T, events::ThresholdUpdated>) {
          out["kind"] = "ThresholdUpdated";
          out["payload"] = json{{"threshold", e.threshold}};
        } else {
          out["kind"] = "QuizClosed";
          out["payload"] = json{{"reason", to_string(e.reason)}};
        }
      },
      event.kind);
  return out.dump();
}

Event event_from_json_line(std::string_view line, std::int64_t line_number) {
  const std::string where = "line " + std::to_string(line_number);
  try {
    const json doc = json::parse(line);
    reject_unknown(doc, where, {"seq", "kind", "payload"});
    Event event;
    event.seq = integer_at(required(doc, where, "seq"), where + ".seq");
    const std::string kind = string_at(required(doc, where, "kind"), where + ".kind");
    const json& p = required(doc, where, "payload");
    const std::string pp = where + ".payload";
    if (kind == "QuizCreated") {
      reject_unknown(p, pp, {"config"});
      event.kind = events::QuizCreated{config_from_json(required(p, pp, "config"), pp + ".config")};
    } else if (kind == "Registered") {
      reject_unknown(p, pp, {"player_id"});
      event.kind = events::Registered{string_at(required(p, pp, "player_id"), pp + ".player_id")};
    } else if (kind == "ScoreSubmitted") {
      reject_unknown(p, pp, {"player_id", "score"});
      event.kind = events::ScoreSubmitted{string_at(required(p, pp, "player_id"), pp + ".player_id"),
                                          number_at(required(p, pp, "score"), pp + ".score")};
    } else if (kind == "RewardPaid") {
      reject_unknown(p, pp, {"player_id", "amount_micros", "winner_index"});
      event.kind = events::RewardPaid{
          string_at(required(p, pp, "player_id"), pp + ".player_id"),
          Money::from_micros(integer_at(required(p, pp, "amount_micros"), pp + ".amount_micros")),
          integer_at(required(p, pp, "winner_index"), pp + ".winner_index")};
    } else if (kind == "ThresholdUpdated") {
      reject_unknown(p, pp, {"threshold"});
      event.kind = events::ThresholdUpdated{number_at(required(p, pp, "threshold"), pp + ".threshold")};
    } else if (kind == "QuizClosed") {
      reject_unknown(p, pp, {"reason"});
      const std::string reason = string_at(required(p, pp, "reason"), pp + ".reason");
      if (reason == to_string(CloseReason::FloorReached)) {
        event.kind = events::QuizClosed{CloseReason::FloorReached};
      } else if (reason == to_string(CloseReason::PoolInsufficient)) {
        event.kind = events::QuizClosed{CloseReason::PoolInsufficient};
      } else {
        invalid(pp + ".reason", "unknown closure reason \"" + reason + "\"");
      }
    } else {
      invalid(where + ".kind", "unknown event kind \"" + kind + "\"");
    }
    return event;
  } catch (const json::exception& e) {
    fail(ErrorKind::CorruptLog, "CorruptLog: malformed event at " + where + ": " + e.what());
  } catch (const QuizError& e) {
    fail(ErrorKind::CorruptLog, std::string("CorruptLog: ") + e.what());
  }
}

void write_event_log(std::ostream& out, std::span<const Event> log) {
  for (const Event& event : log) out << event_to_json_line(event) << '\n';
}

std::vector<Event> read_event_log(std::istream& in) {
  std::vector<Event> log;
  std::string line;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    log.push_back(event_from_json_line(line, line_number));
  }
  return log;
}

}  // namespace quizreward

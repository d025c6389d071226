#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "quizreward/config.hpp"
#include "quizreward/engine.hpp"

namespace quizreward {

/// Money as a JSON value: integer micro-units, or a decimal string.
Money money_from_json(const nlohmann::json& value, const std::string& path);

/// Config <-> JSON. Money is written as integer micro-units; parsing is strict
/// (unknown fields rejected) and re-validates the config. Errors name the
/// offending field relative to `path`.
nlohmann::json config_to_json(const QuizConfig& config);
QuizConfig config_from_json(const nlohmann::json& value, const std::string& path = "config");

/// One event per line: {"seq":N,"kind":"...","payload":{...}}.
std::string event_to_json_line(const Event& event);
Event event_from_json_line(std::string_view line, std::int64_t line_number);

void write_event_log(std::ostream& out, std::span<const Event> log);
/// Throws CorruptLog on malformed lines. Blank lines are skipped.
std::vector<Event> read_event_log(std::istream& in);

}  // namespace quizreward

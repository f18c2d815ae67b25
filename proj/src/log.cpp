#include "jawkit/log.hpp"

#include <cstdlib>
#include <iostream>

namespace jawkit {

namespace {

LogLevel parse_env_level() {
  const char* env = std::getenv("JAWKIT_LOG");
  if (!env) return LogLevel::warn;
  std::string s(env);
  if (s == "quiet" || s == "0") return LogLevel::quiet;
  if (s == "warn" || s == "1") return LogLevel::warn;
  if (s == "info" || s == "2") return LogLevel::info;
  if (s == "debug" || s == "3") return LogLevel::debug;
  return LogLevel::warn;
}

LogLevel& level_ref() {
  static LogLevel level = parse_env_level();
  return level;
}

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::warn: return "warning";
    case LogLevel::info: return "info";
    case LogLevel::debug: return "debug";
    default: return "";
  }
}

}  // namespace

LogLevel log_level() { return level_ref(); }

void set_log_level(LogLevel level) { level_ref() = level; }

void log_message(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::cerr << "[jawkit " << level_tag(level) << "] " << message << "\n";
}

}  // namespace jawkit

#ifndef JAWKIT_LOG_HPP
#define JAWKIT_LOG_HPP

#include <sstream>
#include <string>

namespace jawkit {

enum class LogLevel { quiet = 0, warn = 1, info = 2, debug = 3 };

/// Current verbosity. Initialized from the JAWKIT_LOG environment variable
/// ("quiet" | "warn" | "info" | "debug", default "warn").
LogLevel log_level();
void set_log_level(LogLevel level);

void log_message(LogLevel level, const std::string& message);

namespace detail {
inline void format_into(std::ostringstream&) {}
template <typename T, typename... Rest>
void format_into(std::ostringstream& os, const T& v, const Rest&... rest) {
  os << v;
  format_into(os, rest...);
}
}  // namespace detail

template <typename... Args>
void log_warn(const Args&... args) {
  std::ostringstream os;
  detail::format_into(os, args...);
  log_message(LogLevel::warn, os.str());
}

template <typename... Args>
void log_info(const Args&... args) {
  std::ostringstream os;
  detail::format_into(os, args...);
  log_message(LogLevel::info, os.str());
}

template <typename... Args>
void log_debug(const Args&... args) {
  std::ostringstream os;
  detail::format_into(os, args...);
  log_message(LogLevel::debug, os.str());
}

}  // namespace jawkit

#endif  // JAWKIT_LOG_HPP

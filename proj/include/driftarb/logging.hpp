#ifndef DRIFTARB_LOGGING_HPP
#define DRIFTARB_LOGGING_HPP

#include <string_view>

namespace driftarb::logging {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Threshold comes from the DRIFT_ARBITER_LOG environment variable
/// (error|warn|info|debug), read once. Default: warn.
Level threshold();

void log(Level level, std::string_view msg);

inline void error(std::string_view msg) { log(Level::Error, msg); }
inline void warn(std::string_view msg) { log(Level::Warn, msg); }
inline void info(std::string_view msg) { log(Level::Info, msg); }
inline void debug(std::string_view msg) { log(Level::Debug, msg); }

} // namespace driftarb::logging

#endif

#include "driftarb/logging.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace driftarb::logging {

namespace {

Level parse_env() {
    const char* raw = std::getenv("DRIFT_ARBITER_LOG");
    if (raw == nullptr) return Level::Warn;
    std::string v(raw);
    if (v == "error") return Level::Error;
    if (v == "warn") return Level::Warn;
    if (v == "info") return Level::Info;
    if (v == "debug") return Level::Debug;
    return Level::Warn;
}

const char* tag(Level level) {
    switch (level) {
        case Level::Error: return "error";
        case Level::Warn: return "warn";
        case Level::Info: return "info";
        case Level::Debug: return "debug";
    }
    return "?";
}

} // namespace

Level threshold() {
    static const Level lvl = parse_env();
    return lvl;
}

void log(Level level, std::string_view msg) {
    if (static_cast<int>(level) > static_cast<int>(threshold())) return;
    std::cerr << "[driftarb " << tag(level) << "] " << msg << '\n';
}

} // namespace driftarb::logging

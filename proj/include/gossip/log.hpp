#ifndef GOSSIP_LOG_HPP
#define GOSSIP_LOG_HPP

#include <string>

namespace gossip::logging {

// Levels selected via the GOSSIP_LOG environment variable
// (error|warn|info|debug); default warn.
enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level level();

void log(Level lvl, const std::string& msg);

inline void error(const std::string& msg) { log(Level::error, msg); }
inline void warn(const std::string& msg) { log(Level::warn, msg); }
inline void info(const std::string& msg) { log(Level::info, msg); }
inline void debug(const std::string& msg) { log(Level::debug, msg); }

}  // namespace gossip::logging

#endif

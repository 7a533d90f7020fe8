#include "gossip/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace gossip::logging {

Level level() {
  static const Level parsed = [] {
    const char* env = std::getenv("GOSSIP_LOG");
    if (env == nullptr) return Level::warn;
    if (std::strcmp(env, "error") == 0) return Level::error;
    if (std::strcmp(env, "info") == 0) return Level::info;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    return Level::warn;
  }();
  return parsed;
}

void log(Level lvl, const std::string& msg) {
  if (lvl > level()) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::fprintf(stderr, "[gossip] %s: %s\n", names[static_cast<int>(lvl)],
               msg.c_str());
}

}  // namespace gossip::logging

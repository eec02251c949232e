#include "learnta/log.hh"

#include <cstdlib>
#include <iostream>
#include <optional>

namespace learnta::log {

namespace {

std::optional<Level> g_level;

Level from_env() {
  const char* v = std::getenv("LEARNTA_LOG");
  if (!v) return Level::Off;
  std::string s(v);
  if (s == "info" || s == "1") return Level::Info;
  if (s == "debug" || s == "2") return Level::Debug;
  if (s == "trace" || s == "3") return Level::Trace;
  return Level::Off;
}

const char* tag(Level l) {
  switch (l) {
    case Level::Info: return "info";
    case Level::Debug: return "debug";
    case Level::Trace: return "trace";
    default: return "";
  }
}

}  // namespace

Level level() {
  if (!g_level) g_level = from_env();
  return *g_level;
}

void set_level(Level l) { g_level = l; }

void write(Level l, const std::string& msg) { std::cerr << "[learnta:" << tag(l) << "] " << msg << '\n'; }

}  // namespace learnta::log

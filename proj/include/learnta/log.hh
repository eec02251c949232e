#pragma once

#include <sstream>
#include <string>

namespace learnta::log {

enum class Level { Off = 0, Info = 1, Debug = 2, Trace = 3 };

// Read once from LEARNTA_LOG: off | info | debug | trace (or 0..3).
Level level();
void set_level(Level l);
void write(Level l, const std::string& msg);

inline bool enabled(Level l) { return static_cast<int>(level()) >= static_cast<int>(l); }

}  // namespace learnta::log

#define LEARNTA_LOG(lvl, expr)                                   \
  do {                                                           \
    if (::learnta::log::enabled(::learnta::log::Level::lvl)) {   \
      std::ostringstream learnta_log_os_;                        \
      learnta_log_os_ << expr;                                   \
      ::learnta::log::write(::learnta::log::Level::lvl, learnta_log_os_.str()); \
    }                                                            \
  } while (0)

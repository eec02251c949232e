#pragma once

#include "learnta/automaton.hh"

#include <stdexcept>
#include <string>

namespace learnta {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

TimedAutomaton parse_automaton(const std::string& text);
std::string serialize(const TimedAutomaton& a);

TimedAutomaton load_automaton(const std::string& path);
void save_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

// "c < 2", "1 < c <= 3", "c == 1", "c >= 2".
Guard parse_guard(const std::string& text, const std::vector<std::string>& clocks);
std::vector<std::string> guard_strings(const Guard& g, const std::vector<std::string>& clocks);

}  // namespace learnta

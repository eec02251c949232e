#include "learnta/bench.hh"
#include "learnta/io.hh"
#include "learnta/learner.hh"
#include "learnta/log.hh"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace learnta;

namespace {

constexpr const char* kVersion = "0.1.0";

int cmd_learn(const std::string& target, bool no_sat, int max_iter, const std::string& dot, const std::string& stats,
              const std::string& output) {
  auto t0 = std::chrono::steady_clock::now();
  Teacher teacher(load_automaton(target));
  LearnerOptions opt;
  opt.time_saturation = !no_sat;
  opt.max_iterations = max_iter;
  LearnResult r = learn(teacher, opt);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string text = serialize(r.automaton);
  if (output.empty())
    std::cout << text;
  else
    save_text(output, text);
  std::string line = stats_line(teacher.stats(), secs);
  if (!dot.empty()) save_text(dot, to_dot(r.automaton));
  if (!stats.empty()) save_text(stats, line + "\n");
  std::cerr << line << "\n";
  return 0;
}

int cmd_check(const std::string& a, const std::string& b) {
  auto w = find_distinguishing_word(load_automaton(a), load_automaton(b));
  if (!w) {
    std::cout << "equivalent\n";
    return 0;
  }
  std::cout << to_string(*w) << "\n";
  return 1;
}

int cmd_member(const std::string& target, const std::string& word) {
  TimedWord w;
  try {
    w = parse_word(word);
  } catch (const std::exception& e) {
    throw ParseError(std::string("--word: ") + e.what());
  }
  std::cout << (simulate(load_automaton(target), w) ? "true" : "false") << "\n";
  return 0;
}

int cmd_bench(const std::string& suite, bool no_sat) {
  LearnerOptions opt;
  opt.time_saturation = !no_sat;
  auto rows = run_bench(load_suite(suite), opt);
  std::cout << format_report(rows);
  for (const auto& r : rows)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active learning of deterministic timed automata"};
  app.set_version_flag("--version", std::string("learnta ") + kVersion);
  app.require_subcommand(1);

  std::string target, dot, stats, output, a, b, word, suite;
  bool no_sat = false;
  int max_iter = 200;

  auto* learn_cmd = app.add_subcommand("learn", "learn a DTA from a target automaton file");
  learn_cmd->add_option("--target", target, "target automaton file")->required();
  learn_cmd->add_flag("--no-time-saturation", no_sat, "disable time saturation");
  learn_cmd->add_option("--max-iterations", max_iter, "equivalence round cap");
  learn_cmd->add_option("--emit-dot", dot, "write DOT of the result");
  learn_cmd->add_option("--stats", stats, "write the stats line");
  learn_cmd->add_option("-o,--output", output, "write the automaton here instead of stdout");

  auto* check_cmd = app.add_subcommand("check", "language equivalence of two automata");
  check_cmd->add_option("--a", a)->required();
  check_cmd->add_option("--b", b)->required();

  auto* member_cmd = app.add_subcommand("member", "membership of a timed word");
  member_cmd->add_option("--target", target)->required();
  member_cmd->add_option("--word", word, "e.g. \"0.5 a 0\"")->required();

  auto* bench_cmd = app.add_subcommand("bench", "learn every target in a suite directory");
  bench_cmd->add_option("--suite", suite)->required();
  bench_cmd->add_flag("--no-time-saturation", no_sat);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*learn_cmd) return cmd_learn(target, no_sat, max_iter, dot, stats, output);
    if (*check_cmd) return cmd_check(a, b);
    if (*member_cmd) return cmd_member(target, word);
    if (*bench_cmd) return cmd_bench(suite, no_sat);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NondeterministicInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

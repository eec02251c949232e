#include "learnta/bench.hh"

#include "learnta/io.hh"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>

namespace learnta {

namespace fs = std::filesystem;

std::vector<BenchmarkSpec> load_suite(const std::string& dir) {
  std::vector<BenchmarkSpec> out;
  fs::path manifest = fs::path(dir) / "manifest.json";
  if (fs::exists(manifest)) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text(manifest.string()));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(manifest.string() + ": " + e.what());
    }
    if (!doc.contains("targets") || !doc["targets"].is_array())
      throw ParseError(manifest.string() + ": $.targets: expected an array");
    for (const auto& t : doc["targets"]) {
      BenchmarkSpec s;
      s.name = t.at("name").get<std::string>();
      s.file = (fs::path(dir) / t.at("file").get<std::string>()).string();
      if (t.contains("max_membership")) s.max_membership = t["max_membership"].get<long long>();
      if (t.contains("max_equivalence")) s.max_equivalence = t["max_equivalence"].get<long long>();
      out.push_back(s);
    }
    return out;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back(BenchmarkSpec{f.stem().string(), f.string(), {}, {}, true});
  return out;
}

BenchRow run_benchmark(const BenchmarkSpec& spec, const LearnerOptions& opt) {
  BenchRow row;
  row.name = spec.name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    TimedAutomaton target = load_automaton(spec.file);
    row.locations = static_cast<int>(target.locations.size());
    row.events = static_cast<int>(target.alphabet.size());
    row.clocks = target.num_clocks();
    row.max_constant = target.max_constant();
    Teacher teacher(target);
    LearnResult r = learn(teacher, opt);
    row.stats = teacher.stats();
    bool eq = !find_distinguishing_word(r.automaton, target).has_value();
    row.pass = !spec.require_equivalent || eq;
    if (!eq) row.error = "learned automaton differs from target";
    if (spec.max_membership && row.stats.membership_memoized > *spec.max_membership) {
      row.pass = false;
      row.error = "membership queries above bound";
    }
    if (spec.max_equivalence && row.stats.equivalence_count > *spec.max_equivalence) {
      row.pass = false;
      row.error = "equivalence queries above bound";
    }
  } catch (const std::exception& e) {
    row.pass = false;
    row.error = e.what();
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::vector<BenchRow> run_bench(const std::vector<BenchmarkSpec>& suite, const LearnerOptions& opt) {
  std::vector<BenchRow> rows;
  for (const auto& s : suite) rows.push_back(run_benchmark(s, opt));
  return rows;
}

std::string format_report(const std::vector<BenchRow>& rows) {
  std::string out = "name\t|L|\t|Sigma|\t|C|\tK\tmembership\tequivalence\ttime_s\tverdict\n";
  for (const auto& r : rows) {
    char t[32];
    std::snprintf(t, sizeof t, "%.3f", r.seconds);
    out += r.name + "\t" + std::to_string(r.locations) + "\t" + std::to_string(r.events) + "\t" +
           std::to_string(r.clocks) + "\t" + std::to_string(r.max_constant) + "\t" +
           std::to_string(r.stats.membership_memoized) + "\t" + std::to_string(r.stats.equivalence_count) + "\t" + t +
           "\t" + (r.pass ? "PASS" : "FAIL") + (r.error.empty() ? "" : " (" + r.error + ")") + "\n";
  }
  return out;
}

}  // namespace learnta

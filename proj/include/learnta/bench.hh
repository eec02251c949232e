#pragma once

#include "learnta/learner.hh"
#include "learnta/oracle.hh"

#include <optional>
#include <string>
#include <vector>

namespace learnta {

struct BenchmarkSpec {
  std::string name;
  std::string file;
  std::optional<long long> max_membership;   // memoized count
  std::optional<long long> max_equivalence;
  bool require_equivalent = true;
};

struct BenchRow {
  std::string name;
  int locations = 0, events = 0, clocks = 0;
  long long max_constant = 0;
  QueryStats stats;
  double seconds = 0;
  bool pass = false;
  std::string error;
};

// manifest.json if present ({"targets": [{"name", "file", "max_membership"?, "max_equivalence"?}]}),
// otherwise every *.json in the directory by name.
std::vector<BenchmarkSpec> load_suite(const std::string& dir);
BenchRow run_benchmark(const BenchmarkSpec& spec, const LearnerOptions& opt = {});
std::vector<BenchRow> run_bench(const std::vector<BenchmarkSpec>& suite, const LearnerOptions& opt = {});
std::string format_report(const std::vector<BenchRow>& rows);

}  // namespace learnta

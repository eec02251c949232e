#pragma once

#include "learnta/oracle.hh"
#include "learnta/timed_core.hh"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace learnta {

// Conjunction of T(i, n) == T'(i', n') over the left and right languages.  Empty means top.
struct RenamingEquation {
  std::vector<std::pair<int, int>> pairs;

  bool top() const { return pairs.empty(); }
  std::string str(int n, int n2) const;
  RenamingEquation transposed() const;
  friend bool operator==(const RenamingEquation&, const RenamingEquation&) = default;
};

// One side of a comparison: a language and its memberships over a shared suffix list.
struct RowData {
  const ElementaryLanguage* lang = nullptr;
  const std::vector<SymbolicMembership>* cells = nullptr;
};

// Lambda /\ Lambda' /\ R.
bool satisfiable(const TimedCondition& c, const TimedCondition& c2, const RenamingEquation& r);

// Mem(p . s) lifted to the joint space of (p, p', s) and conjoined with Lambda' /\ R.
std::vector<Dbm<long long>> apply_renaming(const SymbolicMembership& g, const ElementaryLanguage& p,
                                           const ElementaryLanguage& p2, const ElementaryLanguage& s,
                                           const RenamingEquation& r, bool left);

bool check_pair(const RowData& p, const RowData& p2, const std::vector<ElementaryLanguage>& S,
                const RenamingEquation& r);

// Variables tau_i whose sums T(i, n) + T''(0, i'') affect membership for some suffix.
std::vector<int> nontrivial_vars(const RowData& p, const std::vector<ElementaryLanguage>& S);

struct CandidateGraph {
  std::vector<int> left, right;
  std::vector<std::pair<int, int>> edges;          // (i, i') lexicographic
  std::vector<std::vector<std::pair<int, int>>> components;  // by leftmost vertex
};

CandidateGraph candidate_graph(const RowData& p, const RowData& p2, const std::vector<ElementaryLanguage>& S);

// Maximal satisfiable candidates grown from one edge per component.
std::vector<RenamingEquation> candidate_renamings(const CandidateGraph& g, const ElementaryLanguage& p,
                                                  const ElementaryLanguage& p2);

// Makes R usable as a clock update: drops pairs on point variables of p2 and gives every other
// variable of p2 a source of equal range.  nullopt if some variable has none.
std::optional<RenamingEquation> complete_function_like(const RenamingEquation& r, const ElementaryLanguage& p,
                                                       const ElementaryLanguage& p2);

struct RenamingOptions {
  bool function_like = true;
  std::size_t max_candidates = 4096;
};

std::optional<RenamingEquation> find_renaming(const RowData& p, const RowData& p2,
                                              const std::vector<ElementaryLanguage>& S,
                                              const RenamingOptions& opt = {});

// Every subset of equal-range pairs, smallest first.
std::optional<RenamingEquation> brute_force_renaming(const RowData& p, const RowData& p2,
                                                     const std::vector<ElementaryLanguage>& S);

}  // namespace learnta

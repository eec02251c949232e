#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace learnta {

// Upper bound on a difference x - y: either +inf, "< value" or "<= value".
template <typename S>
struct Bound {
  S value{};
  bool strict = false;
  bool inf = true;

  static Bound infinity() { return Bound{}; }
  static Bound le(S v) { return Bound{v, false, false}; }
  static Bound lt(S v) { return Bound{v, true, false}; }

  friend Bound operator+(const Bound& a, const Bound& b) {
    if (a.inf || b.inf) return infinity();
    return Bound{a.value + b.value, a.strict || b.strict, false};
  }
  friend bool operator<(const Bound& a, const Bound& b) {
    if (a.inf) return false;
    if (b.inf) return true;
    if (a.value != b.value) return a.value < b.value;
    return a.strict && !b.strict;
  }
  friend bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }
  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.value == b.value && a.strict == b.strict;
  }
  friend bool operator!=(const Bound& a, const Bound& b) { return !(a == b); }

  // not (x - y < b)  <=>  y - x < -b with flipped strictness.
  Bound negated() const { return Bound{S(-value), !strict, false}; }

  bool admits(const S& diff) const {
    if (inf) return true;
    return strict ? diff < value : diff <= value;
  }
};

}  // namespace learnta

namespace Eigen {
template <typename S>
struct NumTraits<learnta::Bound<S>> {
  using Real = learnta::Bound<S>;
  using NonInteger = learnta::Bound<S>;
  using Literal = learnta::Bound<S>;
  using Nested = learnta::Bound<S>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
};
}  // namespace Eigen

namespace learnta {

template <typename S>
using BoundMatrix = Eigen::Matrix<Bound<S>, Eigen::Dynamic, Eigen::Dynamic>;

// Difference-bound matrix over `dim` points; entry (x, y) bounds v_x - v_y.
// Which point plays the role of the constant 0 is up to the caller.
template <typename S>
class Dbm {
 public:
  using B = Bound<S>;

  Dbm() = default;
  explicit Dbm(int dim) : m_(dim, dim) {
    for (int i = 0; i < dim; ++i) m_(i, i) = B::le(S(0));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const B& operator()(int x, int y) const { return m_(x, y); }
  const BoundMatrix<S>& matrix() const { return m_; }
  bool empty() const { return empty_; }

  // Floyd-Warshall closure.
  bool close() {
    const int n = dim();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        if (m_(i, k).inf) continue;
        for (int j = 0; j < n; ++j) {
          B via = m_(i, k) + m_(k, j);
          if (via < m_(i, j)) m_(i, j) = via;
        }
      }
    for (int i = 0; i < n; ++i)
      if (m_(i, i) < B::le(S(0))) {
        empty_ = true;
        break;
      }
    return !empty_;
  }

  // Adds v_x - v_y (<|<=) b to a closed matrix, keeping it closed.
  bool constrain(int x, int y, const B& b) {
    if (empty_) return false;
    if (!(b < m_(x, y))) return true;
    if (b + m_(y, x) < B::le(S(0))) {
      empty_ = true;
      return false;
    }
    m_(x, y) = b;
    const int n = dim();
    for (int i = 0; i < n; ++i) {
      B ix = m_(i, x) + b;
      if (ix.inf) continue;
      for (int j = 0; j < n; ++j) {
        B cand = ix + m_(y, j);
        if (cand < m_(i, j)) m_(i, j) = cand;
      }
    }
    return true;
  }

  // Entrywise minimum with a relabelled copy of `src`; caller must close().
  void meet_embedded(const Dbm& src, const std::vector<int>& map) {
    if (src.empty_) empty_ = true;
    for (int i = 0; i < src.dim(); ++i)
      for (int j = 0; j < src.dim(); ++j) {
        const B& b = src.m_(i, j);
        B& cur = m_(map[i], map[j]);
        if (b < cur) cur = b;
      }
  }

  void set_raw(int x, int y, const B& b) { m_(x, y) = b; }
  void mark_empty() { empty_ = true; }

  bool includes(const Dbm& other) const {
    if (other.empty_) return true;
    if (empty_) return false;
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j)
        if (m_(i, j) < other.m_(i, j)) return false;
    return true;
  }

  bool intersects(const Dbm& other) const {
    Dbm tmp = *this;
    for (int i = 0; i < dim() && !tmp.empty_; ++i)
      for (int j = 0; j < dim(); ++j)
        if (!tmp.constrain(i, j, other.m_(i, j))) break;
    return !tmp.empty_;
  }

  // this \ other as pairwise-disjoint closed pieces.
  std::vector<Dbm> subtract(const Dbm& other) const {
    std::vector<Dbm> out;
    if (empty_) return out;
    if (!intersects(other)) {
      out.push_back(*this);
      return out;
    }
    Dbm rest = *this;
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < dim(); ++j) {
        if (i == j) continue;
        const B& b = other.m_(i, j);
        if (b.inf || !(b < rest.m_(i, j))) continue;
        Dbm piece = rest;
        if (piece.constrain(j, i, b.negated())) out.push_back(std::move(piece));
        if (!rest.constrain(i, j, b)) return out;
      }
    return out;
  }

  // Keeps the points listed in `keep`, in that order.
  Dbm project(const std::vector<int>& keep) const {
    Dbm out(static_cast<int>(keep.size()));
    out.empty_ = empty_;
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = 0; j < keep.size(); ++j) out.m_(i, j) = m_(keep[i], keep[j]);
    return out;
  }

  friend bool operator==(const Dbm& a, const Dbm& b) {
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    return a.dim() == b.dim() && a.m_ == b.m_;
  }

 private:
  BoundMatrix<S> m_;
  bool empty_ = false;
};

// True iff `z` is covered by the union of `cover`.
template <typename S>
bool covered_by(const Dbm<S>& z, const std::vector<Dbm<S>>& cover) {
  std::vector<Dbm<S>> pieces{z};
  for (const auto& w : cover) {
    std::vector<Dbm<S>> next;
    for (const auto& p : pieces) {
      auto rest = p.subtract(w);
      for (auto& r : rest) next.push_back(std::move(r));
    }
    pieces = std::move(next);
    if (pieces.empty()) return true;
  }
  return pieces.empty();
}

}  // namespace learnta

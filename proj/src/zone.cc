#include "learnta/zone.hh"

#include <stdexcept>

namespace learnta {

Zone::Zone(int clocks) : dbm_(clocks + 1) {
  for (int i = 0; i < clocks; ++i) {
    dbm_.set_raw(i, clocks, RatBound::le(0));
    dbm_.set_raw(clocks, i, RatBound::le(0));
  }
  dbm_.close();
}

Zone Zone::universe(int clocks) {
  Zone z(clocks);
  for (int i = 0; i <= clocks; ++i)
    for (int j = 0; j <= clocks; ++j)
      if (i != j) z.dbm_.set_raw(i, j, j == clocks ? RatBound::infinity() : (i == clocks ? RatBound::le(0) : RatBound::infinity()));
  z.dbm_.close();
  return z;
}

void Zone::up() {
  for (int i = 0; i < clocks(); ++i) dbm_.set_raw(i, zero(), RatBound::infinity());
}

void Zone::down() {
  for (int i = 0; i < clocks(); ++i) {
    RatBound best = RatBound::le(0);
    for (int j = 0; j < clocks(); ++j) {
      if (dbm_(j, i) < best) best = dbm_(j, i);
    }
    dbm_.set_raw(zero(), i, best);
  }
}

bool Zone::meet(const Box& b) {
  for (int c = 0; c < clocks() && !empty(); ++c) {
    const Interval& iv = b[c];
    if (!iv.hi.inf) dbm_.constrain(c, zero(), RatBound{Rational(iv.hi.value), iv.hi.strict, false});
    if (!iv.lo.inf) dbm_.constrain(zero(), c, RatBound{Rational(-iv.lo.value), iv.lo.strict, false});
  }
  return !empty();
}

bool Zone::meet(const Zone& z) {
  for (int i = 0; i <= clocks() && !empty(); ++i)
    for (int j = 0; j <= clocks(); ++j)
      if (!dbm_.constrain(i, j, z.dbm_(i, j))) break;
  return !empty();
}

namespace {

// Points 0..m-1 pre clocks, m..2m-1 post clocks, 2m zero.
Dbm<Rational> link(int m, const std::vector<Update>& ups) {
  Dbm<Rational> d(2 * m + 1);
  const int z = 2 * m;
  auto eq = [&](int x, int y, Rational c) {  // v_x - v_y = c
    d.set_raw(x, y, RatBound::le(c));
    d.set_raw(y, x, RatBound::le(-c));
  };
  for (int j = 0; j < m; ++j) {
    d.set_raw(z, j, RatBound::le(0));
    d.set_raw(z, m + j, RatBound::le(0));
  }
  for (int j = 0; j < m; ++j) {
    const Update& u = ups.empty() ? Update{} : ups[j];
    switch (u.kind) {
      case Update::Kind::Keep: eq(m + j, j, 0); break;
      case Update::Kind::Copy: eq(m + j, u.src, 0); break;
      case Update::Kind::Const: eq(m + j, z, u.value); break;
    }
  }
  return d;
}

}  // namespace

Zone Zone::post(const std::vector<Update>& ups) const {
  const int m = clocks();
  Dbm<Rational> d = link(m, ups);
  std::vector<int> map;
  for (int i = 0; i < m; ++i) map.push_back(i);
  map.push_back(2 * m);
  d.meet_embedded(dbm_, map);
  d.close();
  std::vector<int> keep;
  for (int i = 0; i < m; ++i) keep.push_back(m + i);
  keep.push_back(2 * m);
  Zone out(m);
  out.dbm_ = d.project(keep);
  return out;
}

Zone Zone::pre(const std::vector<Update>& ups) const {
  const int m = clocks();
  Dbm<Rational> d = link(m, ups);
  std::vector<int> map;
  for (int i = 0; i < m; ++i) map.push_back(m + i);
  map.push_back(2 * m);
  d.meet_embedded(dbm_, map);
  d.close();
  std::vector<int> keep;
  for (int i = 0; i < m; ++i) keep.push_back(i);
  keep.push_back(2 * m);
  Zone out(m);
  out.dbm_ = d.project(keep);
  return out;
}

void Zone::normalize(const std::vector<Rational>& M) {
  if (empty()) return;
  const int z = zero();
  for (int i = 0; i <= z; ++i)
    for (int j = 0; j <= z; ++j) {
      if (i == j) continue;
      RatBound b = dbm_(i, j);
      if (b.inf) continue;
      if (i != z && b.value > M[i]) {
        dbm_.set_raw(i, j, RatBound::infinity());
      } else if (j != z && b.value < -M[j]) {
        dbm_.set_raw(i, j, RatBound::lt(-M[j]));
      } else if (i == z && j != z && b.value < -M[j]) {
        dbm_.set_raw(i, j, RatBound::lt(-M[j]));
      }
    }
  dbm_.close();
}

bool Zone::contains(const std::vector<Rational>& nu) const {
  if (empty()) return false;
  auto val = [&](int i) { return i == zero() ? Rational(0) : nu[i]; };
  for (int i = 0; i <= zero(); ++i)
    for (int j = 0; j <= zero(); ++j)
      if (!dbm_(i, j).admits(val(i) - val(j))) return false;
  return true;
}

std::optional<Zone::Window> Zone::delay_window(const std::vector<Rational>& nu) const {
  if (empty()) return std::nullopt;
  // Diagonal constraints are delay-invariant.
  for (int i = 0; i < clocks(); ++i)
    for (int j = 0; j < clocks(); ++j)
      if (i != j && !dbm_(i, j).admits(nu[i] - nu[j])) return std::nullopt;
  Window w{RatBound::le(0), RatBound::infinity()};
  for (int i = 0; i < clocks(); ++i) {
    const RatBound& up = dbm_(i, zero());
    if (!up.inf) {
      RatBound h{up.value - nu[i], up.strict, false};
      if (h < w.hi) w.hi = h;
    }
    const RatBound& lowb = dbm_(zero(), i);
    if (!lowb.inf) {
      Rational l = -lowb.value - nu[i];
      if (l > w.lo.value || (l == w.lo.value && lowb.strict)) w.lo = RatBound{l, lowb.strict, false};
    }
  }
  if (!w.hi.inf) {
    if (w.hi.value < w.lo.value) return std::nullopt;
    if (w.hi.value == w.lo.value && (w.hi.strict || w.lo.strict)) return std::nullopt;
  }
  return w;
}

Rational pick_delay(const Zone::Window& w) {
  if (!w.lo.strict) return w.lo.value;
  for (long long q = 1; q <= 1 << 20; ++q) {
    Rational cand(floor_of(w.lo.value * q) + 1, q);
    if (w.hi.inf || w.hi.admits(cand)) return cand;
  }
  throw std::logic_error("pick_delay: no rational found");
}

}  // namespace learnta

#include "learnta/io.hh"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace learnta {

using ojson = nlohmann::ordered_json;

namespace {

struct Token {
  enum Kind { Ident, Number, Op } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s, const std::string& where) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), i});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' || s[j] == '/')) ++j;
      out.push_back({Token::Number, s.substr(i, j - i), i});
      i = j;
    } else if (c == '<' || c == '>' || c == '=' || c == ':' || c == '-') {
      std::size_t j = i + 1;
      if (j < s.size() && s[j] == '=') ++j;
      out.push_back({Token::Op, s.substr(i, j - i), i});
      i = j;
    } else {
      throw ParseError(where + ": unexpected character '" + std::string(1, c) + "' at column " + std::to_string(i + 1));
    }
  }
  return out;
}

Cmp to_cmp(const std::string& op, const std::string& where) {
  if (op == "<") return Cmp::Lt;
  if (op == "<=") return Cmp::Le;
  if (op == "==" || op == "=") return Cmp::Eq;
  if (op == ">=") return Cmp::Ge;
  if (op == ">") return Cmp::Gt;
  throw ParseError(where + ": bad comparison '" + op + "'");
}

Cmp flip(Cmp c) {
  switch (c) {
    case Cmp::Lt: return Cmp::Gt;
    case Cmp::Le: return Cmp::Ge;
    case Cmp::Ge: return Cmp::Le;
    case Cmp::Gt: return Cmp::Lt;
    default: return c;
  }
}

long long guard_constant(const Token& t, const std::string& where) {
  if (t.kind != Token::Number || t.text.find_first_of("./") != std::string::npos)
    throw ParseError(where + ": expected a non-negative integer at column " + std::to_string(t.pos + 1));
  return std::stoll(t.text);
}

int clock_of(const Token& t, const std::vector<std::string>& clocks, const std::string& where) {
  if (t.kind != Token::Ident) throw ParseError(where + ": expected a clock at column " + std::to_string(t.pos + 1));
  for (int i = 0; i < static_cast<int>(clocks.size()); ++i)
    if (clocks[i] == t.text) return i;
  throw ParseError(where + ": unknown clock '" + t.text + "'");
}

Guard parse_guard_at(const std::string& text, const std::vector<std::string>& clocks, const std::string& where) {
  auto tk = tokenize(text, where);
  Guard g;
  if (tk.size() == 3 && tk[0].kind == Token::Ident) {
    g.push_back({clock_of(tk[0], clocks, where), to_cmp(tk[1].text, where), guard_constant(tk[2], where)});
  } else if (tk.size() == 3 && tk[2].kind == Token::Ident) {
    g.push_back({clock_of(tk[2], clocks, where), flip(to_cmp(tk[1].text, where)), guard_constant(tk[0], where)});
  } else if (tk.size() == 5) {
    int c = clock_of(tk[2], clocks, where);
    Cmp a = to_cmp(tk[1].text, where), b = to_cmp(tk[3].text, where);
    if ((a != Cmp::Lt && a != Cmp::Le) || (b != Cmp::Lt && b != Cmp::Le))
      throw ParseError(where + ": range guards must use < or <=");
    g.push_back({c, flip(a), guard_constant(tk[0], where)});
    g.push_back({c, b, guard_constant(tk[4], where)});
  } else {
    throw ParseError(where + ": cannot parse guard '" + text + "'");
  }
  return g;
}

std::pair<int, Update> parse_update(const std::string& text, const std::vector<std::string>& clocks,
                                    const std::string& where) {
  auto tk = tokenize(text, where);
  if (tk.size() != 3 || tk[1].text != ":=") throw ParseError(where + ": cannot parse update '" + text + "'");
  int target = clock_of(tk[0], clocks, where);
  if (tk[2].kind == Token::Ident) return {target, Update::copy(clock_of(tk[2], clocks, where))};
  Rational v;
  try {
    v = parse_rational(tk[2].text);
  } catch (const std::invalid_argument&) {
    throw ParseError(where + ": bad constant '" + tk[2].text + "'");
  }
  return {target, Update::constant(v)};
}

const ojson& field(const ojson& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

std::string str_at(const ojson& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> str_list(const ojson& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str_at(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string interval_string(const Interval& iv, const std::string& c) {
  if (iv.point()) return c + " == " + std::to_string(iv.lo.value);
  bool has_lo = iv.lo.strict || iv.lo.value > 0;
  if (has_lo && !iv.hi.inf)
    return std::to_string(iv.lo.value) + (iv.lo.strict ? " < " : " <= ") + c + (iv.hi.strict ? " < " : " <= ") +
           std::to_string(iv.hi.value);
  if (has_lo) return c + (iv.lo.strict ? " > " : " >= ") + std::to_string(iv.lo.value);
  if (!iv.hi.inf) return c + (iv.hi.strict ? " < " : " <= ") + std::to_string(iv.hi.value);
  return {};
}

}  // namespace

Guard parse_guard(const std::string& text, const std::vector<std::string>& clocks) {
  return parse_guard_at(text, clocks, "guard");
}

std::vector<std::string> guard_strings(const Guard& g, const std::vector<std::string>& clocks) {
  Box b = box_of(g, static_cast<int>(clocks.size()));
  std::vector<std::string> out;
  for (std::size_t c = 0; c < b.size(); ++c) {
    auto s = interval_string(b[c], clocks[c]);
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

TimedAutomaton parse_automaton(const std::string& text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  const std::string root = "$";
  if (!doc.is_object()) throw ParseError("$: expected an object");
  if (str_at(field(doc, "format", root), "$.format") != "learnta-dta") throw ParseError("$.format: expected 'learnta-dta'");
  if (!field(doc, "version", root).is_number_integer() || doc["version"].get<int>() != 1)
    throw ParseError("$.version: unsupported version");
  TimedAutomaton a;
  a.alphabet = str_list(field(doc, "alphabet", root), "$.alphabet");
  a.clocks = str_list(field(doc, "clocks", root), "$.clocks");
  auto locs = str_list(field(doc, "locations", root), "$.locations");
  std::set<std::string> seen;
  for (const auto& l : locs) {
    if (!seen.insert(l).second) throw ParseError("$.locations: duplicate location '" + l + "'");
    a.locations.push_back(Location{l, false, {}});
  }
  if (std::set<std::string>(a.clocks.begin(), a.clocks.end()).size() != a.clocks.size())
    throw ParseError("$.clocks: duplicate clock");
  if (std::set<std::string>(a.alphabet.begin(), a.alphabet.end()).size() != a.alphabet.size())
    throw ParseError("$.alphabet: duplicate event");
  auto loc_of = [&](const std::string& name, const std::string& where) {
    int i = a.location_index(name);
    if (i < 0) throw ParseError(where + ": unknown location '" + name + "'");
    return i;
  };
  a.initial = loc_of(str_at(field(doc, "initial", root), "$.initial"), "$.initial");
  auto acc = str_list(field(doc, "accepting", root), "$.accepting");
  for (std::size_t i = 0; i < acc.size(); ++i)
    a.locations[loc_of(acc[i], "$.accepting[" + std::to_string(i) + "]")].accepting = true;
  if (doc.contains("invariants")) {
    const auto& inv = doc["invariants"];
    if (!inv.is_object()) throw ParseError("$.invariants: expected an object");
    for (auto it = inv.begin(); it != inv.end(); ++it) {
      std::string where = "$.invariants." + it.key();
      int l = loc_of(it.key(), where);
      auto gs = str_list(it.value(), where);
      for (std::size_t k = 0; k < gs.size(); ++k)
        for (auto& c : parse_guard_at(gs[k], a.clocks, where + "[" + std::to_string(k) + "]"))
          a.locations[l].invariant.push_back(c);
    }
  }
  const auto& edges = field(doc, "edges", root);
  if (!edges.is_array()) throw ParseError("$.edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string where = "$.edges[" + std::to_string(i) + "]";
    const auto& ej = edges[i];
    Edge e;
    e.source = loc_of(str_at(field(ej, "source", where), where + ".source"), where + ".source");
    e.target = loc_of(str_at(field(ej, "target", where), where + ".target"), where + ".target");
    e.event = str_at(field(ej, "event", where), where + ".event");
    if (std::find(a.alphabet.begin(), a.alphabet.end(), e.event) == a.alphabet.end())
      throw ParseError(where + ".event: '" + e.event + "' is not in the alphabet");
    auto gs = ej.contains("guard") ? str_list(ej["guard"], where + ".guard") : std::vector<std::string>{};
    for (std::size_t k = 0; k < gs.size(); ++k)
      for (auto& c : parse_guard_at(gs[k], a.clocks, where + ".guard[" + std::to_string(k) + "]")) e.guard.push_back(c);
    e.updates.assign(a.clocks.size(), Update::keep());
    auto us = ej.contains("updates") ? str_list(ej["updates"], where + ".updates") : std::vector<std::string>{};
    std::set<int> assigned;
    for (std::size_t k = 0; k < us.size(); ++k) {
      std::string w = where + ".updates[" + std::to_string(k) + "]";
      auto [t, u] = parse_update(us[k], a.clocks, w);
      if (!assigned.insert(t).second) throw ParseError(w + ": clock assigned twice");
      if (u.kind == Update::Kind::Const && u.value < 0) throw ParseError(w + ": negative constant");
      e.updates[t] = u;
    }
    a.edges.push_back(std::move(e));
  }
  require_deterministic(a);
  return a;
}

std::string serialize(const TimedAutomaton& a) {
  ojson doc;
  doc["format"] = "learnta-dta";
  doc["version"] = 1;
  doc["alphabet"] = a.alphabet;
  doc["clocks"] = a.clocks;
  std::vector<std::string> names, acc;
  for (const auto& l : a.locations) {
    names.push_back(l.name);
    if (l.accepting) acc.push_back(l.name);
  }
  doc["locations"] = names;
  doc["initial"] = a.locations[a.initial].name;
  doc["accepting"] = acc;
  ojson inv = ojson::object();
  for (const auto& l : a.locations)
    if (!l.invariant.empty()) inv[l.name] = guard_strings(l.invariant, a.clocks);
  if (!inv.empty()) doc["invariants"] = inv;
  ojson edges = ojson::array();
  for (const auto& e : a.edges) {
    ojson ej;
    ej["source"] = a.locations[e.source].name;
    ej["event"] = e.event;
    ej["guard"] = guard_strings(e.guard, a.clocks);
    std::vector<std::string> us;
    for (int j = 0; j < static_cast<int>(e.updates.size()); ++j)
      if (e.updates[j].kind != Update::Kind::Keep) us.push_back(to_string(e.updates[j], j, a.clocks));
    ej["updates"] = us;
    ej["target"] = a.locations[e.target].name;
    edges.push_back(ej);
  }
  doc["edges"] = edges;
  return doc.dump(2) + "\n";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << text;
}

TimedAutomaton load_automaton(const std::string& path) {
  try {
    return parse_automaton(read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace learnta

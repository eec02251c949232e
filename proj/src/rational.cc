#include "learnta/rational.hh"

#include <cctype>
#include <stdexcept>

namespace learnta {

namespace {

long long parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("bad number: " + std::string(whole));
  long long v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad number: " + std::string(whole));
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    long long den = parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    r = Rational(parse_digits(s.substr(0, slash), text), den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto ip = s.substr(0, dot);
    auto fp = s.substr(dot + 1);
    long long scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    long long iv = ip.empty() ? 0 : parse_digits(ip, text);
    long long fv = fp.empty() ? 0 : parse_digits(fp, text);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("bad number: " + std::string(text));
    r = Rational(iv * scale + fv, scale);
  } else {
    r = Rational(parse_digits(s, text));
  }
  return neg ? -r : r;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  long long den = r.denominator();
  int twos = 0, fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  int digits = std::max(twos, fives);
  if (den != 1 || digits > 9) return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
  long long scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational a = r < 0 ? -r : r;
  long long ip = floor_of(a);
  long long fp = ((a - ip) * scale).numerator();
  std::string f = std::to_string(fp);
  f.insert(0, digits - f.size(), '0');
  return std::string(r < 0 ? "-" : "") + std::to_string(ip) + "." + f;
}

}  // namespace learnta

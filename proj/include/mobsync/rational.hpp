#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace mobsync {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Renders as "num/den" in lowest terms, or plain "num" when den == 1.
inline std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts "num", "num/den", optional leading '-'. Rejects everything else
// (floats in particular).
inline std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto digits = [](const std::string& s, size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t i = from; i < to; ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  size_t slash = text.find('/');
  std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  size_t start = (!num.empty() && num[0] == '-') ? 1 : 0;
  if (!digits(num, start, num.size())) return std::nullopt;
  if (slash != std::string::npos) {
    std::string den = text.substr(slash + 1);
    if (!digits(den, 0, den.size()) || den == "0") return std::nullopt;
    num += "/" + den;
  }
  Rational q;
  if (q.set_str(num, 10) != 0) return std::nullopt;
  q.canonicalize();
  return q;
}

}  // namespace mobsync

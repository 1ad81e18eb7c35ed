#include "aptmine/util.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace aptmine {

std::string fmt_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, p);
}

std::string fmt_fixed(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
  return buf;
}

std::string fmt_percent(double pct) {
  if (std::isinf(pct)) return pct > 0 ? "+inf%" : "-inf%";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%+.1f", pct);
  std::string s = buf;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, ".0") == 0) {
    s.erase(s.size() - 2);
  }
  return s + "%";
}

std::string fmt_money(double usd) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.0f", usd);
  std::string digits = buf;
  std::string sign;
  if (!digits.empty() && digits[0] == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  std::string grouped;
  int n = static_cast<int>(digits.size());
  for (int i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) grouped += ',';
    grouped += digits[static_cast<std::size_t>(i)];
  }
  return sign + "$" + grouped;
}

std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace aptmine

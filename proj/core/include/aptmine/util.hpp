#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace aptmine {

// Shortest round-trip decimal form ("0.13", "0.5", "80.51923").
std::string fmt_double(double value);

// Fixed-precision form ("0.94" for prec 2).
std::string fmt_fixed(double value, int precision);

// Signed percent with up to one decimal, trailing ".0" trimmed:
// "+25%", "-4.5%", "+inf%".
std::string fmt_percent(double pct);

// "$174,774,960" (rounded to whole dollars).
std::string fmt_money(double usd);

// Quotes a field per RFC-4180 when it contains commas, quotes or newlines.
std::string csv_escape(std::string_view field);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace aptmine

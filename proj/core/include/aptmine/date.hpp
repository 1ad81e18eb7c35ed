#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace aptmine {

// UTC calendar day, stored as days since 1970-01-01.
class Date {
 public:
  Date() = default;

  // Parses strict ISO-8601 "YYYY-MM-DD"; rejects impossible dates.
  static std::optional<Date> parse(std::string_view text);
  static Date from_serial(int days_since_epoch) { return Date(days_since_epoch); }

  int serial() const { return serial_; }
  std::string to_iso() const;

  Date operator+(int days) const { return Date(serial_ + days); }
  int operator-(const Date& other) const { return serial_ - other.serial_; }

  friend auto operator<=>(const Date&, const Date&) = default;

 private:
  explicit Date(int serial) : serial_(serial) {}
  int serial_ = 0;
};

}  // namespace aptmine

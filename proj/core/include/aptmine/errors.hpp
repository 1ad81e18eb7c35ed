#pragma once

#include <stdexcept>
#include <string>

namespace aptmine {

// Malformed input data; carries the 1-based line number of the offending
// row and, once known, the file it came from.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line),
        detail_(message) {}

  ParseError(std::string path, int line, const std::string& message)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + message),
        line_(line),
        path_(std::move(path)),
        detail_(message) {}

  int line() const { return line_; }
  const std::string& path() const { return path_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  std::string path_;
  std::string detail_;
};

// Semantically invalid data (empty inputs, missing thresholds, bad files).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied parameter (window lengths, support factors, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aptmine

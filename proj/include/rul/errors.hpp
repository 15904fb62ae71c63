#ifndef RUL_ERRORS_HPP
#define RUL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rul {

/// Raised when an enumeration guard (subset or graph size) would be exceeded.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (CSV, edge list). Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Invalid configuration value; `path` names the offending field, e.g. "inliers[0].variance".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace rul

#endif  // RUL_ERRORS_HPP

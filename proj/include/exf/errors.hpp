#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace exf {

/// Malformed input data (files, lines, fixtures). Maps to CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Raised by operations that need at least one edge.
class EmptyGraphError : public DataError {
 public:
  EmptyGraphError() : DataError("graph has no edges") {}
};

/// Power iteration did not settle. Carries the final iterate for inspection.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::vector<double> last_iterate, double residual, std::size_t iterations)
      : std::runtime_error("power iteration did not converge after " +
                           std::to_string(iterations) + " iterations (residual " +
                           std::to_string(residual) + ")"),
        last_iterate_(std::move(last_iterate)),
        residual_(residual) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
};

}  // namespace exf

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rotalg {

// Iterative method failed to reach its target; carries the residual history.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

// Quadrature did not settle; the last two estimates are kept for diagnosis.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}
  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

// Malformed coefficient file or report input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation needs a finite matrix representation, i.e. a rational parameter.
class UnsupportedDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace rotalg

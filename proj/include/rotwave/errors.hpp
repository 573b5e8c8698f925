/**
 * @file errors.hpp
 * @brief Exception types shared by the rotwave modules.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace rotwave {

/// Evaluation on the singular line, a logarithm's zero or a pole.
class SingularityError : public std::domain_error {
 public:
  SingularityError(const std::string& what, double phi)
      : std::domain_error(what), phi_(phi) {}
  [[nodiscard]] double phi() const noexcept { return phi_; }

 private:
  double phi_;
};

/// theta outside the family with integer m = (1 - 3 theta) / theta.
class UnsupportedTheta : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter combination where a derived constant is undefined (e.g. beta = 0).
class DegenerateParameters : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal defect: a constructed first integral failed its conservation check.
class ConservationDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Level set is not polynomial in phi (log or pole term active).
class UnsupportedForClosedForm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root structure does not match what a closed-form constructor needs.
class RootPatternError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rotwave

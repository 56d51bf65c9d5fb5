#pragma once

#include <stdexcept>

namespace dcnewton {

// Precondition violations throw std::invalid_argument. Failures that only
// show up once numbers are flowing (non-finite samples, degenerate divisors)
// throw NumericalError.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dcnewton

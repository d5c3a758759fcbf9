#pragma once

#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace affinelie {

/// Result of a structural verification. A failed check always carries a
/// counterexample describing the violating data.
struct CheckOutcome {
  bool passed = true;
  std::string message;
  nlohmann::json counterexample;
  std::size_t cases = 0;

  static CheckOutcome ok(std::size_t cases = 0) {
    CheckOutcome c;
    c.cases = cases;
    return c;
  }
  static CheckOutcome fail(std::string message, nlohmann::json counterexample) {
    CheckOutcome c;
    c.passed = false;
    c.message = std::move(message);
    c.counterexample = std::move(counterexample);
    return c;
  }
  explicit operator bool() const { return passed; }
};

}  // namespace affinelie

#pragma once

#include <stdexcept>
#include <string>

namespace spectator {

// Violation of a numerical contract (Hermiticity, trace, positivity, ...).
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Kinematics below the muon-pair production threshold.
struct ThresholdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spectator

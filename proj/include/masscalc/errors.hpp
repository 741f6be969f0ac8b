#pragma once

#include <stdexcept>
#include <string>

namespace masscalc {

// Requested construction is outside the supported families/dimensions.
class CapabilityError : public std::runtime_error {
public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Two independently computed values that must agree do not; indicates a
// mismatched pairing of inputs or an internal defect, never a user typo.
class ConsistencyError : public std::runtime_error {
public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace masscalc

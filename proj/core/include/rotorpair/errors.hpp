#pragma once

#include <stdexcept>
#include <string>

namespace rotorpair {

/// An eigensolver failed to converge. Never swallowed: callers either
/// handle it or let it propagate.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// The two lowest rotor levels are not isolated from the rest of the
/// spectrum, so the lowest-two-state truncation is invalid.
class GuardRejection : public std::runtime_error {
 public:
  GuardRejection(const std::string& what, double gap, double threshold)
      : std::runtime_error(what), gap_(gap), threshold_(threshold) {}

  double gap() const { return gap_; }
  double threshold() const { return threshold_; }

 private:
  double gap_;
  double threshold_;
};

/// No bracketed crossing/anticrossing/minimum inside the scanned range.
class FeatureNotFound : public std::runtime_error {
 public:
  explicit FeatureNotFound(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rotorpair

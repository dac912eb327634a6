#pragma once

#include <stdexcept>
#include <string>

namespace tsk {

/// Input violates the axioms of its declared kind.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full enumeration requested above the dimension cap.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(long dimension, long cap)
      : std::runtime_error("enumeration cap exceeded: dimension " + std::to_string(dimension) +
                           " > cap " + std::to_string(cap) +
                           "; raise --cap or use the LP-only predicates"),
        dimension_(dimension),
        cap_(cap) {}
  long dimension() const { return dimension_; }
  long cap() const { return cap_; }

 private:
  long dimension_;
  long cap_;
};

/// A guaranteed identity failed; always an implementation bug.
class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace tsk

// errors.hpp
//
// Error hierarchy shared by every module of the library.  All errors derive
// from ualg::error so callers can catch library failures in one place; the
// CLI maps each subtype to a documented exit status.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ualg {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid arguments: wrong sizes, out-of-range values, mismatched shapes.
struct argument_error : error {
  using error::error;
};

/// A documented operation precondition does not hold for the given input.
struct precondition_error : error {
  using error::error;
};

/// A resource cap was reached before the computation finished.
/// `partial_size` reports how far the computation got.
struct budget_error : error {
  std::size_t partial_size;
  budget_error(const std::string& what, std::size_t partial)
      : error(what), partial_size(partial) {}
};

/// Malformed text input (algebra files, terms, partitions).
struct parse_error : error {
  using error::error;
};

/// A machine-checked postcondition evaluated to false.  This signals an
/// internal inconsistency, not a property of the input.
struct verification_error : error {
  using error::error;
};

}  // namespace ualg

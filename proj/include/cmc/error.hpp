#pragma once

#include <stdexcept>
#include <string>

namespace cmc {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative method (quadrature, root finding, Newton, continuation)
/// failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A geometric construction could not be carried out (degenerate curve,
/// lost star-shapedness, failed tangency).
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cmc

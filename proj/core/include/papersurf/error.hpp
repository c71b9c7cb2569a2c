#ifndef PAPERSURF_ERROR_HPP_
#define PAPERSURF_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace papersurf {

/// Input outside the domain of an operation (bad point, bad radius, invalid scheme).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed scheme file.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative procedure hit its cap before meeting its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace papersurf

#endif  // PAPERSURF_ERROR_HPP_

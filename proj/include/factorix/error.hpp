#pragma once

#include <stdexcept>
#include <string>

namespace factorix {

/// Operands from different groups, out-of-range residues and similar misuse.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured size cap and was refused.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance data. `path()` names the offending field, e.g.
/// `components[1].levels[0]`.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string path, const std::string& what)
      : std::invalid_argument(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// An operation was called outside its precondition domain (e.g. a |G| = 2
/// closed form on a larger group).
class UnsupportedInstance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace factorix

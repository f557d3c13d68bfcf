#pragma once

#include <stdexcept>
#include <string>

namespace cfx {

/// Malformed input text (model files, DIMACS/WCNF, CSV). The message names
/// the offending field or carries a 1-based line number where applicable.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// The hard formula of a correction problem is unsatisfiable, i.e. the
/// classifier is constant in the direction the caller asked to flip toward.
class NoCounterfactualError : public std::runtime_error {
public:
  explicit NoCounterfactualError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cfx

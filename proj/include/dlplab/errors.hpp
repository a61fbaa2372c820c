#pragma once

#include <stdexcept>
#include <string>

namespace dlplab {

// Error taxonomy shared by the library and the CLI exit codes.
//
//   std::invalid_argument / std::domain_error  bad call parameters (exit 1)
//   ConfigError   invalid configuration (unknown eta, disabled strategy, ...)
//   SizingError   a memory/size budget gate fired
//   FormatError   unparsable file or encoding
//   InternalError invariant violation; indicates a bug, not user error

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class SizingError : public std::runtime_error {
 public:
  explicit SizingError(const std::string& what) : std::runtime_error(what) {}
};

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dlplab

#pragma once

#include <stdexcept>
#include <string>

namespace hydrolfc {

// Malformed or inconsistent configuration (scenario files, parameter sets).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure to read or write an artifact file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hydrolfc

#pragma once

#include <stdexcept>
#include <string>

namespace conslaw {

// Invalid grid/scheme/CLI configuration. Maps to process exit code 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad numerical data (non-finite initial values, malformed fields).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A model evaluation (flux or source) produced a non-finite value.
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

}  // namespace conslaw

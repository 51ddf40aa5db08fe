#pragma once

#include <stdexcept>

namespace dsrc {

/// Malformed or inconsistent user-supplied configuration. The CLI maps this
/// to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dsrc

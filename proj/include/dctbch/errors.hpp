#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dctbch {

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters are inconsistent or outside their supported range.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Payload does not fit the cover image.
class CapacityError : public ConfigError {
 public:
  CapacityError(const std::string& what, std::size_t max_payload_bits)
      : ConfigError(what), max_payload_bits_(max_payload_bits) {}

  std::size_t max_payload_bits() const { return max_payload_bits_; }

 private:
  std::size_t max_payload_bits_;
};

}  // namespace dctbch

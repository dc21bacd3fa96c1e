#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dlab {

// Thrown when a configured size cap would be exceeded. Carries how far the
// computation got before it stopped.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t partial)
      : std::runtime_error(what), partial_(partial) {}

  std::uint64_t partial_size() const { return partial_; }

 private:
  std::uint64_t partial_;
};

}  // namespace dlab

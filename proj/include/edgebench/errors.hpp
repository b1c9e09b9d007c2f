#pragma once

#include <stdexcept>

namespace edgebench {

struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace edgebench

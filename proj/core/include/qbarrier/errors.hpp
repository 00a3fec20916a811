#pragma once

#include <stdexcept>
#include <string>

namespace qbarrier {

/// Invalid or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical invariant was violated at runtime (passivity failure,
/// kernel residual out of bounds, plateau not reached, total extinction,
/// flat coincidence scan).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem / output failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qbarrier

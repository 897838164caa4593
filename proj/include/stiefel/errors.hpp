#pragma once

#include <stdexcept>
#include <string>

namespace stiefel {

/// Base of every error thrown by the library. `numeric()` separates
/// numerical breakdowns from bad input so the CLI can map them to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, bool numeric = false)
      : std::runtime_error(what), numeric_(numeric) {}
  bool numeric() const noexcept { return numeric_; }

 private:
  bool numeric_;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NotOrthonormal : public Error {
 public:
  explicit NotOrthonormal(double deviation)
      : Error("matrix columns are not orthonormal (deviation " +
              std::to_string(deviation) + ")"),
        deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class RankDeficient : public Error {
 public:
  explicit RankDeficient(const std::string& what) : Error(what, true) {}
};

class InvalidSize : public Error {
 public:
  using Error::Error;
};

class NodeOutOfRange : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class NotSkew : public Error {
 public:
  using Error::Error;
};

class InvalidMultiplicities : public Error {
 public:
  using Error::Error;
};

class InvalidDimensions : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace stiefel

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amalgam {

// Base of every error raised by the library. Messages are short and stable
// enough for tests to match on substrings.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: degenerate grids, parameters outside a documented range,
// grid mismatches, non-tiling radii and so on.
class DomainError : public Error {
public:
  using Error::Error;
};

// Exponent triple (p, s, alpha) rejected by the admissibility gate.
class IndexGateViolation : public Error {
public:
  using Error::Error;
};

class BlockNormExceeded : public Error {
public:
  BlockNormExceeded(std::size_t index, double norm)
      : Error("block " + std::to_string(index) + " has norm " + std::to_string(norm) +
              " > 1"),
        index_(index), norm_(norm) {}
  std::size_t index() const noexcept { return index_; }
  double norm() const noexcept { return norm_; }

private:
  std::size_t index_;
  double norm_;
};

class EmptyDecomposition : public Error {
public:
  EmptyDecomposition() : Error("empty block decomposition") {}
};

}  // namespace amalgam

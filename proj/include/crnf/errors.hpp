#pragma once

#include <stdexcept>
#include <string>

namespace crnf {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad rational literal, wrong JSON shape, bad exponents.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Precondition violation on a mathematical operation (degree mismatch,
/// non-homogeneous input, nonunit linear part, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant broken (singular division matrix, failed exact
/// postcondition). Should never fire.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// The degree-3 normal form has W == 0 while the resonance rule is active.
class DegenerateW : public Error {
 public:
  DegenerateW()
      : Error("nondegeneracy violated: W == 0 with resonance rule active") {}
};

/// A normalization condition depends on the open parameters but is not
/// affine (with constant coefficient) in any of them.
class NonAffineResolution : public Error {
 public:
  explicit NonAffineResolution(int degree)
      : Error("resonance condition at degree " + std::to_string(degree) +
              " is not affine in any unresolved parameter"),
        degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

class ParameterCapExceeded : public Error {
 public:
  explicit ParameterCapExceeded(unsigned cap)
      : Error("parameter degree cap " + std::to_string(cap) + " exceeded"),
        cap_(cap) {}
  unsigned cap() const noexcept { return cap_; }

 private:
  unsigned cap_;
};

/// The chain normalization space plus the block image does not span the
/// degree-T space, so no chain-normal component exists for this input.
class ChainSpaceDeficient : public Error {
 public:
  explicit ChainSpaceDeficient(int degree)
      : Error("chain normal space does not complement the block image at degree " +
              std::to_string(degree)),
        degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

/// push_forward produced an image graph whose quadratic part is not Q.
class ClassError : public Error {
 public:
  using Error::Error;
};

}  // namespace crnf

#ifndef EVFUSE_ERROR_HPP
#define EVFUSE_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace evfuse {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad labels, masses out of range, non-stochastic rows.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two operands were built over different frames.
class FrameMismatchError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a hard size bound (frame width, hyper-power-set width).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Dempster normalization hit 1 - k12 <= guard.
///
/// `step()` is set when the failure happened inside a sequential fold or a
/// tracker run and names the 1-based position of the offending observation.
class TotalConflictError : public Error {
 public:
  explicit TotalConflictError(double conflict, std::optional<std::size_t> step = std::nullopt);

  double conflict() const noexcept { return conflict_; }
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  double conflict_;
  std::optional<std::size_t> step_;
};

/// A tracker received a declaration out of scan order.
class SequencingError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace evfuse

#endif  // EVFUSE_ERROR_HPP

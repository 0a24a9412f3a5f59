#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace helixgeom {

/// Base of every error raised by the toolkit. `kind()` is a stable,
/// machine-readable tag used by the CLI error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error("SyntaxError", message + " at offset " + std::to_string(position)),
        position_(position),
        detail_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

class DomainError : public Error {
 public:
  DomainError(const std::string& message, std::string subexpression)
      : Error("DomainError", message + " in '" + subexpression + "'"),
        subexpression_(std::move(subexpression)) {}

  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class NonRegular : public Error {
 public:
  explicit NonRegular(const std::string& message) : Error("NonRegular", message) {}
};

class DegenerateFrame : public Error {
 public:
  DegenerateFrame(int stage, const std::string& message)
      : Error("DegenerateFrame", message + " (stage " + std::to_string(stage) + ")"),
        stage_(stage) {}

  int stage() const noexcept { return stage_; }

 private:
  int stage_;
};

class RankDeficient : public Error {
 public:
  explicit RankDeficient(const std::string& message) : Error("RankDeficient", message) {}
};

class VerificationFailed : public Error {
 public:
  VerificationFailed(const std::string& message, double residual)
      : Error("VerificationFailed", message), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class StepTooLarge : public Error {
 public:
  StepTooLarge(const std::string& message, double drift)
      : Error("StepTooLarge", message), drift_(drift) {}

  double drift() const noexcept { return drift_; }

 private:
  double drift_;
};

/// A theorem check was called on inputs that do not meet its stated
/// preconditions (e.g. Cor 3.3-style checks on a non-geodesic curve).
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message) : Error("PreconditionError", message) {}
};

class SceneError : public Error {
 public:
  SceneError(std::string pointer, const std::string& message)
      : Error("SceneError", pointer.empty() ? message : pointer + ": " + message), pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace helixgeom

#pragma once

namespace qctx {

inline constexpr double kDefaultTolerance = 1e-9;

/// Absolute tolerance used by every equality and sign predicate of the
/// floating-point backend. The exact backend ignores it.
double tolerance() noexcept;

/// Throws ValidationError unless eps > 0.
void set_tolerance(double eps);

/// Installs a tolerance for the lifetime of the guard.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(double eps);
  ~ScopedTolerance();
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double previous_;
};

}  // namespace qctx

#include "qctx/tolerance.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "qctx/error.hpp"

namespace qctx {

namespace {
std::atomic<double> g_tolerance{kDefaultTolerance};
}

double tolerance() noexcept { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ValidationError("tolerance must be a positive finite number, got " + std::to_string(eps));
  }
  g_tolerance.store(eps, std::memory_order_relaxed);
}

ScopedTolerance::ScopedTolerance(double eps) : previous_(tolerance()) { set_tolerance(eps); }

ScopedTolerance::~ScopedTolerance() { g_tolerance.store(previous_, std::memory_order_relaxed); }

}  // namespace qctx

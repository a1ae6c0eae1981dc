#include "noether/scalar.hpp"

namespace noether {

namespace {
std::atomic<double> g_epsilon{1e-12};
}

double epsilon() noexcept { return g_epsilon.load(std::memory_order_relaxed); }

void set_epsilon(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  g_epsilon.store(eps, std::memory_order_relaxed);
}

}  // namespace noether

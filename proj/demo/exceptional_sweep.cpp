// Counts exceptional pairs for a few values of delta on one smooth set and
// prints them next to the constant-free bound.
#include <cstdio>

#include "smoothchar/smoothchar.hpp"

int main() {
  using namespace smoothchar;
  const std::int64_t x = 200'000, y = 1'000, z = 2'000, Q = 20;
  const auto smooth = sieve_smooth(x, y);
  const auto report = count_exceptional(smooth, Q, z, 0.01, 1.0, WeightSequence::ones());
  std::printf("psi(%lld, %lld) = %lld, %lld primitive pairs with q <= %lld\n",
              static_cast<long long>(x), static_cast<long long>(y),
              static_cast<long long>(smooth.count()),
              static_cast<long long>(report.total_pairs), static_cast<long long>(Q));
  for (const double delta : {0.01, 0.02, 0.05, 0.1, 0.2}) {
    std::printf("delta = %-5g E = %-4lld bound = %.1f\n", delta,
                static_cast<long long>(count_above(report, delta)),
                theoretical_bound(delta, static_cast<double>(x)));
  }
}

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smoothchar/arith.hpp"
#include "smoothchar/error.hpp"
#include "smoothchar/parallel.hpp"

namespace smoothchar {

// Largest x accepted by the sieves. 2x (the right end of a dyadic interval)
// still fits comfortably in a signed 64-bit integer.
inline constexpr std::int64_t kMaxSieveBound = 10'000'000'000;
inline constexpr std::int64_t kDefaultSegment = std::int64_t{1} << 20;

struct SieveOptions {
  std::int64_t segment_size = kDefaultSegment;
  unsigned threads = 0;  // 0: SMOOTHCHAR_THREADS or 1
};

namespace detail {

inline void check_bounds(std::int64_t x, std::int64_t y) {
  if (x < 1 || x > kMaxSieveBound)
    throw RangeError("x = " + std::to_string(x) + " outside [1, " +
                     std::to_string(kMaxSieveBound) + "]");
  if (y < 1) throw RangeError("y = " + std::to_string(y) + " must be >= 1");
}

// Divides every n in [lo, lo + rem.size()) by all primes in `primes` as often
// as they occur. Each multiple of p^k loses one factor p, so no trial loops.
// When `mu` is non-null it receives the Moebius sign over those primes
// (0 once a square divides n).
inline void strip_primes(std::int64_t lo, std::span<const std::int64_t> primes,
                         std::vector<std::int64_t>& rem,
                         std::vector<std::int8_t>* mu) {
  const auto len = static_cast<std::int64_t>(rem.size());
  const std::int64_t hi = lo + len - 1;
  for (std::int64_t i = 0; i < len; ++i) rem[i] = lo + i;
  if (mu) mu->assign(rem.size(), 1);
  for (const std::int64_t p : primes) {
    std::int64_t pk = p;
    int k = 1;
    while (pk <= hi) {
      std::int64_t start = (lo + pk - 1) / pk * pk;
      for (std::int64_t n = start; n <= hi; n += pk) {
        rem[n - lo] /= p;
        if (mu) (*mu)[n - lo] = k == 1 ? -(*mu)[n - lo] : 0;
      }
      if (pk > hi / p) break;
      pk *= p;
      ++k;
    }
  }
}

// Visits the y-smooth integers of [1, x] segment by segment; emit(seg, list)
// receives each segment's members in ascending order.
template <typename Emit>
void sweep_smooth(std::int64_t x, std::int64_t y, const SieveOptions& opt,
                  Emit&& emit) {
  const std::int64_t root = isqrt(x);
  const std::int64_t bound = std::min(y, root);
  const auto primes = primes_upto(bound);
  const std::int64_t seg = std::max<std::int64_t>(opt.segment_size, 1);
  const auto segments = static_cast<std::size_t>((x + seg - 1) / seg);
  parallel_for(segments, opt.threads, [&](std::size_t s) {
    const std::int64_t lo = 1 + static_cast<std::int64_t>(s) * seg;
    const std::int64_t hi = std::min(x, lo + seg - 1);
    std::vector<std::int64_t> rem(static_cast<std::size_t>(hi - lo + 1));
    strip_primes(lo, primes, rem, nullptr);
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i <= hi - lo; ++i) {
      const std::int64_t r = rem[i];
      // After stripping primes <= min(y, sqrt x) the cofactor is 1, or (only
      // when y > sqrt x) a single prime that must itself be <= y.
      if (r == 1 || (bound < y && r <= y)) out.push_back(lo + i);
    }
    emit(s, std::move(out));
  });
}

}  // namespace detail

// The sorted set of y-smooth integers in [1, x], with P(1) = 1 so that 1 is
// always a member.
class SmoothSet {
 public:
  SmoothSet(std::int64_t x, std::int64_t y, std::vector<std::int64_t> members)
      : x_(x), y_(y), members_(std::move(members)) {}

  std::int64_t x() const { return x_; }
  std::int64_t y() const { return y_; }
  std::span<const std::int64_t> members() const { return members_; }
  std::int64_t count() const { return static_cast<std::int64_t>(members_.size()); }

  // psi(t, y) for t <= x.
  std::int64_t count_upto(std::int64_t t) const {
    if (t > x_)
      throw RangeError("t = " + std::to_string(t) + " exceeds sieved x = " +
                       std::to_string(x_));
    return static_cast<std::int64_t>(
        std::upper_bound(members_.begin(), members_.end(), t) - members_.begin());
  }

  bool contains(std::int64_t n) const {
    return std::binary_search(members_.begin(), members_.end(), n);
  }

 private:
  std::int64_t x_;
  std::int64_t y_;
  std::vector<std::int64_t> members_;
};

inline SmoothSet sieve_smooth(std::int64_t x, std::int64_t y,
                              const SieveOptions& opt = {}) {
  detail::check_bounds(x, y);
  const std::int64_t seg = std::max<std::int64_t>(opt.segment_size, 1);
  std::vector<std::vector<std::int64_t>> parts(
      static_cast<std::size_t>((x + seg - 1) / seg));
  detail::sweep_smooth(x, y, opt, [&](std::size_t s, std::vector<std::int64_t> out) {
    parts[s] = std::move(out);
  });
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<std::int64_t> members;
  members.reserve(total);
  for (auto& p : parts) members.insert(members.end(), p.begin(), p.end());
  return SmoothSet(x, y, std::move(members));
}

inline std::int64_t psi(std::int64_t x, std::int64_t y,
                        const SieveOptions& opt = {}) {
  detail::check_bounds(x, y);
  if (y >= x) return x;
  const std::int64_t seg = std::max<std::int64_t>(opt.segment_size, 1);
  std::vector<std::int64_t> counts(static_cast<std::size_t>((x + seg - 1) / seg));
  detail::sweep_smooth(x, y, opt, [&](std::size_t s, std::vector<std::int64_t> out) {
    counts[s] = static_cast<std::int64_t>(out.size());
  });
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

// (psi(x + floor(delta x), y) - psi(x, y)) / (delta psi(x, y)), using a set
// that was sieved at least up to x + floor(delta x).
inline double psi_local_ratio(const SmoothSet& smooth, std::int64_t x,
                              double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw ParameterError("delta = " + std::to_string(delta) +
                         " must lie in (0, 1]");
  const auto step = static_cast<std::int64_t>(std::floor(delta * static_cast<double>(x)));
  const std::int64_t base = smooth.count_upto(x);
  const std::int64_t upper = smooth.count_upto(x + step);
  return static_cast<double>(upper - base) / (delta * static_cast<double>(base));
}

inline double psi_local_ratio(std::int64_t x, std::int64_t y, double delta,
                              const SieveOptions& opt = {}) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw ParameterError("delta = " + std::to_string(delta) +
                         " must lie in (0, 1]");
  detail::check_bounds(x, y);
  const auto step = static_cast<std::int64_t>(std::floor(delta * static_cast<double>(x)));
  return psi_local_ratio(sieve_smooth(x + step, y, opt), x, delta);
}

// Whether delta > min{1/x, y^-kappa}, the range where the local density
// estimate is asserted. Outside it the ratio is still computed.
inline bool local_ratio_in_range(std::int64_t x, std::int64_t y, double delta,
                                 double kappa) {
  const double floor_value =
      std::min(1.0 / static_cast<double>(x),
               std::pow(static_cast<double>(y), -kappa));
  return delta > floor_value && delta <= 1.0;
}

// Moebius function on [1, limit] from the same prime-stripping sweep.
inline std::vector<std::int8_t> moebius_sieve(std::int64_t limit,
                                              const SieveOptions& opt = {}) {
  detail::check_bounds(limit, 1);
  const std::int64_t root = isqrt(limit);
  const auto primes = primes_upto(root);
  const std::int64_t seg = std::max<std::int64_t>(opt.segment_size, 1);
  std::vector<std::int8_t> mu(static_cast<std::size_t>(limit) + 1, 0);
  const auto segments = static_cast<std::size_t>((limit + seg - 1) / seg);
  parallel_for(segments, opt.threads, [&](std::size_t s) {
    const std::int64_t lo = 1 + static_cast<std::int64_t>(s) * seg;
    const std::int64_t hi = std::min(limit, lo + seg - 1);
    std::vector<std::int64_t> rem(static_cast<std::size_t>(hi - lo + 1));
    std::vector<std::int8_t> sign;
    detail::strip_primes(lo, primes, rem, &sign);
    for (std::int64_t i = 0; i <= hi - lo; ++i)
      mu[lo + i] = static_cast<std::int8_t>(rem[i] == 1 ? sign[i] : -sign[i]);
  });
  return mu;
}

}  // namespace smoothchar

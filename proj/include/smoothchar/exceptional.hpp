#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "smoothchar/charsums.hpp"
#include "smoothchar/dirichlet.hpp"
#include "smoothchar/error.hpp"
#include "smoothchar/parallel.hpp"
#include "smoothchar/smooth_set.hpp"
#include "smoothchar/weights.hpp"

namespace smoothchar {

// Delta^-2 (log(1/Delta))^2 log x, natural logarithms, no implied constant.
inline double theoretical_bound(double delta, double x) {
  if (!(delta > 0.0 && delta < 1.0))
    throw ParameterError("theoretical bound needs 0 < delta < 1");
  if (!(x > 1.0)) throw ParameterError("theoretical bound needs x > 1");
  const double l = std::log(1.0 / delta);
  return l * l * std::log(x) / (delta * delta);
}

enum class Criterion { kThreshold, kDgs };

struct PairRecord {
  std::int64_t q = 1;
  std::int64_t chi_index = 0;
  double max_ratio = 0.0;  // max over checked t of |S(t)| / psi(t, y)
  std::int64_t argmax_t = 0;
  bool exceptional = false;
};

struct ExceptionalParams {
  std::int64_t x = 1;
  std::int64_t y = 1;
  std::int64_t z = 1;
  std::int64_t Q = 1;
  double delta = 0.0;
  double c = 1.0;
  std::string weight_kind;
  Criterion criterion = Criterion::kThreshold;
  std::optional<double> beta;
  bool vary_u = false;
  std::int64_t t_min = 1;  // smallest t at which the criterion was tested
};

struct ExceptionalReport {
  ExceptionalParams params;
  std::vector<PairRecord> per_pair;
  std::int64_t E = 0;
  std::int64_t total_pairs = 0;
  // Threshold mode: Delta^-2 (log 1/Delta)^2 log x. Dgs mode: (log x)^(3 beta + 13).
  std::optional<double> bound_value;
  // Dgs mode only: (log x)^(2 beta + 8) (log log x)^2.
  std::optional<double> comparison_value;
};

namespace detail {

// Walks the members of `smooth` once for one character, calling
// test(t, S(t), psi(t)) at t = t_min and right after every member in
// (t_min, x].
template <typename Test>
void scan_pair(const Character& chi, const WeightSequence& a, const SmoothSet& smooth,
               std::int64_t t_min, Test&& test) {
  const TermSource term(chi, a);
  const auto members = smooth.members();
  Complex s{0.0, 0.0};
  std::size_t k = 0;
  while (k < members.size() && members[k] <= t_min) s += term(members[k++]);
  test(t_min, s, static_cast<std::int64_t>(k));
  for (; k < members.size(); ++k) {
    s += term(members[k]);
    test(members[k], s, static_cast<std::int64_t>(k + 1));
  }
}

inline std::int64_t count_flags(const std::vector<PairRecord>& v) {
  std::int64_t e = 0;
  for (const auto& r : v) e += r.exceptional ? 1 : 0;
  return e;
}

}  // namespace detail

// Pairs (q <= Q, chi primitive mod q) with |S_q(chi; A, t, y)| > c Delta psi(t, y)
// for some real t in [z, x]. S is a step function that only moves at smooth n
// while psi(t, y) is nondecreasing, so the supremum of |S|/psi over t is
// attained at t = z or at a smooth member in (z, x].
inline ExceptionalReport count_exceptional(const SmoothSet& smooth, std::int64_t Q,
                                           std::int64_t z, double delta, double c,
                                           const WeightSequence& a, unsigned threads = 0) {
  if (z < 1 || z > smooth.x())
    throw RangeError("z = " + std::to_string(z) + " outside [1, x = " + std::to_string(smooth.x()) + "]");
  if (!(delta > 0.0)) throw ParameterError("delta must be > 0");
  if (!(c > 0.0)) throw ParameterError("c must be > 0");
  detail::check_weights_cover(a, smooth.x());
  const auto family = primitive_family(Q);
  const double threshold = c * delta;

  ExceptionalReport r;
  r.params = {smooth.x(), smooth.y(), z, Q, delta, c, a.name(), Criterion::kThreshold, std::nullopt, false, z};
  r.per_pair.resize(family.size());
  parallel_for(family.size(), threads, [&](std::size_t i) {
    PairRecord rec{family[i].modulus(), family[i].index(), -1.0, z, false};
    detail::scan_pair(family[i], a, smooth, z, [&](std::int64_t t, Complex s, std::int64_t psi_t) {
      const double ratio = std::abs(s) / static_cast<double>(psi_t);
      if (ratio > rec.max_ratio) {
        rec.max_ratio = ratio;
        rec.argmax_t = t;
      }
    });
    rec.exceptional = rec.max_ratio > threshold;
    r.per_pair[i] = rec;
  });
  r.E = detail::count_flags(r.per_pair);
  r.total_pairs = static_cast<std::int64_t>(family.size());
  if (delta < 1.0 && smooth.x() > 1) r.bound_value = theoretical_bound(delta, static_cast<double>(smooth.x()));
  return r;
}

// Number of pairs of an existing report whose max ratio exceeds `threshold`;
// equals count_exceptional(..).E for c * delta = threshold.
inline std::int64_t count_above(const ExceptionalReport& r, double threshold) {
  std::int64_t e = 0;
  for (const auto& p : r.per_pair) e += p.max_ratio > threshold ? 1 : 0;
  return e;
}

// Pairs violating |S_q(chi; t, y)| < psi(t, y) / ((u log u)^4 (log x)^beta) for
// some t in [x^(1/4), x]. With vary_u the threshold uses u = log t / log y,
// which is only meaningful once u >= e, so t then starts at max(x^(1/4), y^e).
inline ExceptionalReport dgs_exceptional_count(const SmoothSet& smooth, std::int64_t Q,
                                               double beta, const WeightSequence& a,
                                               bool vary_u = false, unsigned threads = 0) {
  if (!(beta >= 0.0)) throw ParameterError("beta must be >= 0");
  if (smooth.y() < 2) throw ParameterError("the criterion needs y >= 2");
  const double log_x = std::log(static_cast<double>(smooth.x()));
  const double log_y = std::log(static_cast<double>(smooth.y()));
  const double u_fixed = log_x / log_y;
  if (!(u_fixed >= std::numbers::e))
    throw ParameterError("u = log x / log y = " + std::to_string(u_fixed) + " is below e");
  detail::check_weights_cover(a, smooth.x());

  auto t_min = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(smooth.x()), 0.25)));
  if (vary_u)
    t_min = std::max(t_min, static_cast<std::int64_t>(std::ceil(std::exp(std::numbers::e * log_y))));
  t_min = std::clamp<std::int64_t>(t_min, 1, smooth.x());

  const double log_x_beta = std::pow(log_x, beta);
  const auto factor = [&](std::int64_t t) {
    const double u = vary_u ? std::log(static_cast<double>(t)) / log_y : u_fixed;
    return std::pow(u * std::log(u), 4.0) * log_x_beta;
  };

  const auto family = primitive_family(Q);
  ExceptionalReport r;
  r.params = {smooth.x(), smooth.y(), t_min, Q, 0.0, 1.0, a.name(), Criterion::kDgs, beta, vary_u, t_min};
  r.per_pair.resize(family.size());
  parallel_for(family.size(), threads, [&](std::size_t i) {
    PairRecord rec{family[i].modulus(), family[i].index(), -1.0, t_min, false};
    detail::scan_pair(family[i], a, smooth, t_min, [&](std::int64_t t, Complex s, std::int64_t psi_t) {
      const double ratio = std::abs(s) / static_cast<double>(psi_t);
      if (ratio > rec.max_ratio) {
        rec.max_ratio = ratio;
        rec.argmax_t = t;
      }
      if (ratio * factor(t) >= 1.0) rec.exceptional = true;
    });
    r.per_pair[i] = rec;
  });
  r.E = detail::count_flags(r.per_pair);
  r.total_pairs = static_cast<std::int64_t>(family.size());
  r.bound_value = std::pow(log_x, 3.0 * beta + 13.0);
  const double lll = std::log(log_x);
  r.comparison_value = std::pow(log_x, 2.0 * beta + 8.0) * lll * lll;
  return r;
}

struct DyadicInterval {
  std::int64_t m = 1;
  std::int64_t end = 2;  // min(2m, x)
  std::int64_t psi_m = 0;
  std::int64_t psi_end = 0;
  std::int64_t E0 = 0;  // frak_s >= Delta psi(m, y)
  std::int64_t E1 = 0;  // |S(m)| > Delta psi(m, y)
  std::int64_t E2 = 0;  // |S(end)| > Delta psi(end, y)
};

struct DyadicReport {
  std::int64_t x = 1;
  std::int64_t y = 1;
  std::int64_t z = 1;
  std::int64_t Q = 1;
  double delta = 0.0;
  std::int64_t J = 0;
  std::string weight_kind;
  std::int64_t total_pairs = 0;
  double endpoint_bound = 0.0;  // Delta^-2
  double frak_bound = 0.0;      // Delta^-2 (log J)^2
  std::vector<DyadicInterval> intervals;

  // Intervals whose endpoint counts exceed Delta^-2.
  std::int64_t endpoint_violations() const {
    std::int64_t v = 0;
    for (const auto& iv : intervals)
      v += (static_cast<double>(iv.E1) > endpoint_bound || static_cast<double>(iv.E2) > endpoint_bound) ? 1 : 0;
    return v;
  }
};

// Left ends m_0 = z, m_{i+1} = 2 m_i of the dyadic cover of [z, x]; the last
// interval is clipped at x. z == x gives the single interval [x, x].
inline std::vector<std::pair<std::int64_t, std::int64_t>> dyadic_cover(std::int64_t z, std::int64_t x) {
  if (z < 1 || z > x) throw RangeError("dyadic cover needs 1 <= z <= x");
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  if (z == x) return {{x, x}};
  for (std::int64_t m = z; m < x; m *= 2) out.emplace_back(m, std::min(2 * m, x));
  return out;
}

inline DyadicReport dyadic_diagnostics(const SmoothSet& smooth, std::int64_t Q, std::int64_t z,
                                       double delta, const WeightSequence& a,
                                       std::optional<std::int64_t> J = std::nullopt,
                                       unsigned threads = 0) {
  if (z < 1 || z > smooth.x())
    throw RangeError("z = " + std::to_string(z) + " outside [1, x = " + std::to_string(smooth.x()) + "]");
  if (!(delta > 0.0)) throw ParameterError("delta must be > 0");
  detail::check_weights_cover(a, smooth.x());
  DyadicReport rep;
  rep.x = smooth.x();
  rep.y = smooth.y();
  rep.z = z;
  rep.Q = Q;
  rep.delta = delta;
  rep.J = J ? *J : static_cast<std::int64_t>(std::ceil(1.0 / (delta * delta)));
  if (rep.J < 0) throw ParameterError("truncation J must be >= 0");
  rep.weight_kind = a.name();
  rep.endpoint_bound = 1.0 / (delta * delta);
  const double log_j = rep.J > 0 ? std::log(static_cast<double>(rep.J)) : 0.0;
  rep.frak_bound = rep.endpoint_bound * log_j * log_j;

  const auto cover = dyadic_cover(z, smooth.x());
  const auto family = primitive_family(Q);
  rep.total_pairs = static_cast<std::int64_t>(family.size());

  struct Flags {
    bool e0, e1, e2;
  };
  std::vector<std::vector<Flags>> flags(family.size());
  parallel_for(family.size(), threads, [&](std::size_t i) {
    auto& out = flags[i];
    out.reserve(cover.size());
    for (const auto& [m, end] : cover) {
      const double s_m = std::abs(char_sum(family[i], a, m, smooth));
      const double s_end = std::abs(char_sum(family[i], a, end, smooth));
      const auto psi_m = static_cast<double>(smooth.count_upto(m));
      const auto psi_end = static_cast<double>(smooth.count_upto(end));
      const double frak = end > m ? frak_s(family[i], a, m, rep.J, end, smooth) : 0.0;
      out.push_back({frak >= delta * psi_m, s_m / psi_m > delta, s_end / psi_end > delta});
    }
  });

  for (std::size_t k = 0; k < cover.size(); ++k) {
    DyadicInterval iv;
    iv.m = cover[k].first;
    iv.end = cover[k].second;
    iv.psi_m = smooth.count_upto(iv.m);
    iv.psi_end = smooth.count_upto(iv.end);
    for (const auto& f : flags) {
      iv.E0 += f[k].e0;
      iv.E1 += f[k].e1;
      iv.E2 += f[k].e2;
    }
    rep.intervals.push_back(iv);
  }
  return rep;
}

}  // namespace smoothchar

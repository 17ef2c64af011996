#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smoothchar/dirichlet.hpp"
#include "smoothchar/error.hpp"
#include "smoothchar/parallel.hpp"
#include "smoothchar/smooth_set.hpp"
#include "smoothchar/weights.hpp"

namespace smoothchar {

using Complex = std::complex<double>;

namespace detail {

// Plain complex product; avoids the Annex G NaN fixups of operator*.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline std::int64_t members_before(const SmoothSet& s, std::int64_t t) {
  return s.count_upto(t);
}

inline void check_weights_cover(const WeightSequence& a, std::int64_t upto) {
  if (upto > a.limit())
    throw RangeError("weight sequence " + a.name() + " does not cover n = " + std::to_string(upto));
}

}  // namespace detail

// chi(n) a_n, evaluated through a residue table of chi.
class TermSource {
 public:
  TermSource(const Character& chi, const WeightSequence& a)
      : q_(chi.modulus()), table_(chi.value_table()), a_(&a) {}

  Complex operator()(std::int64_t n) const {
    return detail::mul((*a_)(n), table_[static_cast<std::size_t>(n % q_)]);
  }

 private:
  std::int64_t q_;
  std::vector<Complex> table_;
  const WeightSequence* a_;
};

// S_q(chi; A, t, y): ascending sum over smooth n <= t of a_n chi(n).
inline Complex char_sum(const Character& chi, const WeightSequence& a,
                        std::int64_t t, const SmoothSet& smooth) {
  if (t > smooth.x())
    throw RangeError("t = " + std::to_string(t) + " exceeds the sieved bound x = " +
                     std::to_string(smooth.x()));
  detail::check_weights_cover(a, t);
  const TermSource term(chi, a);
  Complex s{0.0, 0.0};
  for (const std::int64_t n : smooth.members()) {
    if (n > t) break;
    s += term(n);
  }
  return s;
}

struct SumProfile {
  std::int64_t q = 1;
  std::int64_t chi_index = 0;
  std::vector<std::int64_t> checkpoints;
  std::vector<Complex> sums;
  std::vector<std::int64_t> psis;
};

// S at each checkpoint from a single ascending pass. Values match char_sum
// bit for bit since the additions happen in the same order.
inline SumProfile char_sum_profile(const Character& chi, const WeightSequence& a,
                                   std::span<const std::int64_t> checkpoints,
                                   const SmoothSet& smooth) {
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw ParameterError("checkpoints must be strictly increasing");
    if (checkpoints[i] > smooth.x())
      throw RangeError("checkpoint t = " + std::to_string(checkpoints[i]) +
                       " exceeds the sieved bound x = " + std::to_string(smooth.x()));
  }
  SumProfile p{chi.modulus(), chi.index(), {checkpoints.begin(), checkpoints.end()}, {}, {}};
  if (checkpoints.empty()) return p;
  detail::check_weights_cover(a, checkpoints.back());
  const TermSource term(chi, a);
  const auto members = smooth.members();
  Complex s{0.0, 0.0};
  std::size_t k = 0;
  for (const std::int64_t t : checkpoints) {
    while (k < members.size() && members[k] <= t) s += term(members[k++]);
    p.sums.push_back(s);
    p.psis.push_back(static_cast<std::int64_t>(k));
  }
  return p;
}

namespace detail {

inline void check_dyadic(std::int64_t m, std::int64_t end, const SmoothSet& smooth) {
  if (m < 1) throw RangeError("m = " + std::to_string(m) + " must be >= 1");
  if (end > smooth.x())
    throw RangeError("interval end " + std::to_string(end) + " exceeds the sieved bound x = " +
                     std::to_string(smooth.x()));
}

// e(k/m) for every k in [0, m), or empty when m is too large to tabulate.
inline std::vector<Complex> root_table(std::int64_t m) {
  std::vector<Complex> roots;
  if (m > (std::int64_t{1} << 22)) return roots;
  roots.resize(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k)
    roots[k] = unit_root(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(m));
  return roots;
}

}  // namespace detail

// T_{q,j}(A, chi, m) restricted to m < n <= end (end = 2m for the full
// dyadic interval): sum of a_n chi(n) e(j(n - m)/m).
inline Complex t_sum(const Character& chi, const WeightSequence& a, std::int64_t j,
                     std::int64_t m, std::int64_t end, const SmoothSet& smooth) {
  if (j < 0) throw ParameterError("frequency j must be >= 0");
  detail::check_dyadic(m, end, smooth);
  detail::check_weights_cover(a, end);
  const TermSource term(chi, a);
  const auto members = smooth.members();
  Complex s{0.0, 0.0};
  const auto um = static_cast<std::uint64_t>(m);
  const std::uint64_t jm = static_cast<std::uint64_t>(j) % um;
  for (std::size_t k = static_cast<std::size_t>(smooth.count_upto(m));
       k < members.size() && members[k] <= end; ++k) {
    const std::uint64_t r = static_cast<std::uint64_t>(members[k] - m) % um;
    s += detail::mul(term(members[k]), unit_root(mulmod(jm, r, um), um));
  }
  return s;
}

inline Complex t_sum(const Character& chi, const WeightSequence& a, std::int64_t j,
                     std::int64_t m, const SmoothSet& smooth) {
  return t_sum(chi, a, j, m, 2 * m, smooth);
}

// T_{q,j} for all j = 0 .. J at once. Entry j equals t_sum(.., j, ..) exactly.
inline std::vector<Complex> t_sums(const Character& chi, const WeightSequence& a,
                                   std::int64_t m, std::int64_t end, std::int64_t J,
                                   const SmoothSet& smooth) {
  if (J < 0) throw ParameterError("truncation J must be >= 0");
  detail::check_dyadic(m, end, smooth);
  detail::check_weights_cover(a, end);
  const TermSource term(chi, a);
  const auto members = smooth.members();
  const auto um = static_cast<std::uint64_t>(m);
  const auto roots = detail::root_table(m);
  std::vector<Complex> out(static_cast<std::size_t>(J) + 1, Complex{0.0, 0.0});
  for (std::size_t k = static_cast<std::size_t>(smooth.count_upto(m));
       k < members.size() && members[k] <= end; ++k) {
    const Complex w = term(members[k]);
    const std::uint64_t r = static_cast<std::uint64_t>(members[k] - m) % um;
    std::uint64_t phase = 0;
    for (std::int64_t j = 0; j <= J; ++j) {
      const Complex root = roots.empty() ? unit_root(phase, um) : roots[phase];
      out[j] += detail::mul(w, root);
      phase += r;
      if (phase >= um) phase -= um;
    }
  }
  return out;
}

// Weight of |T_{q,j}| in the aggregate: 1 at j = 0, 1/j afterwards.
inline double frak_weight(std::int64_t j) { return j == 0 ? 1.0 : 1.0 / static_cast<double>(j); }

inline double frak_s_from(std::span<const Complex> t) {
  double s = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) s += frak_weight(static_cast<std::int64_t>(j)) * std::abs(t[j]);
  return s;
}

inline double frak_s(const Character& chi, const WeightSequence& a, std::int64_t m,
                     std::int64_t J, std::int64_t end, const SmoothSet& smooth) {
  return frak_s_from(t_sums(chi, a, m, end, J, smooth));
}

inline double frak_s(const Character& chi, const WeightSequence& a, std::int64_t m,
                     std::int64_t J, const SmoothSet& smooth) {
  return frak_s(chi, a, m, J, 2 * m, smooth);
}

// Every primitive character of every modulus q <= Q, ordered by (q, index).
inline std::vector<Character> primitive_family(std::int64_t Q) {
  if (Q < 1) throw ParameterError("Q = " + std::to_string(Q) + " must be >= 1");
  std::vector<Character> out;
  for (std::int64_t q = 1; q <= Q; ++q)
    for (auto& c : primitive_characters(build_group(q))) out.push_back(std::move(c));
  return out;
}

struct LargeSieveReport {
  std::int64_t Q = 1;
  std::int64_t x = 1;
  std::int64_t y = 1;
  std::string weight_kind;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

// sum_{q <= Q} sum_{chi primitive} |S_q(chi; B, x, y)|^2 against
// psi(x, y) sum_{n smooth} |b_n|^2.
inline LargeSieveReport large_sieve(std::int64_t Q, const SmoothSet& smooth,
                                    const WeightSequence& b, unsigned threads = 0) {
  const auto family = primitive_family(Q);
  std::vector<double> squares(family.size());
  parallel_for(family.size(), threads, [&](std::size_t i) {
    squares[i] = std::norm(char_sum(family[i], b, smooth.x(), smooth));
  });
  LargeSieveReport r{Q, smooth.x(), smooth.y(), b.name(), 0.0, 0.0, 0.0};
  for (const double v : squares) r.lhs += v;
  double mass = 0.0;
  for (const std::int64_t n : smooth.members()) mass += std::norm(b(n));
  r.rhs = static_cast<double>(smooth.count()) * mass;
  r.ratio = r.rhs == 0.0 ? 0.0 : r.lhs / r.rhs;
  return r;
}

inline double large_sieve_ratio(std::int64_t Q, const SmoothSet& smooth,
                                const WeightSequence& b, unsigned threads = 0) {
  return large_sieve(Q, smooth, b, threads).ratio;
}

}  // namespace smoothchar

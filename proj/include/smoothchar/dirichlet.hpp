#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smoothchar/arith.hpp"
#include "smoothchar/error.hpp"

namespace smoothchar {

inline constexpr std::int64_t kMaxModulus = 1'000'000;

// e(num/den) = exp(2 pi i num/den). Quarter turns are returned exactly.
inline std::complex<double> unit_root(std::uint64_t num, std::uint64_t den) {
  num %= den;
  if (num == 0) return {1.0, 0.0};
  if ((4 * num) % den == 0) {
    switch (4 * num / den) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) /
                       static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

// An exact phase num/den in [0, 1); the value is e(num/den).
struct Phase {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  std::complex<double> value() const { return unit_root(num, den); }
  friend bool operator==(const Phase&, const Phase&) = default;
};

// One cyclic factor of (Z/qZ)^*, living on the prime-power component
// modulus = p^e. log[u] is the discrete logarithm of the unit u mod p^e with
// respect to this factor (0 .. order-1), kNotUnit for non-units.
struct CyclicFactor {
  static constexpr std::uint32_t kNotUnit = std::numeric_limits<std::uint32_t>::max();

  std::int64_t prime = 0;
  int exponent = 0;
  std::int64_t modulus = 0;
  std::int64_t order = 0;
  std::int64_t generator = 0;
  std::vector<std::uint32_t> log;
};

class CharacterGroup {
 public:
  std::int64_t modulus() const { return q_; }
  std::int64_t order() const { return order_; }
  // lcm of the factor orders; every character value is e(k / exponent).
  std::int64_t exponent() const { return exponent_; }
  std::span<const PrimePower> factorization() const { return factorization_; }
  std::span<const CyclicFactor> factors() const { return factors_; }

  bool is_unit(std::int64_t n) const {
    for (const auto& [p, e] : factorization_)
      if (n % p == 0) return false;
    return true;
  }

  friend CharacterGroup build_group_value(std::int64_t q);

 private:
  std::int64_t q_ = 1;
  std::int64_t order_ = 1;
  std::int64_t exponent_ = 1;
  std::vector<PrimePower> factorization_;
  std::vector<CyclicFactor> factors_;
};

namespace detail {

inline std::int64_t primitive_root_mod_prime(std::int64_t p) {
  if (p == 2) return 1;
  const auto pf = factorize(p - 1);
  for (std::int64_t g = 2;; ++g) {
    bool ok = true;
    for (const auto& [r, e] : pf)
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
}

inline CyclicFactor cyclic_factor(std::int64_t p, int e, std::int64_t pe,
                                  std::int64_t order, std::int64_t gen) {
  CyclicFactor f{p, e, pe, order, gen, std::vector<std::uint32_t>(pe, CyclicFactor::kNotUnit)};
  std::int64_t v = 1;
  for (std::int64_t k = 0; k < order; ++k) {
    f.log[v] = static_cast<std::uint32_t>(k);
    v = static_cast<std::int64_t>(mulmod(v, gen, pe));
  }
  return f;
}

}  // namespace detail

inline CharacterGroup build_group_value(std::int64_t q) {
  if (q < 1 || q > kMaxModulus)
    throw RangeError("modulus q = " + std::to_string(q) + " outside [1, " +
                     std::to_string(kMaxModulus) + "]");
  CharacterGroup g;
  g.q_ = q;
  g.factorization_ = factorize(q);
  for (const auto& [p, e] : g.factorization_) {
    const std::int64_t pe = ipow(p, e);
    if (p == 2) {
      if (e == 2) {
        g.factors_.push_back(detail::cyclic_factor(2, 2, 4, 2, 3));
      } else if (e >= 3) {
        // (Z/2^eZ)^* = <-1> x <5>.
        CyclicFactor sign{2, e, pe, 2, pe - 1, std::vector<std::uint32_t>(pe, CyclicFactor::kNotUnit)};
        CyclicFactor five = detail::cyclic_factor(2, e, pe, pe / 4, 5);
        for (std::int64_t u = 1; u < pe; u += 2) {
          const bool negated = u % 4 == 3;
          sign.log[u] = negated ? 1 : 0;
          const std::uint32_t l = five.log[negated ? pe - u : u];
          five.log[u] = l;
        }
        g.factors_.push_back(std::move(sign));
        g.factors_.push_back(std::move(five));
      }
      continue;
    }
    std::int64_t root = detail::primitive_root_mod_prime(p);
    if (e >= 2 && powmod(root, p - 1, p * p) == 1) root += p;
    g.factors_.push_back(detail::cyclic_factor(p, e, pe, pe / p * (p - 1), root));
  }
  for (const auto& f : g.factors_) {
    g.order_ *= f.order;
    g.exponent_ = std::lcm(g.exponent_, f.order);
  }
  return g;
}

inline std::shared_ptr<const CharacterGroup> build_group(std::int64_t q) {
  return std::make_shared<const CharacterGroup>(build_group_value(q));
}

class Character {
 public:
  Character(std::shared_ptr<const CharacterGroup> group,
            std::vector<std::int64_t> exponents, std::int64_t index)
      : group_(std::move(group)), exponents_(std::move(exponents)), index_(index) {
    const auto factors = group_->factors();
    if (exponents_.size() != factors.size())
      throw ParameterError("exponent vector length does not match the group");
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (exponents_[i] < 0 || exponents_[i] >= factors[i].order)
        throw ParameterError("character exponent out of range");
      order_ = std::lcm(order_, factors[i].order / std::gcd(exponents_[i], factors[i].order));
    }
    conductor_ = compute_conductor();
  }

  const CharacterGroup& group() const { return *group_; }
  std::int64_t modulus() const { return group_->modulus(); }
  std::span<const std::int64_t> exponents() const { return exponents_; }
  std::int64_t index() const { return index_; }
  std::int64_t order() const { return order_; }
  std::int64_t conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == group_->modulus(); }
  bool is_principal() const { return order_ == 1; }

  // Exact phase of chi(n), or nullopt when gcd(n, q) > 1.
  std::optional<Phase> phase(std::int64_t n) const {
    const std::int64_t q = group_->modulus();
    if (q == 1) return Phase{};
    if (n < 0) n = n % q + q;
    if (!group_->is_unit(n)) return std::nullopt;
    const auto factors = group_->factors();
    const auto big = static_cast<std::uint64_t>(group_->exponent());
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& f = factors[i];
      const std::uint64_t l = f.log[static_cast<std::size_t>(n % f.modulus)];
      const auto scale = big / static_cast<std::uint64_t>(f.order);
      acc = (acc + l * static_cast<std::uint64_t>(exponents_[i]) % static_cast<std::uint64_t>(f.order) * scale) % big;
    }
    const auto ord = static_cast<std::uint64_t>(order_);
    return Phase{acc / (big / ord), ord};
  }

  std::complex<double> operator()(std::int64_t n) const {
    const auto ph = phase(n);
    return ph ? ph->value() : std::complex<double>{0.0, 0.0};
  }

  // chi at every residue 0 .. q-1, for bulk summation.
  std::vector<std::complex<double>> value_table() const {
    const std::int64_t q = group_->modulus();
    std::vector<std::complex<double>> t(static_cast<std::size_t>(q));
    for (std::int64_t r = 0; r < q; ++r) t[r] = (*this)(q == 1 ? 1 : r);
    return t;
  }

 private:
  std::int64_t compute_conductor() const {
    const auto factors = group_->factors();
    std::int64_t cond = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& f = factors[i];
      const std::int64_t k = exponents_[i];
      if (f.prime == 2 && f.exponent >= 3) {
        // Factors come in the pair (-1, 5); handle both at the 5 factor.
        if (f.generator != 5) continue;
        const std::int64_t sign = exponents_[i - 1];
        if (k == 0) {
          cond *= sign ? 4 : 1;
        } else {
          const std::int64_t ord = f.order / std::gcd(k, f.order);
          cond *= 4 * ord;
        }
        continue;
      }
      if (k == 0) continue;
      if (f.prime == 2) {
        cond *= 4;
        continue;
      }
      std::int64_t ord = f.order / std::gcd(k, f.order);
      std::int64_t c = f.prime;
      while (ord % f.prime == 0) {
        ord /= f.prime;
        c *= f.prime;
      }
      cond *= c;
    }
    return cond;
  }

  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::int64_t> exponents_;
  std::int64_t index_ = 0;
  std::int64_t order_ = 1;
  std::int64_t conductor_ = 1;
};

// All phi(q) characters, lexicographic in the exponent vector (so the
// principal character comes first). `index` is the position in this list.
inline std::vector<Character> enumerate_characters(
    const std::shared_ptr<const CharacterGroup>& group) {
  const auto factors = group->factors();
  std::vector<Character> out;
  out.reserve(static_cast<std::size_t>(group->order()));
  std::vector<std::int64_t> k(factors.size(), 0);
  for (std::int64_t idx = 0; idx < group->order(); ++idx) {
    out.emplace_back(group, k, idx);
    for (std::size_t i = factors.size(); i-- > 0;) {
      if (++k[i] < factors[i].order) break;
      k[i] = 0;
    }
  }
  return out;
}

inline std::vector<Character> primitive_characters(
    const std::shared_ptr<const CharacterGroup>& group) {
  auto all = enumerate_characters(group);
  std::erase_if(all, [](const Character& c) { return !c.is_primitive(); });
  return all;
}

// Number of primitive characters mod q from the divisor sum
// sum_{d | q} mu(d) phi(q/d), independent of any character construction.
inline std::int64_t primitive_count_formula(std::int64_t q) {
  std::int64_t total = 0;
  for (std::int64_t d = 1; d <= q; ++d)
    if (q % d == 0) total += moebius(d) * euler_phi(q / d);
  return total;
}

}  // namespace smoothchar

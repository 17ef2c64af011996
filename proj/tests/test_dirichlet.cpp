#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "smoothchar/dirichlet.hpp"

namespace smoothchar {
namespace {

TEST(BuildGroup, SmallModuli) {
  const auto g5 = build_group(5);
  EXPECT_EQ(g5->order(), 4);
  ASSERT_EQ(g5->factors().size(), 1u);
  EXPECT_EQ(g5->factors()[0].generator, 2);
  EXPECT_EQ(g5->factors()[0].order, 4);
  // 2 has order 4 mod 5 by direct powering.
  EXPECT_EQ(powmod(2, 2, 5), 4u);
  EXPECT_EQ(powmod(2, 4, 5), 1u);

  const auto g1 = build_group(1);
  EXPECT_EQ(g1->order(), 1);
  EXPECT_TRUE(g1->factors().empty());

  const auto g8 = build_group(8);
  ASSERT_EQ(g8->factors().size(), 2u);
  EXPECT_EQ(g8->factors()[0].generator, 7);  // -1
  EXPECT_EQ(g8->factors()[0].order, 2);
  EXPECT_EQ(g8->factors()[1].generator, 5);
  EXPECT_EQ(g8->factors()[1].order, 2);

  EXPECT_THROW(build_group(0), RangeError);
  EXPECT_THROW(build_group(kMaxModulus + 1), RangeError);
}

TEST(BuildGroup, StructureInvariants) {
  for (std::int64_t q = 1; q <= 600; ++q) {
    const auto g = build_group(q);
    std::int64_t prod = 1;
    for (const auto& [p, e] : g->factorization()) prod *= ipow(p, e);
    ASSERT_EQ(prod, q);
    ASSERT_EQ(g->order(), euler_phi(q)) << q;
    for (const auto& f : g->factors())
      for (std::int64_t u = 0; u < f.modulus; ++u) {
        if (u % f.prime == 0) {
          ASSERT_EQ(f.log[u], CyclicFactor::kNotUnit);
          continue;
        }
        if (f.prime == 2 && f.exponent >= 3) continue;  // checked below
        ASSERT_EQ(powmod(f.generator, f.log[u], f.modulus), static_cast<std::uint64_t>(u)) << q;
      }
  }
  // 2^e, e >= 3: u = (-1)^a 5^b.
  const auto g = build_group(64);
  const auto& sign = g->factors()[0];
  const auto& five = g->factors()[1];
  for (std::int64_t u = 1; u < 64; u += 2) {
    const auto v = mulmod(powmod(63, sign.log[u], 64), powmod(5, five.log[u], 64), 64);
    EXPECT_EQ(v, static_cast<std::uint64_t>(u));
  }
}

TEST(Characters, CountsAndOrder) {
  const auto c5 = enumerate_characters(build_group(5));
  EXPECT_EQ(c5.size(), 4u);
  EXPECT_TRUE(c5[0].is_principal());
  EXPECT_EQ(c5[0].conductor(), 1);
  EXPECT_EQ(std::count_if(c5.begin(), c5.end(), [](auto& c) { return c.is_primitive(); }), 3);

  const auto c8 = enumerate_characters(build_group(8));
  EXPECT_EQ(c8.size(), 4u);
  EXPECT_EQ(std::count_if(c8.begin(), c8.end(), [](auto& c) { return c.is_primitive(); }), 2);

  // Lexicographic exponent order, index = position.
  const auto c15 = enumerate_characters(build_group(15));
  for (std::size_t i = 0; i < c15.size(); ++i) {
    EXPECT_EQ(c15[i].index(), static_cast<std::int64_t>(i));
    if (i) {
      std::vector<std::int64_t> a(c15[i - 1].exponents().begin(), c15[i - 1].exponents().end());
      std::vector<std::int64_t> b(c15[i].exponents().begin(), c15[i].exponents().end());
      EXPECT_LT(a, b);
    }
  }
}

TEST(Characters, Evaluation) {
  const auto c3 = enumerate_characters(build_group(3));
  ASSERT_EQ(c3.size(), 2u);
  EXPECT_EQ(c3[1](2), std::complex<double>(-1.0, 0.0));
  EXPECT_EQ(c3[1](1), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(c3[1](3), std::complex<double>(0.0, 0.0));
  EXPECT_EQ(c3[1](0), std::complex<double>(0.0, 0.0));

  const auto c12 = enumerate_characters(build_group(12));
  for (const auto& chi : c12)
    for (std::int64_t n : {0, 2, 3, 4, 6, 8, 9, 10, 12}) EXPECT_EQ(chi(n), std::complex<double>(0.0, 0.0));
  for (std::int64_t n : {1, 5, 7, 11, 13}) EXPECT_EQ(c12[0](n), std::complex<double>(1.0, 0.0));

  const auto c1 = enumerate_characters(build_group(1));
  ASSERT_EQ(c1.size(), 1u);
  EXPECT_TRUE(c1[0].is_primitive());
  for (std::int64_t n : {0, 1, 2, 17}) EXPECT_EQ(c1[0](n), std::complex<double>(1.0, 0.0));
}

TEST(Characters, ExactPhases) {
  const auto chars = enumerate_characters(build_group(7));
  for (const auto& chi : chars) {
    for (std::int64_t n = 1; n < 7; ++n) {
      const auto ph = chi.phase(n);
      ASSERT_TRUE(ph);
      EXPECT_LT(ph->num, ph->den);
      EXPECT_EQ(ph->den, static_cast<std::uint64_t>(chi.order()));
      EXPECT_NEAR(std::abs(chi(n)), 1.0, 1e-15);
    }
    EXPECT_FALSE(chi.phase(14));
  }
}

TEST(Characters, Conductor) {
  const auto c4 = enumerate_characters(build_group(4));
  EXPECT_EQ(c4[1].conductor(), 4);

  // Characters mod 15 with zero exponent on the 5-component come from mod 3.
  const auto c15 = enumerate_characters(build_group(15));
  int from3 = 0;
  for (const auto& chi : c15)
    if (chi.exponents()[0] != 0 && chi.exponents()[1] == 0) {
      EXPECT_EQ(chi.conductor(), 3);
      ++from3;
    }
  EXPECT_EQ(from3, 1);
}

TEST(Characters, ConductorMatchesBruteForce) {
  for (std::int64_t q = 1; q <= 150; ++q)
    for (const auto& chi : enumerate_characters(build_group(q)))
      ASSERT_EQ(chi.conductor(), oracle::brute_conductor(chi.value_table(), q))
          << "q = " << q << " index " << chi.index();
}

TEST(Characters, DistinctAndMultiplicative) {
  for (std::int64_t q : {1, 2, 9, 16, 24, 25, 27, 32, 45, 60, 64, 97, 100}) {
    const auto chars = enumerate_characters(build_group(q));
    std::set<std::vector<std::pair<double, double>>> seen;
    for (const auto& chi : chars) {
      std::vector<std::pair<double, double>> key;
      for (std::int64_t n = 0; n < q; ++n) {
        const auto v = chi(n);
        key.emplace_back(std::round(v.real() * 1e9), std::round(v.imag() * 1e9));
        // Periodic.
        ASSERT_LT(std::abs(chi(n + q) - v), 1e-12);
      }
      seen.insert(key);
    }
    EXPECT_EQ(seen.size(), chars.size()) << q;
  }
}

TEST(Characters, MultiplicativityProperty) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 300);
    const auto chars = enumerate_characters(build_group(q));
    const auto& chi = chars[rng() % chars.size()];
    for (int k = 0; k < 200; ++k) {
      const std::int64_t m = 1 + static_cast<std::int64_t>(rng() % 1000);
      const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 1000);
      ASSERT_LT(std::abs(chi(m * n) - chi(m) * chi(n)), 1e-12) << q << " " << m << " " << n;
    }
  }
}

TEST(Characters, Orthogonality) {
  for (std::int64_t q = 1; q <= 200; ++q) {
    const auto chars = enumerate_characters(build_group(q));
    for (const auto& chi : chars) {
      std::complex<double> s{};
      for (std::int64_t n = 1; n <= q; ++n) s += chi(n);
      if (chi.is_principal())
        ASSERT_NEAR(s.real(), static_cast<double>(euler_phi(q)), 1e-9);
      else
        ASSERT_LT(std::abs(s), 1e-9) << q << " " << chi.index();
    }
    for (std::int64_t n = 1; n <= q; ++n) {
      if (std::gcd(n, q) != 1) continue;
      std::complex<double> s{};
      for (const auto& chi : chars) s += chi(n);
      if (n % q == 1 % q)
        ASSERT_NEAR(s.real(), static_cast<double>(euler_phi(q)), 1e-9);
      else
        ASSERT_LT(std::abs(s), 1e-9);
    }
  }
}

TEST(Characters, PrimitiveCounts) {
  for (std::int64_t q = 1; q <= 500; ++q) {
    const auto chars = enumerate_characters(build_group(q));
    const auto prim = std::count_if(chars.begin(), chars.end(), [](auto& c) { return c.is_primitive(); });
    ASSERT_EQ(prim, primitive_count_formula(q)) << q;
  }
  EXPECT_EQ(primitive_count_formula(5), 3);
  EXPECT_EQ(primitive_count_formula(8), 2);
  EXPECT_EQ(primitive_count_formula(2), 0);
}

TEST(Characters, LargeModulus) {
  const auto g = build_group(999983);  // prime
  EXPECT_EQ(g->order(), 999982);
  Character chi(g, {1}, 1);
  EXPECT_EQ(chi.conductor(), 999983);
  EXPECT_LT(std::abs(chi(2) * chi(3) - chi(6)), 1e-12);
}

}  // namespace
}  // namespace smoothchar

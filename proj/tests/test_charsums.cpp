#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "smoothchar/charsums.hpp"

namespace smoothchar {
namespace {

Character chi_mod3() { return enumerate_characters(build_group(3))[1]; }
Character trivial() { return enumerate_characters(build_group(1))[0]; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

TEST(Weights, Kinds) {
  const auto ones = WeightSequence::ones();
  EXPECT_EQ(ones(17), std::complex<double>(1.0, 0.0));
  EXPECT_EQ(ones.name(), "ones");

  const auto r1 = WeightSequence::random_unit(7), r2 = WeightSequence::random_unit(7);
  const auto r3 = WeightSequence::random_unit(8);
  int differ = 0;
  for (std::int64_t n = 1; n < 1000; ++n) {
    EXPECT_EQ(r1(n), r2(n));
    EXPECT_NEAR(std::abs(r1(n)), 1.0, 1e-15);
    differ += r1(n) != r3(n);
  }
  EXPECT_GT(differ, 990);

  const auto mu = WeightSequence::moebius(100);
  EXPECT_EQ(mu(1).real(), 1.0);
  EXPECT_EQ(mu(6).real(), 1.0);
  EXPECT_EQ(mu(30).real(), -1.0);
  EXPECT_EQ(mu(12).real(), 0.0);
  EXPECT_THROW(mu(101), RangeError);
}

TEST(Weights, FileBacked) {
  const auto ok = temp_file("sc_weights_ok.csv", "n,re,im\n1,0.6,0.8\n3,-1,0\n");
  const auto w = WeightSequence::from_file(ok.string());
  EXPECT_EQ(w(1), std::complex<double>(0.6, 0.8));
  EXPECT_EQ(w(2), std::complex<double>(0.0, 0.0));
  EXPECT_EQ(w(3), std::complex<double>(-1.0, 0.0));
  EXPECT_EQ(w(1000), std::complex<double>(0.0, 0.0));

  const auto bad = temp_file("sc_weights_bad.csv", "n,re,im\n1,0.9,0.9\n");
  EXPECT_THROW(WeightSequence::from_file(bad.string()), ParameterError);
  const auto junk = temp_file("sc_weights_junk.csv", "n,re\nabc,1\n");
  EXPECT_THROW(WeightSequence::from_file(junk.string()), ParameterError);
  EXPECT_THROW(WeightSequence::from_file("/nonexistent/weights.csv"), ParameterError);
}

TEST(CharSum, Examples) {
  const auto s = sieve_smooth(10, 3);
  EXPECT_EQ(char_sum(chi_mod3(), WeightSequence::ones(), 10, s), std::complex<double>(0.0, 0.0));

  const auto big = sieve_smooth(5000, 30);
  for (std::int64_t t : {1, 10, 999, 5000})
    EXPECT_EQ(char_sum(trivial(), WeightSequence::ones(), t, big).real(),
              static_cast<double>(big.count_upto(t)));

  for (std::int64_t q : {6, 10, 49}) {
    const auto principal = enumerate_characters(build_group(q))[0];
    std::int64_t coprime = 0;
    for (auto n : big.members())
      if (n <= 3000 && std::gcd(n, q) == 1) ++coprime;
    EXPECT_EQ(char_sum(principal, WeightSequence::ones(), 3000, big).real(), static_cast<double>(coprime));
  }
  EXPECT_THROW(char_sum(chi_mod3(), WeightSequence::ones(), 11, s), RangeError);
}

TEST(CharSum, DirectOracle) {
  const auto s = sieve_smooth(3000, 13);
  const auto w = WeightSequence::random_unit(3);
  for (const auto& chi : enumerate_characters(build_group(20))) {
    std::complex<double> want{};
    for (std::int64_t n = 1; n <= 2500; ++n)
      if (oracle::largest_prime_factor(n) <= 13) want += w(n) * chi(n);
    EXPECT_LT(std::abs(char_sum(chi, w, 2500, s) - want), 1e-9);
  }
}

TEST(CharSumProfile, Examples) {
  const auto s = sieve_smooth(10, 3);
  const std::vector<std::int64_t> pts{5, 10};
  const auto p = char_sum_profile(chi_mod3(), WeightSequence::ones(), pts, s);
  ASSERT_EQ(p.sums.size(), 2u);
  EXPECT_EQ(p.sums[0], std::complex<double>(1.0, 0.0));
  EXPECT_EQ(p.sums[1], std::complex<double>(0.0, 0.0));
  EXPECT_EQ(p.psis, (std::vector<std::int64_t>{4, 7}));

  const auto big = sieve_smooth(2000, 11);
  const std::vector<std::int64_t> members(big.members().begin(), big.members().end());
  const auto run = char_sum_profile(trivial(), WeightSequence::ones(), members, big);
  for (std::size_t i = 0; i < members.size(); ++i) ASSERT_EQ(run.sums[i].real(), double(i + 1));

  const std::vector<std::int64_t> only_x{2000};
  EXPECT_EQ(char_sum_profile(chi_mod3(), WeightSequence::ones(), only_x, big).sums[0],
            char_sum(chi_mod3(), WeightSequence::ones(), 2000, big));

  const std::vector<std::int64_t> unsorted{10, 5};
  EXPECT_THROW(char_sum_profile(chi_mod3(), WeightSequence::ones(), unsorted, s), ParameterError);
  const std::vector<std::int64_t> beyond{5, 11};
  EXPECT_THROW(char_sum_profile(chi_mod3(), WeightSequence::ones(), beyond, s), RangeError);
}

TEST(CharSumProfile, PrefixConsistencyAndTriangleBound) {
  std::mt19937_64 rng(5);
  const auto s = sieve_smooth(20000, 50);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 60);
    const auto chars = enumerate_characters(build_group(q));
    const auto& chi = chars[rng() % chars.size()];
    const auto w = trial % 2 ? WeightSequence::random_unit(rng()) : WeightSequence::ones();
    std::vector<std::int64_t> pts;
    for (std::int64_t t = 1 + static_cast<std::int64_t>(rng() % 100); t <= 20000;
         t += 1 + static_cast<std::int64_t>(rng() % 3000))
      pts.push_back(t);
    const auto p = char_sum_profile(chi, w, pts, s);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ASSERT_EQ(p.sums[i], char_sum(chi, w, pts[i], s));  // bit-identical
      ASSERT_LE(std::abs(p.sums[i]), static_cast<double>(p.psis[i]) * (1 + 1e-12));
      ASSERT_EQ(p.psis[i], s.count_upto(pts[i]));
    }
  }
}

TEST(TSum, Examples) {
  const auto s = sieve_smooth(10, 3);
  const auto ones = WeightSequence::ones();
  EXPECT_EQ(t_sum(chi_mod3(), ones, 0, 5, s), std::complex<double>(-1.0, 0.0));
  EXPECT_EQ(t_sum(chi_mod3(), ones, 0, 5, s),
            char_sum(chi_mod3(), ones, 10, s) - char_sum(chi_mod3(), ones, 5, s));
  EXPECT_THROW(t_sum(chi_mod3(), ones, 0, 6, s), RangeError);
  EXPECT_THROW(t_sum(chi_mod3(), ones, -1, 5, s), ParameterError);

  const auto big = sieve_smooth(4000, 19);
  for (std::int64_t j : {0, 1, 2, 7, 150}) {
    std::complex<double> want{};
    for (std::int64_t n = 901; n <= 1800; ++n)
      if (oracle::largest_prime_factor(n) <= 19)
        want += std::polar(1.0, 2.0 * std::numbers::pi * double(j) * double(n - 900) / 900.0);
    EXPECT_LT(std::abs(t_sum(trivial(), ones, j, 900, big) - want), 1e-9) << j;
  }
}

TEST(TSum, BulkMatchesSingle) {
  const auto s = sieve_smooth(6000, 23);
  const auto w = WeightSequence::random_unit(11);
  for (const auto& chi : enumerate_characters(build_group(9))) {
    const auto all = t_sums(chi, w, 1500, 3000, 40, s);
    for (std::int64_t j = 0; j <= 40; ++j) ASSERT_EQ(all[j], t_sum(chi, w, j, 1500, s));
  }
}

TEST(FrakS, Examples) {
  const auto s = sieve_smooth(10, 3);
  const auto ones = WeightSequence::ones();
  EXPECT_EQ(frak_s(chi_mod3(), ones, 5, 0, s), 1.0);
  EXPECT_EQ(frak_s(chi_mod3(), ones, 5, 0, s), std::abs(t_sum(chi_mod3(), ones, 0, 5, s)));

  const auto big = sieve_smooth(8000, 29);
  for (const auto& chi : enumerate_characters(build_group(7))) {
    double want = 0.0;
    for (std::int64_t j = 0; j <= 30; ++j) want += (j == 0 ? 1.0 : 1.0 / j) * std::abs(t_sum(chi, ones, j, 2000, big));
    EXPECT_NEAR(frak_s(chi, ones, 2000, 30, big), want, 1e-9 * want);
    EXPECT_GE(frak_s(chi, ones, 2000, 30, big), 0.0);
  }
}

TEST(FrakS, CauchyAggregation) {
  const auto s = sieve_smooth(16000, 40);
  for (const auto& w : {WeightSequence::ones(), WeightSequence::random_unit(4)})
    for (std::int64_t q : {1, 5, 8, 12})
      for (const auto& chi : primitive_characters(build_group(q)))
        for (std::int64_t m : {1000, 3000, 8000})
          for (std::int64_t J : {0, 1, 10, 100}) {
            const auto t = t_sums(chi, w, m, 2 * m, J, s);
            double wsum = 0.0, wsq = 0.0;
            for (std::int64_t j = 0; j <= J; ++j) {
              wsum += frak_weight(j);
              wsq += frak_weight(j) * std::norm(t[j]);
            }
            const double lhs = std::pow(frak_s_from(t), 2);
            ASSERT_LE(lhs, wsum * wsq * (1 + 1e-9)) << q << " " << m << " " << J;
          }
}

TEST(LargeSieve, Examples) {
  const auto s = sieve_smooth(20000, 100);
  const auto ones = WeightSequence::ones();
  EXPECT_EQ(large_sieve_ratio(1, s, ones), 1.0);
  for (std::int64_t Q : {2, 5, 10}) EXPECT_GE(large_sieve_ratio(Q, s, ones), 1.0);

  const auto empty = temp_file("sc_weights_zero.csv", "n,re,im\n");
  const auto r = large_sieve(7, s, WeightSequence::from_file(empty.string()));
  EXPECT_EQ(r.ratio, 0.0);
  EXPECT_EQ(r.rhs, 0.0);

  const auto rnd = large_sieve(10, s, WeightSequence::random_unit(1));
  EXPECT_TRUE(std::isfinite(rnd.ratio));
  EXPECT_GT(rnd.ratio, 0.0);
  // |b_n| = 1, so the right side is psi^2 up to rounding in |b_n|^2.
  const double psi2 = static_cast<double>(s.count()) * static_cast<double>(s.count());
  EXPECT_NEAR(rnd.rhs, psi2, 1e-9 * psi2);
}

TEST(LargeSieve, IndependentOfThreads) {
  const auto s = sieve_smooth(20000, 100);
  const auto w = WeightSequence::random_unit(2);
  EXPECT_EQ(large_sieve(12, s, w, 1).lhs, large_sieve(12, s, w, 4).lhs);
}

TEST(PrimitiveFamily, Ordering) {
  const auto fam = primitive_family(8);
  // q = 1: 1, q = 3: 1, q = 4: 1, q = 5: 3, q = 7: 5, q = 8: 2, q = 2 and 6: 0.
  EXPECT_EQ(fam.size(), 13u);
  for (std::size_t i = 1; i < fam.size(); ++i)
    EXPECT_TRUE(fam[i - 1].modulus() < fam[i].modulus() ||
                (fam[i - 1].modulus() == fam[i].modulus() && fam[i - 1].index() < fam[i].index()));
  EXPECT_THROW(primitive_family(0), ParameterError);
}

}  // namespace
}  // namespace smoothchar

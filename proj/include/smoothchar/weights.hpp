#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "smoothchar/error.hpp"
#include "smoothchar/smooth_set.hpp"

namespace smoothchar {

// Slack allowed when validating |a_n| <= 1 for file-backed weights, so that
// unit values written in decimal survive the round trip.
inline constexpr double kWeightModulusSlack = 1e-12;

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// A bounded coefficient sequence a_1, a_2, ... with |a_n| <= 1.
class WeightSequence {
 public:
  enum class Kind { kOnes, kMoebius, kRandomUnit, kFile };

  static WeightSequence ones() { return WeightSequence(Kind::kOnes); }

  // mu(n) for n <= limit.
  static WeightSequence moebius(std::int64_t limit) {
    WeightSequence w(Kind::kMoebius);
    const auto mu = moebius_sieve(limit);
    auto table = std::make_shared<std::vector<std::complex<double>>>(mu.size());
    for (std::size_t n = 0; n < mu.size(); ++n) (*table)[n] = double(mu[n]);
    w.table_ = std::move(table);
    return w;
  }

  // a_n = e(theta_n), theta_n in [0, 1) drawn from splitmix64(seed, n). Any n
  // can be queried directly, and the same seed gives the same sequence.
  static WeightSequence random_unit(std::uint64_t seed) {
    WeightSequence w(Kind::kRandomUnit);
    w.seed_ = seed;
    return w;
  }

  // Reads a CSV with header `n,re,im` (the `im` column is optional). Absent
  // indices are zero.
  static WeightSequence from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open weight file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParameterError("weight file '" + path + "' is empty");
    const bool has_im = line.find("im") != std::string::npos;
    std::map<std::int64_t, std::complex<double>> values;
    std::int64_t max_n = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      for (char& ch : line)
        if (ch == ',') ch = ' ';
      std::istringstream row(line);
      std::int64_t n = 0;
      double re = 0.0, im = 0.0;
      if (!(row >> n >> re) || (has_im && !(row >> im)) || n < 1)
        throw ParameterError("malformed weight row at " + path + ":" + std::to_string(line_no));
      const std::complex<double> a(re, im);
      if (std::abs(a) > 1.0 + kWeightModulusSlack)
        throw ParameterError("weight a_" + std::to_string(n) + " has modulus > 1 in " + path);
      values[n] = a;
      max_n = std::max(max_n, n);
    }
    WeightSequence w(Kind::kFile);
    auto table = std::make_shared<std::vector<std::complex<double>>>(max_n + 1);
    for (const auto& [n, a] : values) (*table)[n] = a;
    w.table_ = std::move(table);
    w.path_ = path;
    return w;
  }

  Kind kind() const { return kind_; }

  std::string name() const {
    switch (kind_) {
      case Kind::kOnes: return "ones";
      case Kind::kMoebius: return "moebius";
      case Kind::kRandomUnit: return "random_unit(" + std::to_string(seed_) + ")";
      case Kind::kFile: return "file(" + path_ + ")";
    }
    return "";
  }

  // Largest index this sequence can answer for.
  std::int64_t limit() const {
    if (kind_ == Kind::kMoebius) return static_cast<std::int64_t>(table_->size()) - 1;
    return std::numeric_limits<std::int64_t>::max();
  }

  std::complex<double> operator()(std::int64_t n) const {
    switch (kind_) {
      case Kind::kOnes:
        return {1.0, 0.0};
      case Kind::kRandomUnit: {
        const std::uint64_t h = splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(n)));
        const double theta = static_cast<double>(h >> 11) * 0x1.0p-53;
        return {std::cos(2.0 * std::numbers::pi * theta),
                std::sin(2.0 * std::numbers::pi * theta)};
      }
      case Kind::kMoebius:
        if (n >= static_cast<std::int64_t>(table_->size()))
          throw RangeError("Moebius weights only cover n <= " + std::to_string(table_->size() - 1));
        return (*table_)[n];
      case Kind::kFile:
        return n < static_cast<std::int64_t>(table_->size()) ? (*table_)[n]
                                                             : std::complex<double>{};
    }
    return {};
  }

 private:
  explicit WeightSequence(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::uint64_t seed_ = 0;
  std::string path_;
  std::shared_ptr<const std::vector<std::complex<double>>> table_;
};

}  // namespace smoothchar

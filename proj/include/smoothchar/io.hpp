#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "smoothchar/charsums.hpp"
#include "smoothchar/dirichlet.hpp"
#include "smoothchar/error.hpp"
#include "smoothchar/exceptional.hpp"
#include "smoothchar/kernel.hpp"
#include "smoothchar/smooth_set.hpp"

namespace smoothchar::io {

using nlohmann::json;

// Shortest-round-trip-safe decimal form of a double.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to `path.tmp` and renames over `path`, so readers never observe a
// partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw RangeError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw RangeError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw RangeError("cannot move output into place at '" + path.string() + "'");
  }
}

inline std::string smooth_set_csv(const SmoothSet& s) {
  std::string out = "n\n";
  out.reserve(out.size() + static_cast<std::size_t>(s.count()) * 8);
  for (const auto n : s.members()) {
    out += std::to_string(n);
    out += '\n';
  }
  return out;
}

inline json character_json(const Character& chi) {
  return {{"q", chi.modulus()},
          {"index", chi.index()},
          {"exponents", std::vector<std::int64_t>(chi.exponents().begin(), chi.exponents().end())},
          {"order", chi.order()},
          {"conductor", chi.conductor()},
          {"is_primitive", chi.is_primitive()}};
}

inline json character_table_json(std::span<const Character> chars) {
  json arr = json::array();
  for (const auto& c : chars) arr.push_back(character_json(c));
  return arr;
}

inline std::string profile_csv(std::span<const SumProfile> profiles) {
  std::ostringstream os;
  os << "q,chi_index,t,re_S,im_S,psi_t\n";
  for (const auto& p : profiles)
    for (std::size_t i = 0; i < p.checkpoints.size(); ++i)
      os << p.q << ',' << p.chi_index << ',' << p.checkpoints[i] << ',' << fmt(p.sums[i].real())
         << ',' << fmt(p.sums[i].imag()) << ',' << p.psis[i] << '\n';
  return os.str();
}

inline json large_sieve_json(const LargeSieveReport& r) {
  return {{"Q", r.Q},     {"x", r.x},     {"y", r.y},        {"weight_kind", r.weight_kind},
          {"lhs", r.lhs}, {"rhs", r.rhs}, {"ratio", r.ratio}};
}

// Rows j = 0 .. J. The bound column is min{1/(pi j), 1/(2 pi^2 j^2 delta)}
// for j >= 1 and 1 at j = 0 (|c_0| = xi <= 1).
inline std::string kernel_coeff_csv(const SmoothingKernel& k) {
  std::ostringstream os;
  os << "j,re_c,im_c,bound\n";
  for (std::int64_t j = 0; j <= k.truncation(); ++j) {
    const auto c = k.coeff(j);
    os << j << ',' << fmt(c.real()) << ',' << fmt(c.imag()) << ','
       << fmt(j == 0 ? 1.0 : k.coefficient_bound(j)) << '\n';
  }
  return os.str();
}

// u = k / points for k = 0 .. points - 1.
inline std::string kernel_grid_csv(const SmoothingKernel& k, std::int64_t points) {
  std::ostringstream os;
  os << "u,f_exact,f_truncated\n";
  for (std::int64_t i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(points);
    os << fmt(u) << ',' << fmt(k.eval_exact(u)) << ',' << fmt(k.eval_truncated(u)) << '\n';
  }
  return os.str();
}

inline json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

inline json exceptional_json(const ExceptionalReport& r) {
  const auto& p = r.params;
  json params = {{"x", p.x},
                 {"y", p.y},
                 {"z", p.z},
                 {"Q", p.Q},
                 {"delta", p.delta},
                 {"c", p.c},
                 {"weight_kind", p.weight_kind},
                 {"criterion", p.criterion == Criterion::kThreshold ? "threshold" : "dgs"},
                 {"beta", optional_number(p.beta)},
                 {"vary_u", p.vary_u},
                 {"t_min", p.t_min}};
  json pairs = json::array();
  for (const auto& rec : r.per_pair)
    pairs.push_back({{"q", rec.q},
                     {"chi_index", rec.chi_index},
                     {"max_ratio", rec.max_ratio},
                     {"argmax_t", rec.argmax_t},
                     {"exceptional", rec.exceptional}});
  return {{"params", params},
          {"E", r.E},
          {"total_pairs", r.total_pairs},
          {"bound_value", optional_number(r.bound_value)},
          {"comparison_value", optional_number(r.comparison_value)},
          {"per_pair", pairs}};
}

inline std::string exceptional_csv(const ExceptionalReport& r) {
  std::ostringstream os;
  os << "q,chi_index,max_ratio,argmax_t,exceptional\n";
  for (const auto& rec : r.per_pair)
    os << rec.q << ',' << rec.chi_index << ',' << fmt(rec.max_ratio) << ',' << rec.argmax_t << ','
       << (rec.exceptional ? 1 : 0) << '\n';
  return os.str();
}

inline json dyadic_json(const DyadicReport& r) {
  json intervals = json::array();
  for (const auto& iv : r.intervals)
    intervals.push_back({{"m", iv.m},
                         {"end", iv.end},
                         {"psi_m", iv.psi_m},
                         {"psi_end", iv.psi_end},
                         {"E0", iv.E0},
                         {"E1", iv.E1},
                         {"E2", iv.E2}});
  return {{"x", r.x},
          {"y", r.y},
          {"z", r.z},
          {"Q", r.Q},
          {"delta", r.delta},
          {"J", r.J},
          {"weight_kind", r.weight_kind},
          {"total_pairs", r.total_pairs},
          {"M", r.intervals.size()},
          {"endpoint_bound", r.endpoint_bound},
          {"frak_bound", r.frak_bound},
          {"endpoint_violations", r.endpoint_violations()},
          {"intervals", intervals}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace smoothchar::io

#pragma once

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smoothchar/io.hpp"
#include "smoothchar/smoothchar.hpp"

namespace smoothchar::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kParameter = 2, kRange = 3 };

// Raw flag text for one invocation; numbers stay strings until validation
// so that `--x 1e6` style input is accepted everywhere.
struct RunConfig {
  std::string command;
  std::string x, y, z, q, q_max, delta, xi, c, beta, J, seed = "0", kappa = "1";
  std::string chi, checkpoints, weights = "ones", out, format, grid_out, grid_points = "1000";
  std::string segment;
  std::string threads;
  bool vary_u = false;
  bool primitive_only = false;
};

namespace detail {

inline double parse_real(const std::string& name, const std::string& text) {
  if (text.empty()) throw ParameterError("missing required --" + name);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParameterError("--" + name + " expects a number, got '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v))
    throw ParameterError("--" + name + " expects a number, got '" + text + "'");
  return v;
}

// Integral flags accept scientific notation and are floored.
inline std::int64_t parse_int(const std::string& name, const std::string& text) {
  const double v = std::floor(parse_real(name, text));
  if (v < -9.0e18 || v > 9.0e18) throw RangeError("--" + name + " = " + text + " is out of range");
  return static_cast<std::int64_t>(v);
}

inline std::optional<std::int64_t> parse_opt_int(const std::string& name, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_int(name, text);
}

inline WeightSequence parse_weights(const std::string& spec, std::uint64_t seed, std::int64_t x) {
  if (spec == "ones") return WeightSequence::ones();
  if (spec == "moebius") return WeightSequence::moebius(x);
  if (spec == "random" || spec == "random_unit") return WeightSequence::random_unit(seed);
  if (spec.rfind("file:", 0) == 0) return WeightSequence::from_file(spec.substr(5));
  throw ParameterError("unknown weights '" + spec + "' (ones|moebius|random|file:PATH)");
}

inline std::vector<std::int64_t> parse_list(const std::string& name, const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_int(name, item));
  return out;
}

inline void emit(std::ostream& out, const std::string& path, const std::string& content) {
  if (path.empty())
    out << content;
  else
    io::write_atomic(path, content);
}

}  // namespace detail

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int run() {
    const auto& cmd = cfg_.command;
    threads_ = cfg_.threads.empty() ? 0u : static_cast<unsigned>(positive("threads", cfg_.threads));
    if (cmd == "sieve") return sieve();
    if (cmd == "psi") return psi_cmd();
    if (cmd == "chars") return chars();
    if (cmd == "sum") return sum();
    if (cmd == "large-sieve") return large_sieve_cmd();
    if (cmd == "kernel") return kernel();
    if (cmd == "exceptional") return exceptional();
    if (cmd == "dgs") return dgs();
    if (cmd == "dyadic") return dyadic();
    throw ParameterError("unknown command '" + cmd + "'");
  }

 private:
  std::int64_t positive(const std::string& name, const std::string& text) {
    const auto v = detail::parse_int(name, text);
    if (v < 1) throw ParameterError("--" + name + " must be >= 1");
    return v;
  }

  SieveOptions sieve_options() const {
    SieveOptions opt;
    opt.threads = threads_;
    if (!cfg_.segment.empty()) opt.segment_size = detail::parse_int("segment", cfg_.segment);
    if (opt.segment_size < 1) throw ParameterError("--segment must be >= 1");
    return opt;
  }

  SmoothSet smooth_xy() {
    const auto x = detail::parse_int("x", cfg_.x);
    const auto y = detail::parse_int("y", cfg_.y);
    return sieve_smooth(x, y, sieve_options());
  }

  WeightSequence weights(std::int64_t x) {
    const auto seed = static_cast<std::uint64_t>(detail::parse_int("seed", cfg_.seed));
    return detail::parse_weights(cfg_.weights, seed, x);
  }

  std::string format(const std::string& fallback) const {
    const std::string f = cfg_.format.empty() ? fallback : cfg_.format;
    if (f != "csv" && f != "json") throw ParameterError("--format must be csv or json");
    return f;
  }

  int sieve() {
    const auto s = smooth_xy();
    detail::emit(out_, cfg_.out, io::smooth_set_csv(s));
    if (!cfg_.out.empty()) out_ << "psi(" << s.x() << ", " << s.y() << ") = " << s.count() << "\n";
    return kOk;
  }

  int psi_cmd() {
    const auto x = detail::parse_int("x", cfg_.x);
    const auto y = detail::parse_int("y", cfg_.y);
    if (cfg_.delta.empty()) {
      out_ << psi(x, y, sieve_options()) << "\n";
      return kOk;
    }
    const double delta = detail::parse_real("delta", cfg_.delta);
    const double kappa = detail::parse_real("kappa", cfg_.kappa);
    if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("--delta must lie in (0, 1]");
    if (!local_ratio_in_range(x, y, delta, kappa))
      err_ << "warning: delta = " << delta << " is not above min{1/x, y^-kappa}\n";
    const double r = psi_local_ratio(x, y, delta, sieve_options());
    out_ << psi(x, y, sieve_options()) << "\n" << "local_ratio " << io::fmt(r) << "\n";
    return kOk;
  }

  int chars() {
    const auto q = positive("q", cfg_.q);
    auto chars = enumerate_characters(build_group(q));
    if (cfg_.primitive_only)
      std::erase_if(chars, [](const Character& c) { return !c.is_primitive(); });
    std::int64_t primitive = 0;
    for (const auto& c : chars) primitive += c.is_primitive();
    std::string content;
    if (format("json") == "json") {
      content = io::dump(io::character_table_json(chars));
    } else {
      std::ostringstream os;
      os << "q,index,exponents,order,conductor,is_primitive\n";
      for (const auto& c : chars) {
        os << c.modulus() << ',' << c.index() << ',';
        for (std::size_t i = 0; i < c.exponents().size(); ++i) os << (i ? ";" : "") << c.exponents()[i];
        os << ',' << c.order() << ',' << c.conductor() << ',' << (c.is_primitive() ? 1 : 0) << '\n';
      }
      content = os.str();
    }
    detail::emit(out_, cfg_.out, content);
    if (!cfg_.out.empty())
      out_ << "q = " << q << ": " << chars.size() << " characters, " << primitive << " primitive\n";
    return kOk;
  }

  int sum() {
    const auto s = smooth_xy();
    const auto q = positive("q", cfg_.q);
    const auto a = weights(s.x());
    auto chars = enumerate_characters(build_group(q));
    if (!cfg_.chi.empty()) {
      const auto idx = detail::parse_int("chi", cfg_.chi);
      if (idx < 0 || idx >= static_cast<std::int64_t>(chars.size()))
        throw RangeError("--chi " + cfg_.chi + " outside [0, " + std::to_string(chars.size()) + ")");
      chars = {chars[static_cast<std::size_t>(idx)]};
    }
    auto points = cfg_.checkpoints.empty() ? std::vector<std::int64_t>{s.x()}
                                           : detail::parse_list("checkpoints", cfg_.checkpoints);
    std::vector<SumProfile> profiles;
    for (const auto& chi : chars) profiles.push_back(char_sum_profile(chi, a, points, s));
    detail::emit(out_, cfg_.out, io::profile_csv(profiles));
    if (!cfg_.out.empty())
      out_ << profiles.size() << " characters x " << points.size() << " checkpoints written\n";
    return kOk;
  }

  int large_sieve_cmd() {
    const auto s = smooth_xy();
    const auto Q = positive("q-max", cfg_.q_max);
    const auto r = large_sieve(Q, s, weights(s.x()), threads_);
    detail::emit(out_, cfg_.out, io::dump(io::large_sieve_json(r)));
    if (!cfg_.out.empty()) out_ << "ratio = " << io::fmt(r.ratio) << "\n";
    return kOk;
  }

  int kernel() {
    const double delta = detail::parse_real("delta", cfg_.delta);
    const double xi = detail::parse_real("xi", cfg_.xi);
    const auto k = build_kernel(delta, xi, detail::parse_opt_int("J", cfg_.J));
    detail::emit(out_, cfg_.out, io::kernel_coeff_csv(k));
    if (!cfg_.grid_out.empty()) {
      const auto pts = positive("grid-points", cfg_.grid_points);
      io::write_atomic(cfg_.grid_out, io::kernel_grid_csv(k, pts));
    }
    if (!cfg_.out.empty()) {
      double worst = 0.0;
      for (std::int64_t j = 1; j <= k.truncation(); ++j)
        worst = std::max(worst, std::abs(k.coeff(j)) / k.coefficient_bound(j));
      out_ << "J = " << k.truncation() << ", max |c_j|/bound = " << io::fmt(worst) << "\n";
    }
    return kOk;
  }

  int write_exceptional(const ExceptionalReport& r) {
    const std::string content =
        format("json") == "json" ? io::dump(io::exceptional_json(r)) : io::exceptional_csv(r);
    detail::emit(out_, cfg_.out, content);
    if (!cfg_.out.empty()) {
      out_ << "E = " << r.E << " of " << r.total_pairs << " pairs";
      if (r.bound_value) out_ << ", bound " << io::fmt(*r.bound_value);
      out_ << "\n";
    }
    return kOk;
  }

  int exceptional() {
    const auto s = smooth_xy();
    const auto Q = positive("q-max", cfg_.q_max);
    const auto z = detail::parse_int("z", cfg_.z);
    const double delta = detail::parse_real("delta", cfg_.delta);
    const double c = cfg_.c.empty() ? 1.0 : detail::parse_real("c", cfg_.c);
    return write_exceptional(count_exceptional(s, Q, z, delta, c, weights(s.x()), threads_));
  }

  int dgs() {
    const auto s = smooth_xy();
    const auto Q = positive("q-max", cfg_.q_max);
    const double beta = cfg_.beta.empty() ? 0.0 : detail::parse_real("beta", cfg_.beta);
    return write_exceptional(dgs_exceptional_count(s, Q, beta, weights(s.x()), cfg_.vary_u, threads_));
  }

  int dyadic() {
    const auto s = smooth_xy();
    const auto Q = positive("q-max", cfg_.q_max);
    const auto z = detail::parse_int("z", cfg_.z);
    const double delta = detail::parse_real("delta", cfg_.delta);
    const auto r = dyadic_diagnostics(s, Q, z, delta, weights(s.x()), detail::parse_opt_int("J", cfg_.J), threads_);
    detail::emit(out_, cfg_.out, io::dump(io::dyadic_json(r)));
    if (!cfg_.out.empty()) {
      for (const auto& iv : r.intervals)
        out_ << "[" << iv.m << ", " << iv.end << "] E0 = " << iv.E0 << " E1 = " << iv.E1 << " E2 = " << iv.E2 << "\n";
      out_ << "M = " << r.intervals.size() << ", endpoint violations = " << r.endpoint_violations() << "\n";
    }
    return kOk;
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  unsigned threads_ = 0;
};

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return Runner(cfg, out, err).run();
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kParameter;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << "\n";
    return kRange;
  }
}

// Parses argv into a RunConfig and runs it.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
  CLI::App app{"Character sums over smooth numbers: sieving, characters, kernels and exceptional pairs"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--threads", cfg.threads, "worker threads (default $SMOOTHCHAR_THREADS or 1)");

  auto add = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };
  auto xy = [&](CLI::App* sub) {
    sub->add_option("--x", cfg.x, "upper bound x")->required();
    sub->add_option("--y", cfg.y, "smoothness bound y")->required();
    sub->add_option("--segment", cfg.segment, "sieve segment length");
  };
  auto weights = [&](CLI::App* sub) {
    sub->add_option("--weights", cfg.weights, "ones | moebius | random | file:PATH");
    sub->add_option("--seed", cfg.seed, "seed for random weights");
  };
  auto output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
    sub->add_option("--threads", cfg.threads, "worker threads");
  };

  auto* sieve = add("sieve", "list the y-smooth integers up to x as CSV");
  xy(sieve);
  output(sieve);

  auto* psi = add("psi", "print psi(x, y)");
  xy(psi);
  psi->add_option("--delta", cfg.delta, "also print the local ratio at this delta");
  psi->add_option("--kappa", cfg.kappa, "kappa for the delta range warning");
  psi->add_option("--threads", cfg.threads, "worker threads");

  auto* chars = add("chars", "character table of (Z/qZ)^*");
  chars->add_option("--q", cfg.q, "modulus")->required();
  chars->add_flag("--primitive-only", cfg.primitive_only, "only primitive characters");
  chars->add_option("--format", cfg.format, "json | csv");
  output(chars);

  auto* sum = add("sum", "character sum profile S_q(chi; A, t, y)");
  xy(sum);
  sum->add_option("--q", cfg.q, "modulus")->required();
  sum->add_option("--chi", cfg.chi, "character index (all when omitted)");
  sum->add_option("--checkpoints", cfg.checkpoints, "comma-separated t values (default x)");
  weights(sum);
  output(sum);

  auto* ls = add("large-sieve", "large sieve ratio over q <= Q");
  xy(ls);
  ls->add_option("--q-max", cfg.q_max, "Q")->required();
  weights(ls);
  output(ls);

  auto* kernel = add("kernel", "Fourier coefficients of the smoothed indicator");
  kernel->add_option("--delta", cfg.delta, "ramp half-width")->required();
  kernel->add_option("--xi", cfg.xi, "cut point")->required();
  kernel->add_option("--J", cfg.J, "truncation (default ceil(delta^-2))");
  kernel->add_option("--grid-out", cfg.grid_out, "grid evaluation CSV");
  kernel->add_option("--grid-points", cfg.grid_points, "grid size");
  output(kernel);

  auto* exc = add("exceptional", "count pairs with |S| > c delta psi for some t in [z, x]");
  xy(exc);
  exc->add_option("--z", cfg.z, "lower end of the t range")->required();
  exc->add_option("--q-max", cfg.q_max, "Q")->required();
  exc->add_option("--delta", cfg.delta, "delta")->required();
  exc->add_option("--c", cfg.c, "threshold constant (default 1)");
  exc->add_option("--format", cfg.format, "json | csv");
  weights(exc);
  output(exc);

  auto* dgs = add("dgs", "count pairs failing the (u log u)^4 (log x)^beta criterion");
  xy(dgs);
  dgs->add_option("--q-max", cfg.q_max, "Q")->required();
  dgs->add_option("--beta", cfg.beta, "beta (default 0)");
  dgs->add_flag("--vary-u", cfg.vary_u, "use u = log t / log y at each t");
  dgs->add_option("--format", cfg.format, "json | csv");
  weights(dgs);
  output(dgs);

  auto* dy = add("dyadic", "per-interval counts E0, E1, E2 over the dyadic cover of [z, x]");
  xy(dy);
  dy->add_option("--z", cfg.z, "lower end")->required();
  dy->add_option("--q-max", cfg.q_max, "Q")->required();
  dy->add_option("--delta", cfg.delta, "delta")->required();
  dy->add_option("--J", cfg.J, "truncation (default ceil(delta^-2))");
  weights(dy);
  output(dy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg, out, err);
}

}  // namespace smoothchar::cli

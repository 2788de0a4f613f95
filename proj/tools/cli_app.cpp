// Copyright 2026 The modelock Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_app.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "modelock/contfrac.hpp"
#include "modelock/csv.hpp"
#include "modelock/decay.hpp"
#include "modelock/error.hpp"
#include "modelock/extrema.hpp"
#include "modelock/herman.hpp"
#include "modelock/locking.hpp"
#include "modelock/mapspec.hpp"
#include "modelock/rotation.hpp"

namespace modelock::cli {

namespace {

struct RunConfig {
  std::string map_spec;
  std::string map_file;
  long precision_bits = 128;
  bool precision_given = false;
  bool auto_precision = false;
  std::string tol;
  long grid = 0;
  std::vector<std::string> range;
  std::vector<std::string> a_range;
  long a_steps = 5;
  long samples = 201;
  std::string frac;
  std::string theta;
  long n_max = 8;
  long q = 21;
  long depth = 0;
  long k_max = 64;
  std::string tau;
  double slack = 0.25;
  bool verify_precision = false;
  std::string out_path;
  bool plot = false;
  int jobs = 0;
};

std::string fmt(const BigReal& x) { return to_string(x); }

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Bits fixed_bits(const RunConfig& cfg) { return Bits{std::max(cfg.precision_bits, kMinBits)}; }

CircleLift load_map(const RunConfig& cfg) {
  if (!cfg.map_spec.empty() && !cfg.map_file.empty()) throw Error(Errc::config_error, "give --map or --map-file, not both");
  if (!cfg.map_spec.empty()) return parse_map_spec(cfg.map_spec);
  if (!cfg.map_file.empty()) return load_map_file(cfg.map_file);
  throw Error(Errc::config_error, "a map is required (--map or --map-file)");
}

BigReal tolerance(const RunConfig& cfg, Bits bits) {
  if (!cfg.tol.empty()) {
    BigReal t = Expr::parse(cfg.tol).eval(bits);
    if (!(t > 0)) throw Error(Errc::config_error, "--tol must be positive");
    return t;
  }
  return ldexp2(-bits.value / 4, bits);
}

std::pair<BigReal, BigReal> parse_range(const std::vector<std::string>& r, Bits bits, const char* lo, const char* hi) {
  if (r.empty()) return {Expr::parse(lo).eval(bits), Expr::parse(hi).eval(bits)};
  return {Expr::parse(r.at(0)).eval(bits), Expr::parse(r.at(1)).eval(bits)};
}

Expr theta_for(const RunConfig& cfg, const CircleLift& base) {
  if (!cfg.theta.empty()) return Expr::parse(cfg.theta);
  if (base.kind() != LiftKind::trig_poly) return base.theta();
  throw Error(Errc::config_error, "--theta is required for trigpoly maps");
}

// Output sink: the --out file when given, else the caller's stream.
class Sink {
 public:
  Sink(const RunConfig& cfg, std::ostream& fallback) : fallback_(fallback) {
    if (!cfg.out_path.empty()) {
      file_.open(cfg.out_path, std::ios::binary);
      if (!file_) throw Error(Errc::config_error, "cannot write " + cfg.out_path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

void write_plot(const RunConfig& cfg, const std::string& body) {
  if (!cfg.plot) return;
  std::ofstream gp(cfg.out_path + ".gp", std::ios::binary);
  if (!gp) throw Error(Errc::config_error, "cannot write plot script");
  gp << "set datafile separator ','\nset datafile commentschars '#'\nset key off\n" << body;
}

int cmd_staircase(const RunConfig& cfg, std::ostream& out) {
  const CircleLift base = load_map(cfg);
  const Bits bits = fixed_bits(cfg);
  const auto [lo, hi] = parse_range(cfg.range, bits, "0", "1");
  const BigReal tol = tolerance(cfg, bits);
  const long grid = cfg.grid > 0 ? cfg.grid : default_extrema_grid(cfg.q);
  const auto pts = staircase(base, lo, hi, cfg.samples, cfg.q, grid, tol);
  Sink sink(cfg, out);
  CsvWriter csv(sink.stream(), {"t", "trans_lo", "trans_hi"});
  csv.comment("map: " + base.describe());
  csv.comment("precision_bits: " + std::to_string(bits.value) + " q: " + std::to_string(cfg.q));
  for (const auto& p : pts) csv.row({fmt(p.t), fmt(p.trans.lo), fmt(p.trans.hi)});
  write_plot(cfg, "set xlabel 't'\nset ylabel 'Trans(F_t)'\nplot '" + cfg.out_path +
                      "' skip 1 using 1:(($2+$3)/2) with lines\n");
  return kOk;
}

std::vector<std::string> tongue_fields(const TongueRecord& r) {
  return {std::to_string(r.p), std::to_string(r.q), fmt(r.t_minus), fmt(r.t_plus), fmt(r.width),
          std::string(to_string(r.flag))};
}

int cmd_tongue(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CircleLift base = load_map(cfg);
  if (cfg.frac.empty()) throw Error(Errc::config_error, "--frac P/Q is required");
  const Rational r = parse_rational(cfg.frac);
  if (!r.p.fits_slong_p() || !r.q.fits_slong_p()) throw Error(Errc::config_error, "fraction too large");
  const long p = r.p.get_si(), q = r.q.get_si();
  PrecisionPolicy policy;
  if (cfg.precision_given) policy.base_bits = cfg.precision_bits;
  const Bits bits = cfg.auto_precision ? Bits{effective_bits(policy, q)} : fixed_bits(cfg);
  PlateauOptions opts;
  opts.grid_n = cfg.grid;
  Sink sink(cfg, out);
  CsvWriter csv(sink.stream(), {"p", "q", "t_minus", "t_plus", "width", "flag"});
  csv.comment("map: " + base.describe());
  csv.comment("precision_bits: " + std::to_string(bits.value));
  try {
    csv.row(tongue_fields(plateau(base, p, q, tolerance(cfg, bits), bits, opts)));
  } catch (const Error& e) {
    if (e.code() == Errc::out_of_range) throw;
    err << e.what() << '\n';
    csv.row({std::to_string(p), std::to_string(q), "nan", "nan", "nan", "failed"});
    return kItemFailures;
  }
  return kOk;
}

int cmd_tongues2d(const RunConfig& cfg, std::ostream& out) {
  const Bits bits = fixed_bits(cfg);
  const auto [t_lo, t_hi] = parse_range(cfg.range, bits, "0", "1");
  const auto [a_lo, a_hi] = parse_range(cfg.a_range, bits, "0", "1/(4*pi)");
  const auto recs = tongues_2d(t_lo, t_hi, a_lo, a_hi, cfg.a_steps, cfg.q, tolerance(cfg, bits), bits);
  Sink sink(cfg, out);
  CsvWriter csv(sink.stream(), {"p", "q", "a", "t_minus", "t_plus"});
  csv.comment("family: standard, q_max: " + std::to_string(cfg.q));
  csv.comment("precision_bits: " + std::to_string(bits.value));
  int status = kOk;
  for (const auto& r : recs) {
    if (r.record.flag == TongueFlag::failed) status = kItemFailures;
    csv.row({std::to_string(r.record.p), std::to_string(r.record.q), fmt(r.a), fmt(r.record.t_minus),
             fmt(r.record.t_plus)});
  }
  write_plot(cfg, "set xlabel 't'\nset ylabel 'a'\nplot '" + cfg.out_path + "' skip 1 using 4:3 with points pt 7 ps 0.3, '" +
                      cfg.out_path + "' skip 1 using 5:3 with points pt 7 ps 0.3\n");
  return status;
}

long default_depth(const Expr& theta, Bits bits) {
  const CFExpansion cf = cf_expand(theta, 40, bits);
  long depth = 1;
  for (const auto& c : cf.convergents) {
    if (c.q > 60) break;
    depth = c.q.get_si();
  }
  return depth;
}

int cmd_modulus(const RunConfig& cfg, std::ostream& out) {
  const CircleLift base = load_map(cfg);
  const Bits bits = fixed_bits(cfg);
  const Expr theta = theta_for(cfg, base);
  const long depth = cfg.depth > 0 ? cfg.depth : default_depth(theta, bits);
  const long grid = cfg.grid > 0 ? cfg.grid : 4 * cfg.k_max;
  const auto g = rotation_frame_samples(base, theta.eval(bits), depth, grid, bits);
  const auto coeffs = fourier_coefficients(g, cfg.k_max);
  Sink sink(cfg, out);
  CsvWriter csv(sink.stream(), {"k", "re_ck", "im_ck", "log_abs_ck"});
  csv.comment("map: " + base.describe());
  csv.comment("theta: " + theta.text() + " depth: " + std::to_string(depth) +
              " precision_bits: " + std::to_string(bits.value));
  try {
    const ModulusEstimate est = modulus_estimate(coeffs, 2, std::max<long>(2, cfg.k_max / 2));
    csv.comment("tau_hat=" + fmt(est.tau_hat) + ", residual=" + fmt(est.residual) + ", k_lo=" +
                std::to_string(est.k_lo) + ", k_hi=" + std::to_string(est.k_hi) +
                (est.sentinel_infinite ? ", sentinel_infinite=1" : ""));
  } catch (const Error& e) {
    csv.comment(std::string("tau_hat=nan, error=") + e.what());
  }
  for (long k = 0; k <= cfg.k_max; ++k) {
    const BigComplex& c = coeffs[static_cast<size_t>(cfg.k_max + k)];
    const BigReal m = abs(c);
    csv.row({std::to_string(k), fmt(c.re), fmt(c.im), m.is_zero() ? "-inf" : fmt(log(m))});
  }
  write_plot(cfg, "set xlabel 'k'\nset ylabel 'log |c_k|'\nplot '" + cfg.out_path + "' skip 1 using 1:4 with linespoints\n");
  return kOk;
}

int cmd_decay(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const CircleLift base = load_map(cfg);
  const Expr theta = theta_for(cfg, base);
  DecayOptions opts;
  if (cfg.auto_precision) {
    if (cfg.precision_given) opts.policy.base_bits = cfg.precision_bits;
  } else {
    opts.policy = {cfg.precision_bits, 0, 0};
  }
  opts.slack_fraction = cfg.slack;
  opts.grid_n = cfg.grid;
  opts.verify_precision = cfg.verify_precision;

  double tau = 0.0;
  std::string source;
  if (!cfg.tau.empty()) {
    tau = Expr::parse(cfg.tau).eval(Bits{64}).to_double();
    source = "explicit";
  } else if (base.kind() == LiftKind::conjugated_rotation) {
    tau = univalence_oracle_tau(base.epsilon().eval(Bits{64}).to_double()).tau;
    source = "univalence-oracle";
  } else if (base.kind() == LiftKind::pure_rotation) {
    tau = 0.0;
    source = "none";
  } else {
    const Bits bits{128};
    tau = estimate_tau(base, theta.eval(bits), default_depth(theta, bits), 256, 64, bits).tau_hat;
    source = "fourier-decay";
  }

  const DecayReport rep = decay_report(base, theta, cfg.n_max, tau, source, opts);
  Sink sink(cfg, out);
  CsvWriter csv(sink.stream(), {"n", "p", "q", "width", "slope", "gap", "ratio", "precision_bits", "flag"});
  csv.comment("theta: " + rep.theta);
  csv.comment("tau_reference: " + fmt(rep.tau_reference) + " (" + rep.tau_source + ")");
  csv.comment("bound: " + fmt(rep.bound));
  csv.comment("slack: " + fmt(rep.slack) + " (" + fmt(opts.slack_fraction) +
              " of the bound magnitude; a tolerance convention)");
  csv.comment("map: " + rep.map);
  int status = kOk;
  for (const auto& r : rep.rows) {
    if (r.flag == RowFlag::failed) {
      status = kItemFailures;
      err << "row " << r.n << ": " << r.message << '\n';
    }
    csv.row({std::to_string(r.n), std::to_string(r.p), std::to_string(r.q), fmt(r.width),
             r.slope ? fmt(*r.slope) : "nan", fmt(r.gap), fmt(r.ratio), std::to_string(r.precision_bits),
             std::string(to_string(r.flag))});
  }
  write_plot(cfg, "set xlabel 'q_n'\nset ylabel 'log(width)/q_n'\nbound = " + fmt(rep.bound) + "\nplot '" +
                      cfg.out_path + "' skip 1 using 3:5 with linespoints, bound with lines\n");
  return status;
}

int cmd_convergents(const RunConfig& cfg, std::ostream& out) {
  if (cfg.theta.empty()) throw Error(Errc::config_error, "--theta is required");
  const Bits bits = fixed_bits(cfg);
  const Expr theta = Expr::parse(cfg.theta);
  const BigReal x = theta.eval(bits);
  const CFExpansion cf = cf_expand(x, cfg.n_max);
  Sink sink(cfg, out);
  CsvWriter csv(sink.stream(), {"n", "p", "q", "abs_error"});
  csv.comment("theta: " + theta.text() + " precision_bits: " + std::to_string(bits.value));
  if (cf.status == CFStatus::precision_exhausted) csv.comment("precision exhausted; expansion truncated");
  for (size_t n = 0; n < cf.size(); ++n) {
    const Rational& r = cf.convergents[n];
    csv.row({std::to_string(n), r.p.get_str(), r.q.get_str(), fmt(abs(x - r.value(bits)))});
  }
  return cf.status == CFStatus::precision_exhausted ? kItemFailures : kOk;
}

bool is_config_error(Errc code) {
  switch (code) {
    case Errc::parse_error:
    case Errc::config_error:
    case Errc::invalid_map:
    case Errc::invalid_epsilon:
    case Errc::out_of_range:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Mode-locking plateaus, Herman-ring moduli and decay along convergents"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool needs_map) {
    if (needs_map) {
      sub->add_option("--map", cfg.map_spec, "Inline map spec, e.g. 'standard a=1/(4*pi)'");
      sub->add_option("--map-file", cfg.map_file, "Key/value map document");
    }
    sub->add_option("--precision-bits", cfg.precision_bits, "Working precision (base bits with --auto-precision)")
        ->check(CLI::Range(53L, 1L << 20))
        ->each([&](const std::string&) { cfg.precision_given = true; });
    sub->add_option("--tol", cfg.tol, "Tolerance expression (default 2^(-P/4))");
    sub->add_option("--grid", cfg.grid, "Grid resolution")->check(CLI::Range(2L, 1L << 24));
    sub->add_option("--out", cfg.out_path, "Output CSV path (default stdout)");
    sub->add_flag("--plot", cfg.plot, "Also write a gnuplot script to <out>.gp");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 4096));
  };

  auto* st = app.add_subcommand("staircase", "Sample t -> Trans(F_t)");
  common(st, true);
  st->add_option("--range", cfg.range, "t range LO HI")->expected(2);
  st->add_option("--samples", cfg.samples, "Number of samples")->check(CLI::Range(2L, 1L << 24));
  st->add_option("--q", cfg.q, "Iterate depth for enclosures")->check(CLI::Range(1L, 1L << 20));

  auto* tg = app.add_subcommand("tongue", "Plateau I(p/q) of F + t");
  common(tg, true);
  tg->add_option("--frac", cfg.frac, "Fraction P/Q");
  tg->add_flag("--auto-precision", cfg.auto_precision, "Precision from the per-q policy");

  auto* t2 = app.add_subcommand("tongues2d", "Arnold tongues of the standard family");
  common(t2, false);
  t2->add_option("--range", cfg.range, "t range LO HI")->expected(2);
  t2->add_option("--a-range", cfg.a_range, "a range LO HI")->expected(2);
  t2->add_option("--a-steps", cfg.a_steps, "Number of a slices")->check(CLI::Range(1L, 1L << 20));
  t2->add_option("--q", cfg.q, "Largest denominator")->check(CLI::Range(1L, 1L << 20));

  auto* md = app.add_subcommand("modulus", "Fourier-decay estimate of the Herman-ring half-modulus");
  common(md, true);
  md->add_option("--theta", cfg.theta, "Translation number of the map");
  md->add_option("--depth", cfg.depth, "Birkhoff averaging depth (default: largest q_k <= 60)")
      ->check(CLI::Range(1L, 1L << 24));
  md->add_option("--k-max", cfg.k_max, "Highest Fourier mode")->check(CLI::Range(4L, 1L << 20));

  auto* dc = app.add_subcommand("decay", "Plateau widths along the convergents of theta");
  common(dc, true);
  dc->add_option("--theta", cfg.theta, "Irrational translation number (default: map theta)");
  dc->add_option("--n-max", cfg.n_max, "Last convergent index")->check(CLI::Range(2L, 64L));
  dc->add_flag("--auto-precision", cfg.auto_precision, "Precision from the per-q policy");
  dc->add_option("--tau", cfg.tau, "Explicit tau reference");
  dc->add_option("--slack", cfg.slack, "Slack as a fraction of 2 pi tau")->check(CLI::Range(0.0, 10.0));
  dc->add_flag("--verify-precision", cfg.verify_precision, "Recompute each row at +64 bits");

  auto* cv = app.add_subcommand("convergents", "Continued-fraction convergents of theta");
  common(cv, false);
  cv->add_option("--theta", cfg.theta, "Real number expression");
  cv->add_option("--n-max", cfg.n_max, "Last index")->check(CLI::Range(0L, 100000L));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (cfg.plot && cfg.out_path.empty()) throw Error(Errc::config_error, "--plot needs --out");
    if (cfg.jobs > 0) omp_set_num_threads(cfg.jobs);
    if (st->parsed()) return cmd_staircase(cfg, out);
    if (tg->parsed()) return cmd_tongue(cfg, out, err);
    if (t2->parsed()) return cmd_tongues2d(cfg, out);
    if (md->parsed()) return cmd_modulus(cfg, out);
    if (dc->parsed()) return cmd_decay(cfg, out, err);
    return cmd_convergents(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e.code()) ? kConfigError : kItemFailures;
  }
}

}  // namespace modelock::cli

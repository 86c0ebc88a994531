// Command-line surface for the library: every verifier, scan, and experiment,
// with CSV/JSON/SVG artifacts that are byte-identical across reruns.
//
// Exit codes: 0 success, 2 usage error, 3 budget exceeded, 4 a verification
// subcommand found a violated invariant. Usage errors carry a machine tag on
// stderr: error=unknown_flag | malformed_value | missing_parameter.

#include <algorithm>
#include <chrono>
#include <clocale>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cantor23/cantor.hpp"
#include "cantor23/digits.hpp"
#include "cantor23/experiments.hpp"
#include "cantor23/fourier.hpp"
#include "cantor23/psi.hpp"
#include "cantor23/report.hpp"
#include "cantor23/sampling.hpp"

namespace {

using namespace cantor23;

int g_exit = 0;

void flag_violation() {
  if (g_exit < 4) g_exit = 4;
}

// unknown key in a config file; a distinct kind of usage error
struct config_key_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g_config_file;

Cell int_cell(const Int& v) {
  if (fits_u64(v)) return to_u64(v);
  return v.get_str();
}

struct OutputOpts {
  std::string format = "json";
  std::string csv_path, json_path, svg_path;
};

void add_output(CLI::App* c, OutputOpts& o) {
  c->add_option("--format", o.format, "stdout body: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  c->add_option("--csv", o.csv_path, "also write the CSV artifact to this path");
  c->add_option("--json", o.json_path, "also write the JSON artifact to this path");
  c->add_option("--svg", o.svg_path, "also write the SVG artifact (plottable reports)");
  c->add_option("--config", g_config_file,
                "key=value file of this subcommand's flags; command-line flags override");
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw value_error("cannot open output file: " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw value_error("short write: " + path);
}

// svg_x/svg_y: column indices of the plottable series, -1 when none exists
void finish(const Report& rep, const OutputOpts& o, int svg_x = -1, int svg_y = -1) {
  const std::string body = o.format == "csv" ? emit_csv(rep) : emit_json(rep);
  std::fwrite(body.data(), 1, body.size(), stdout);
  if (!o.csv_path.empty()) write_file(o.csv_path, emit_csv(rep));
  if (!o.json_path.empty()) write_file(o.json_path, emit_json(rep));
  if (!o.svg_path.empty()) {
    if (svg_x < 0)
      throw value_error("svg: this report has no plottable two-column series");
    write_file(o.svg_path, emit_svg(rep, static_cast<std::size_t>(svg_x),
                                    static_cast<std::size_t>(svg_y)));
  }
}

struct IntervalOpts {
  std::string lo, hi, center, radius;
  bool lo_open = false, hi_open = false;

  void add(CLI::App* c) {
    c->add_option("--i-lo", lo, "interval lower endpoint, p/q");
    c->add_option("--i-hi", hi, "interval upper endpoint, p/q");
    c->add_flag("--i-lo-open", lo_open, "lower endpoint excluded");
    c->add_flag("--i-hi-open", hi_open, "upper endpoint excluded");
    c->add_option("--i-center", center, "interval given as open ball: center p/q");
    c->add_option("--i-radius", radius, "interval given as open ball: radius p/q");
  }

  RationalInterval build() const {
    const bool ball = !center.empty() || !radius.empty();
    const bool ends = !lo.empty() || !hi.empty();
    if (ball && ends)
      throw value_error("interval: endpoint form and ball form are exclusive");
    if (ball) {
      if (center.empty() || radius.empty())
        throw value_error("interval: --i-center and --i-radius go together");
      RationalInterval I = RationalInterval::ball(parse_rat(center), parse_rat(radius));
      if (I.empty()) throw value_error("interval: empty ball");
      return I;
    }
    if (!ends) return RationalInterval::unit();
    if (lo.empty() || hi.empty())
      throw value_error("interval: --i-lo and --i-hi go together");
    RationalInterval I{parse_rat(lo), parse_rat(hi), lo_open, hi_open};
    if (I.empty()) throw value_error("interval: empty interval");
    return I;
  }

  void echo(Report& rep) const {
    if (!center.empty()) {
      rep.add_config("i-center", center);
      rep.add_config("i-radius", radius);
    } else if (!lo.empty()) {
      rep.add_config("i-lo", lo);
      rep.add_config("i-hi", hi);
      rep.add_config("i-lo-open", lo_open ? "true" : "false");
      rep.add_config("i-hi-open", hi_open ? "true" : "false");
    } else {
      rep.add_config("i-lo", "0");
      rep.add_config("i-hi", "1");
    }
  }
};

std::string fmt_i(std::int64_t v) { return std::to_string(v); }
std::string fmt_u(std::uint64_t v) { return std::to_string(v); }

// ---------------------------------------------------------------- scan-ratio

struct ScanOpts {
  std::uint64_t y_lo = 2, y_hi = 2;
  std::string mode = "all";
  int jobs = 1;
  OutputOpts out;
};

void run_scan(const ScanOpts& o) {
  if (o.y_hi < o.y_lo) throw value_error("scan-ratio: empty range");
  if (o.y_hi - o.y_lo >= 1000000000ull)
    throw budget_error("scan-ratio: range above 10^9 values");
  const ScanMode mode = o.mode == "all" ? ScanMode::all : ScanMode::powers_of_two;

  Report rep;
  rep.id = "scan-ratio";
  rep.add_config("subcommand", "scan-ratio");
  rep.add_config("mode", o.mode);
  rep.add_config("y-lo", fmt_u(o.y_lo));
  rep.add_config("y-hi", fmt_u(o.y_hi));
  rep.add_config("jobs", fmt_i(o.jobs));
  rep.columns = {"y", "d2", "d3", "ratio"};

  // rows stream straight to the CSV sinks; the table never sits in memory
  std::FILE* to_stdout = o.out.format == "csv" ? stdout : nullptr;
  std::FILE* to_file = nullptr;
  if (!o.out.csv_path.empty()) {
    to_file = std::fopen(o.out.csv_path.c_str(), "wb");
    if (!to_file) throw value_error("cannot open output file: " + o.out.csv_path);
  }
  auto put = [&](const char* s) {
    if (to_stdout) std::fputs(s, to_stdout);
    if (to_file) std::fputs(s, to_file);
  };
  put("y,d2,d3,ratio\n");

  const std::uint64_t total = o.y_hi - o.y_lo + 1;
  const bool want_svg = !o.out.svg_path.empty();
  const std::uint64_t cap = 10000;
  struct Extreme {
    std::uint64_t seq = 0;
    ScanRow row;
  };
  std::vector<Extreme> bmin, bmax;
  std::vector<unsigned char> has;
  std::uint64_t buckets = 0;
  if (want_svg) {
    buckets = total <= cap ? total : cap / 2;
    bmin.resize(buckets);
    bmax.resize(buckets);
    has.assign(buckets, 0);
  }

  std::uint64_t seq = 0;
  char line[160];
  ScanSummary sum = scan_ratio(
      mode, o.y_lo, o.y_hi,
      [&](const ScanRow& r) {
        std::snprintf(line, sizeof line, "%llu,%d,%d,%s\n",
                      static_cast<unsigned long long>(r.y), r.d2, r.d3,
                      format_double(r.ratio).c_str());
        put(line);
        if (want_svg) {
          const std::uint64_t b = seq * buckets / total;
          if (!has[b]) {
            bmin[b] = bmax[b] = {seq, r};
            has[b] = 1;
          } else {
            if (r.ratio < bmin[b].row.ratio) bmin[b] = {seq, r};
            if (r.ratio > bmax[b].row.ratio) bmax[b] = {seq, r};
          }
        }
        ++seq;
      },
      o.jobs);
  if (to_file) std::fclose(to_file);

  rep.add_summary("argmin", sum.argmin);
  rep.add_summary("min_ratio", sum.min_ratio);
  rep.add_summary("y_hi", sum.y_hi);
  rep.add_summary("y_lo", sum.y_lo);

  if (to_stdout) {
    // trailer after the streamed rows
    std::fputs(emit_summary_json(rep).c_str(), stdout);
  } else {
    std::fputs(emit_json(rep).c_str(), stdout);
  }
  if (!o.out.json_path.empty()) write_file(o.out.json_path, emit_json(rep));

  if (want_svg) {
    auto push = [&](const ScanRow& r) {
      rep.rows.push_back({Cell(r.y), Cell(static_cast<std::int64_t>(r.d2)),
                          Cell(static_cast<std::int64_t>(r.d3)), Cell(r.ratio)});
    };
    for (std::uint64_t b = 0; b < buckets; ++b) {
      if (!has[b]) continue;
      if (bmin[b].seq == bmax[b].seq) {
        push(bmin[b].row);
      } else if (bmin[b].seq < bmax[b].seq) {
        push(bmin[b].row);
        push(bmax[b].row);
      } else {
        push(bmax[b].row);
        push(bmin[b].row);
      }
    }
    write_file(o.out.svg_path, emit_svg(rep, 0, 3));
  }
}

void setup_scan(CLI::App& app) {
  auto o = std::make_shared<ScanOpts>();
  CLI::App* c = app.add_subcommand(
      "scan-ratio", "digit-change ratio (d2+d3)/log y over a range of y");
  c->add_option("--y-lo", o->y_lo, "first y (first exponent in mode powers_of_two)")
      ->required();
  c->add_option("--y-hi", o->y_hi, "last y")->required();
  c->add_option("--mode", o->mode, "all | powers_of_two")
      ->check(CLI::IsMember({"all", "powers_of_two"}))
      ->capture_default_str();
  c->add_option("--jobs", o->jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output(c, o->out);
  c->callback([o]() { run_scan(*o); });
}

// ------------------------------------------------------------------- stewart

struct StewartOpts {
  std::uint64_t y = 0, y_lo = 0, y_hi = 0;
  double c = 1.0;
  OutputOpts out;
};

void run_stewart(const StewartOpts& o) {
  Report rep;
  rep.id = "stewart";
  rep.add_config("subcommand", "stewart");
  rep.add_config("c", format_double(o.c));
  if (o.c <= 0) throw value_error("stewart: c must be positive");

  if (o.y != 0) {
    rep.add_config("y", fmt_u(o.y));
    StewartMargin m = stewart_margin(Int(static_cast<unsigned long>(o.y)), o.c);
    rep.columns = {"y", "lhs", "rhs", "satisfied"};
    rep.rows.push_back({Cell(o.y), Cell(static_cast<std::int64_t>(m.lhs)), Cell(m.rhs),
                        Cell(m.satisfied)});
    rep.add_summary("lhs", static_cast<std::int64_t>(m.lhs));
    rep.add_summary("rhs", m.rhs);
    rep.add_summary("satisfied", m.satisfied);
    if (!m.satisfied) flag_violation();
    finish(rep, o.out);
    return;
  }

  if (o.y_lo < 16 || o.y_hi < o.y_lo)
    throw value_error("stewart: range mode needs 16 <= y-lo <= y-hi");
  if (o.y_hi - o.y_lo >= 100000000ull)
    throw budget_error("stewart: range above 10^8 values");
  rep.add_config("y-lo", fmt_u(o.y_lo));
  rep.add_config("y-hi", fmt_u(o.y_hi));
  rep.columns = {"y", "lhs", "c_min", "satisfied"};

  // c_min(y): smallest c making the margin hold at y; the scan's recorded
  // constant is the running maximum of these.
  double min_c = 0.0;
  std::uint64_t arg_c = o.y_lo;
  bool all_sat = true;
  for (std::uint64_t y = o.y_lo; y <= o.y_hi; ++y) {
    const int lhs = digit_changes_u64(y, 2) + digit_changes_u64(y, 3);
    const double ll = std::log(std::log(static_cast<double>(y)));
    const double lll = std::log(ll);
    const double rhs = ll / (lll + o.c) - 1.0;
    const bool sat = static_cast<double>(lhs) >= rhs;
    all_sat = all_sat && sat;
    const double c_min = std::max(0.0, ll / (lhs + 1.0) - lll);
    if (y == o.y_lo || c_min > min_c) {
      min_c = c_min;
      arg_c = y;
      rep.rows.push_back(
          {Cell(y), Cell(static_cast<std::int64_t>(lhs)), Cell(c_min), Cell(sat)});
    }
  }
  rep.add_summary("all_satisfied", all_sat);
  rep.add_summary("arg_min_c", arg_c);
  rep.add_summary("min_c", min_c);
  if (!all_sat) flag_violation();
  finish(rep, o.out, 0, 2);
}

void setup_stewart(CLI::App& app) {
  auto o = std::make_shared<StewartOpts>();
  CLI::App* c = app.add_subcommand(
      "stewart", "digit-change margin lhs >= loglog y/(logloglog y + c) - 1");
  c->add_option("--y", o->y, "single y >= 16");
  c->add_option("--y-lo", o->y_lo, "range mode: first y");
  c->add_option("--y-hi", o->y_hi, "range mode: last y");
  c->add_option("--c", o->c, "margin constant")->capture_default_str();
  add_output(c, o->out);
  c->callback([o]() { run_stewart(*o); });
}

// --------------------------------------------------------------------- count

Endpoints parse_which(const std::string& s) {
  if (s == "left") return Endpoints::left;
  if (s == "right") return Endpoints::right;
  return Endpoints::all;
}

struct CountOpts {
  int level = 0;
  std::string which = "left";
  bool which_given = false;
  int sys_n = -1;
  std::string radius, theta = "0";
  bool lattice = false;
  long budget = 1l << 26;
  IntervalOpts I;
  OutputOpts out;
};

void run_count(const CountOpts& o) {
  const RationalInterval I = o.I.build();
  // the lemmas count all endpoints of a system, so that is the default there
  std::string which = o.which;
  if (o.sys_n >= 1 && !o.which_given) which = "all";

  Report rep;
  rep.id = "count";
  rep.add_config("subcommand", "count");
  rep.add_config("level", fmt_i(o.level));
  rep.add_config("which", which);
  o.I.echo(rep);

  Int cnt;
  if (o.sys_n >= 1) {
    if (o.radius.empty()) throw value_error("count: --sys-n needs --radius");
    rep.add_config("sys-n", fmt_i(o.sys_n));
    rep.add_config("radius", o.radius);
    rep.add_config("theta", o.theta);
    rep.add_config("lattice", o.lattice ? "true" : "false");
    BallSystem S = o.lattice ? BallSystem::lattice(o.sys_n, parse_rat(o.radius))
                             : BallSystem::standard(o.sys_n, parse_rat(o.radius));
    const Rat th = parse_rat(o.theta);
    if (th != 0) S = S.translate(th);
    cnt = count_endpoints_in_system(o.level, S, I, parse_which(which), o.budget);
  } else {
    if (!o.radius.empty() || o.lattice || o.theta != "0")
      throw value_error("count: system flags need --sys-n");
    cnt = count_endpoints_in_interval(o.level, I, parse_which(which));
  }
  rep.columns = {"count"};
  rep.rows.push_back({int_cell(cnt)});
  rep.add_summary("count", int_cell(cnt));
  finish(rep, o.out);
}

void setup_count(CLI::App& app) {
  auto o = std::make_shared<CountOpts>();
  CLI::App* c = app.add_subcommand(
      "count", "endpoints of a construction level inside an interval or ball system");
  c->add_option("--level", o->level, "construction level N")
      ->required()
      ->check(CLI::Range(0, 64));
  auto* w = c->add_option("--which", o->which, "left | right | all")
                ->check(CLI::IsMember({"left", "right", "all"}));
  c->add_option("--sys-n", o->sys_n, "ball system denominator exponent n >= 1");
  c->add_option("--radius", o->radius, "ball system radius, p/q");
  c->add_option("--theta", o->theta, "ball system shift, p/q")->capture_default_str();
  c->add_flag("--lattice", o->lattice, "centers a/2^n for a in [0, 2^n - 1]");
  c->add_option("--ball-budget", o->budget, "per-ball work limit")->capture_default_str();
  o->I.add(c);
  add_output(c, o->out);
  c->callback([o, w]() {
    o->which_given = w->count() > 0;
    run_count(*o);
  });
}

// ------------------------------------------------------------------- measure

struct MeasureOpts {
  int n = -1;
  std::string radius, psi, theta = "0";
  bool lattice = false;
  long budget = 1l << 26;
  IntervalOpts I;
  OutputOpts out;
};

void run_measure(const MeasureOpts& o) {
  const RationalInterval I = o.I.build();
  Report rep;
  rep.id = "measure";
  rep.add_config("subcommand", "measure");
  o.I.echo(rep);
  rep.columns = {"mu_lo", "mu_hi"};

  Rat mu_lo, mu_hi;
  if (o.n < 0) {
    if (!o.radius.empty() || !o.psi.empty() || o.lattice || o.theta != "0")
      throw value_error("measure: system flags need --n");
    mu_lo = mu_hi = measure_of_interval(I);
  } else {
    if (o.n < 1) throw value_error("measure: --n must be >= 1");
    if (o.radius.empty() == o.psi.empty())
      throw value_error("measure: give exactly one of --radius or --psi");
    rep.add_config("n", fmt_i(o.n));
    rep.add_config("theta", o.theta);
    rep.add_config("lattice", o.lattice ? "true" : "false");
    Rat r_lo, r_hi;
    if (!o.radius.empty()) {
      rep.add_config("radius", o.radius);
      r_lo = r_hi = parse_rat(o.radius);
      if (r_lo < 0) throw value_error("measure: radius must be >= 0");
    } else {
      rep.add_config("psi", o.psi);
      const PsiSpec ps = PsiSpec::parse(o.psi);
      const auto nn = static_cast<std::uint64_t>(o.n);
      if (!ps.defined_at(nn))
        throw value_error("measure: psi schedule undefined at this n");
      const PsiBracket b = ps.bracket(nn);
      const Rat scale = make_rat(Int(1), pow2(static_cast<unsigned long>(o.n)));
      r_lo = b.lo * scale;
      r_hi = b.hi * scale;
    }
    const Rat th = parse_rat(o.theta);
    auto mu_of = [&](const Rat& r) -> Rat {
      if (r <= 0) return Rat(0);
      BallSystem S =
          o.lattice ? BallSystem::lattice(o.n, r) : BallSystem::standard(o.n, r);
      if (th != 0) S = S.translate(th);
      return measure_of_system(S, I, o.budget);
    };
    mu_lo = mu_of(r_lo);
    mu_hi = r_hi == r_lo ? mu_lo : mu_of(r_hi);
  }
  rep.rows.push_back({Cell(mu_lo), Cell(mu_hi)});
  rep.add_summary("mu_hi", mu_hi);
  rep.add_summary("mu_hi_value", to_double(mu_hi));
  rep.add_summary("mu_lo", mu_lo);
  rep.add_summary("mu_lo_value", to_double(mu_lo));
  finish(rep, o.out);
}

void setup_measure(CLI::App& app) {
  auto o = std::make_shared<MeasureOpts>();
  CLI::App* c = app.add_subcommand(
      "measure", "exact Cantor measure of an interval or of a ball system");
  c->add_option("--n", o->n, "ball system denominator exponent");
  c->add_option("--radius", o->radius, "ball radius, p/q");
  c->add_option("--psi", o->psi, "radius psi(2^n)/2^n from a schedule spec");
  c->add_option("--theta", o->theta, "ball system shift, p/q")->capture_default_str();
  c->add_flag("--lattice", o->lattice, "centers a/2^n for a in [0, 2^n - 1]");
  c->add_option("--ball-budget", o->budget, "per-ball work limit")->capture_default_str();
  o->I.add(c);
  add_output(c, o->out);
  c->callback([o]() { run_measure(*o); });
}

// ----------------------------------------------------------------------- cdf

struct CdfOpts {
  std::string x;
  OutputOpts out;
};

void run_cdf(const CdfOpts& o) {
  const Rat x = parse_rat(o.x);
  const Rat F = cantor_cdf(x);
  Report rep;
  rep.id = "cdf";
  rep.add_config("subcommand", "cdf");
  rep.add_config("x", o.x);
  rep.columns = {"x", "cdf"};
  rep.rows.push_back({Cell(x), Cell(F)});
  rep.add_summary("cdf", F);
  rep.add_summary("cdf_value", to_double(F));
  finish(rep, o.out);
}

void setup_cdf(CLI::App& app) {
  auto o = std::make_shared<CdfOpts>();
  CLI::App* c =
      app.add_subcommand("cdf", "exact Cantor distribution function at a rational");
  c->add_option("--x", o->x, "evaluation point, p/q")->required();
  add_output(c, o->out);
  c->callback([o]() { run_cdf(*o); });
}

// ------------------------------------------------------------ fourier-verify

struct FourierOpts {
  int n = 1, k = 1, L = 0, M = 1, T = 8, decay_n = 4, precision = 40;
  std::string y = "0";
  double tol = 1e-9;
  IntervalOpts I;
  OutputOpts out;
};

void run_fourier(const FourierOpts& o) {
  FourierParams p;
  p.n = o.n;
  p.k = o.k;
  p.L = o.L;
  p.M = o.M;
  p.T = o.T;
  p.decay_n = o.decay_n;
  p.y = parse_rat(o.y);
  p.I = o.I.build();

  Report rep;
  rep.id = "fourier-verify";
  rep.add_config("subcommand", "fourier-verify");
  rep.add_config("n", fmt_i(o.n));
  rep.add_config("k", fmt_i(o.k));
  rep.add_config("L", fmt_i(o.L));
  rep.add_config("M", fmt_i(o.M));
  rep.add_config("T", fmt_i(o.T));
  rep.add_config("decay-n", fmt_i(o.decay_n));
  rep.add_config("precision", fmt_i(o.precision));
  rep.add_config("y", o.y);
  rep.add_config("tol", format_double(o.tol));
  o.I.echo(rep);

  BumpCache cache(o.precision);
  const double lhs = fourier_lhs(p);
  const FourierRhs r = fourier_rhs(p, cache);
  const double resid = std::fabs(lhs - r.main);
  const double allowed =
      r.tail_bound + r.mode_error + o.tol * std::max(1.0, std::fabs(lhs));
  const bool ok = resid <= allowed;

  rep.columns = {"lhs", "main", "zero_mode", "tail_bound", "mode_error",
                 "resid", "allowed", "ok"};
  rep.rows.push_back({Cell(lhs), Cell(r.main), Cell(r.zero_mode), Cell(r.tail_bound),
                      Cell(r.mode_error), Cell(resid), Cell(allowed), Cell(ok)});
  rep.add_summary("allowed", allowed);
  rep.add_summary("endpoints_L", int_cell(r.endpoints_L));
  rep.add_summary("lhs", lhs);
  rep.add_summary("main", r.main);
  rep.add_summary("mode_error", r.mode_error);
  rep.add_summary("ok", ok);
  rep.add_summary("resid", resid);
  rep.add_summary("tail_bound", r.tail_bound);
  rep.add_summary("zero_mode", r.zero_mode);
  if (!ok) flag_violation();
  finish(rep, o.out);
}

void setup_fourier(CLI::App& app) {
  auto o = std::make_shared<FourierOpts>();
  CLI::App* c = app.add_subcommand(
      "fourier-verify",
      "smoothed endpoint count against its truncated frequency-side sum");
  c->add_option("--n", o->n, "ball scale exponent")->required();
  c->add_option("--k", o->k, "smoothing scale exponent")->required();
  c->add_option("--L", o->L, "coarse endpoint level")->required();
  c->add_option("--M", o->M, "fine endpoint level")->required();
  c->add_option("--T", o->T, "mode cutoff multiplier: keep |m| <= 2^k T")
      ->capture_default_str();
  c->add_option("--decay-n", o->decay_n, "tail envelope exponent")->capture_default_str();
  c->add_option("--precision", o->precision, "transform precision, bits")
      ->capture_default_str();
  c->add_option("--y", o->y, "evaluation shift, p/q")->capture_default_str();
  c->add_option("--tol", o->tol, "extra slack on the certified residual bound")
      ->capture_default_str();
  o->I.add(c);
  add_output(c, o->out);
  c->callback([o]() { run_fourier(*o); });
}

// ------------------------------------------------------------- product-bound

struct ProductOpts {
  int n = 0;
  std::int64_t m = 0;
  int L = 1, M = 1;
  OutputOpts out;
};

void run_product(const ProductOpts& o) {
  if (o.m == 0) throw value_error("product-bound: m must be nonzero");
  const ProductBound b = product_bound_check(o.n, Int(static_cast<long>(o.m)), o.L, o.M);

  Report rep;
  rep.id = "product-bound";
  rep.add_config("subcommand", "product-bound");
  rep.add_config("n", fmt_i(o.n));
  rep.add_config("m", fmt_i(o.m));
  rep.add_config("L", fmt_i(o.L));
  rep.add_config("M", fmt_i(o.M));
  rep.columns = {"lhs", "rhs", "window_changes", "ok"};
  rep.rows.push_back({Cell(b.lhs), Cell(b.rhs),
                      Cell(static_cast<std::int64_t>(b.window_changes)), Cell(b.ok)});
  rep.add_summary("lhs", b.lhs);
  rep.add_summary("ok", b.ok);
  rep.add_summary("rhs", b.rhs);
  rep.add_summary("window_changes", static_cast<std::int64_t>(b.window_changes));
  if (!b.ok) flag_violation();
  finish(rep, o.out);
}

void setup_product(CLI::App& app) {
  auto o = std::make_shared<ProductOpts>();
  CLI::App* c = app.add_subcommand(
      "product-bound", "cosine product against the digit-change decay bound");
  c->add_option("--n", o->n, "scale exponent n >= 0")->required();
  c->add_option("--m", o->m, "nonzero mode index")->required();
  c->add_option("--L", o->L, "window start level")->required();
  c->add_option("--M", o->M, "window end level")->required();
  add_output(c, o->out);
  c->callback([o]() { run_product(*o); });
}

// --------------------------------------------------------------- final-count

struct FinalOpts {
  std::string variant;
  int n = 1, k = 0;
  std::string theta = "0";
  long budget = 1l << 26;
  IntervalOpts I;
  OutputOpts out;
};

void run_final(const FinalOpts& o) {
  const FinalCountVariant v =
      o.variant == "lower" ? FinalCountVariant::lower : FinalCountVariant::upper;
  const FinalCountResult r =
      final_count_ratio(v, o.n, o.k, parse_rat(o.theta), o.I.build(), o.budget);

  Report rep;
  rep.id = "final-count";
  rep.add_config("subcommand", "final-count");
  rep.add_config("variant", o.variant);
  rep.add_config("n", fmt_i(o.n));
  rep.add_config("k", fmt_i(o.k));
  rep.add_config("theta", o.theta);
  o.I.echo(rep);
  rep.columns = {"M", "count", "predicted", "ratio"};
  rep.rows.push_back({Cell(static_cast<std::int64_t>(r.M)), int_cell(r.count),
                      Cell(r.predicted), Cell(r.ratio)});
  rep.add_summary("M", static_cast<std::int64_t>(r.M));
  rep.add_summary("count", int_cell(r.count));
  rep.add_summary("predicted", r.predicted);
  rep.add_summary("predicted_value", to_double(r.predicted));
  rep.add_summary("ratio", r.ratio);
  finish(rep, o.out);
}

void setup_final(CLI::App& app) {
  auto o = std::make_shared<FinalOpts>();
  CLI::App* c = app.add_subcommand(
      "final-count", "endpoint count of a dilated system against its measure prediction");
  c->add_option("--variant", o->variant, "lower | upper")
      ->required()
      ->check(CLI::IsMember({"lower", "upper"}));
  c->add_option("--n", o->n, "ball scale exponent")->required();
  c->add_option("--k", o->k, "smoothing scale exponent")->required();
  c->add_option("--theta", o->theta, "system shift, p/q")->capture_default_str();
  c->add_option("--ball-budget", o->budget, "per-ball work limit")->capture_default_str();
  o->I.add(c);
  add_output(c, o->out);
  c->callback([o]() { run_final(*o); });
}

// --------------------------------------------------------------- sample-hits

struct HitsOpts {
  std::string alpha, psi;
  std::uint64_t seed = 1, n_max = 0;
  int samples = 1, depth = 0, base = 2;
  OutputOpts out;
};

void run_hits(const HitsOpts& o) {
  const PsiSpec ps = PsiSpec::parse(o.psi);
  Report rep;
  rep.id = "sample-hits";
  rep.add_config("subcommand", "sample-hits");
  rep.add_config("psi", o.psi);
  rep.add_config("base", fmt_i(o.base));
  rep.add_config("n-max", fmt_u(o.n_max));

  if (!o.alpha.empty()) {
    rep.add_config("alpha", o.alpha);
    const HitResult h = hit_count(parse_rat(o.alpha), o.base, ps, o.n_max);
    rep.columns = {"n", "verdict"};
    std::uint64_t emitted = 0;
    for (const HitRow& row : h.rows) {
      if (row.verdict == HitVerdict::miss) continue;
      if (emitted == 10000) break;
      rep.rows.push_back({Cell(row.n), Cell(std::string(verdict_name(row.verdict)))});
      ++emitted;
    }
    rep.add_summary("hits", h.hits);
    rep.add_summary("misses", h.misses);
    rep.add_summary("psi_undefined", h.undefined);
    rep.add_summary("rows_truncated", h.hits + h.uncertain + h.undefined > emitted);
    rep.add_summary("uncertain", h.uncertain);
    finish(rep, o.out);
    return;
  }

  if (o.depth < 1) throw value_error("sample-hits: sampled mode needs --depth >= 1");
  if (o.samples < 1) throw value_error("sample-hits: --samples must be >= 1");
  rep.add_config("seed", fmt_u(o.seed));
  rep.add_config("samples", fmt_i(o.samples));
  rep.add_config("depth", fmt_i(o.depth));
  rep.add_config("rng", kRngName);
  rep.columns = {"index", "hits", "misses", "uncertain", "psi_undefined"};
  std::uint64_t hits = 0, misses = 0, uncertain = 0, undefined = 0;
  for (int i = 0; i < o.samples; ++i) {
    const SampledPoint pt = sample_point(o.seed, static_cast<std::uint64_t>(i),
                                         static_cast<unsigned>(o.depth));
    const HitResult h = hit_count_sampled(pt, o.base, ps, o.n_max);
    rep.rows.push_back({Cell(static_cast<std::int64_t>(i)), Cell(h.hits), Cell(h.misses),
                        Cell(h.uncertain), Cell(h.undefined)});
    hits += h.hits;
    misses += h.misses;
    uncertain += h.uncertain;
    undefined += h.undefined;
  }
  rep.add_summary("hits", hits);
  rep.add_summary("mean_hits", static_cast<double>(hits) / o.samples);
  rep.add_summary("misses", misses);
  rep.add_summary("psi_undefined", undefined);
  rep.add_summary("uncertain", uncertain);
  finish(rep, o.out, 0, 1);
}

void setup_hits(CLI::App& app) {
  auto o = std::make_shared<HitsOpts>();
  CLI::App* c = app.add_subcommand(
      "sample-hits", "certified approximation hits along an orbit, exact or sampled");
  c->add_option("--alpha", o->alpha, "exact point p/q (otherwise sample from mu)");
  c->add_option("--psi", o->psi, "approximation schedule spec")->required();
  c->add_option("--base", o->base, "2 | 3")->check(CLI::IsMember({2, 3}))
      ->capture_default_str();
  c->add_option("--n-max", o->n_max, "largest exponent n")->required();
  c->add_option("--seed", o->seed, "sampling seed")->capture_default_str();
  c->add_option("--samples", o->samples, "number of sampled points")
      ->capture_default_str();
  c->add_option("--depth", o->depth, "ternary digits per sampled point");
  add_output(c, o->out);
  c->callback([o]() { run_hits(*o); });
}

// -------------------------------------------------------------------- series

struct SeriesOpts {
  std::string kind, psi;
  std::uint64_t n_max = 0;
  double eps = 1.0, h_c = 1.0;
  OutputOpts out;
};

void run_series(const SeriesOpts& o) {
  SeriesKind kind = SeriesKind::benchmark;
  if (o.kind == "main-convergence") kind = SeriesKind::main_convergence;
  else if (o.kind == "lsv-triadic") kind = SeriesKind::lsv_triadic;
  else if (o.kind == "conditional") kind = SeriesKind::conditional;
  const PsiSpec ps = PsiSpec::parse(o.psi);
  const SeriesResult r = series_eval(kind, ps, o.n_max, o.eps, o.h_c);

  Report rep;
  rep.id = "series";
  rep.add_config("subcommand", "series");
  rep.add_config("kind", o.kind);
  rep.add_config("psi", o.psi);
  rep.add_config("n-max", fmt_u(o.n_max));
  rep.add_config("eps", format_double(o.eps));
  rep.add_config("h-c", format_double(o.h_c));
  rep.columns = {"n", "partial"};
  for (const SeriesRow& row : r.rows) rep.rows.push_back({Cell(row.n), Cell(row.partial)});
  rep.add_summary("first_term", r.first_term);
  rep.add_summary("total", r.total);
  rep.add_summary("verdict_hint", r.verdict_hint);
  finish(rep, o.out, 0, 1);
}

void setup_series(CLI::App& app) {
  auto o = std::make_shared<SeriesOpts>();
  CLI::App* c = app.add_subcommand("series", "partial sums of the convergence criteria");
  c->add_option("--kind", o->kind,
                "benchmark | main-convergence | lsv-triadic | conditional")
      ->required()
      ->check(CLI::IsMember(
          {"benchmark", "main-convergence", "lsv-triadic", "conditional"}));
  c->add_option("--psi", o->psi, "approximation schedule spec")->required();
  c->add_option("--n-max", o->n_max, "last summand")->required();
  c->add_option("--eps", o->eps, "epsilon of the conditional series")
      ->capture_default_str();
  c->add_option("--h-c", o->h_c, "growth constant of the conditional series")
      ->capture_default_str();
  add_output(c, o->out);
  c->callback([o]() { run_series(*o); });
}

// --------------------------------------------------------- convergence-audit

struct ConvOpts {
  std::string psi;
  std::uint64_t n_lo = 16, n_hi = 16;
  OutputOpts out;
};

void run_conv(const ConvOpts& o) {
  const PsiSpec ps = PsiSpec::parse(o.psi);
  const std::vector<ConvergenceRow> rows = convergence_audit(ps, o.n_lo, o.n_hi);

  Report rep;
  rep.id = "convergence-audit";
  rep.add_config("subcommand", "convergence-audit");
  rep.add_config("psi", o.psi);
  rep.add_config("n-lo", fmt_u(o.n_lo));
  rep.add_config("n-hi", fmt_u(o.n_hi));
  rep.columns = {"n",  "k_n",   "log_branch_defined", "M",         "N",
                 "valid_drop", "ambiguous", "mu_lo", "mu_hi", "psi_value",
                 "bound_term", "c_ratio"};
  const double g = gamma_dim();
  double c_emp = 0.0;
  std::uint64_t arg_c = o.n_lo;
  for (const ConvergenceRow& r : rows) {
    double c_ratio = 0.0;
    if (r.psi_value > 0)
      c_ratio = to_double(r.mu_hi) / std::pow(r.psi_value, g);
    if (c_ratio > c_emp) {
      c_emp = c_ratio;
      arg_c = r.n;
    }
    rep.rows.push_back({Cell(r.n), Cell(static_cast<std::int64_t>(r.k_n)),
                        Cell(r.log_branch_defined), Cell(static_cast<std::int64_t>(r.M)),
                        Cell(static_cast<std::int64_t>(r.N)), Cell(r.valid_drop),
                        Cell(r.ambiguous), Cell(r.mu_lo), Cell(r.mu_hi),
                        Cell(r.psi_value), Cell(r.bound_term), Cell(c_ratio)});
  }
  rep.add_summary("arg_c_emp", arg_c);
  rep.add_summary("c_emp", c_emp);
  rep.add_summary("rows", static_cast<std::uint64_t>(rows.size()));
  finish(rep, o.out, 0, 11);
}

void setup_conv(CLI::App& app) {
  auto o = std::make_shared<ConvOpts>();
  CLI::App* c = app.add_subcommand(
      "convergence-audit", "exact mu(A_n) brackets against the psi^gamma bound");
  c->add_option("--psi", o->psi, "approximation schedule spec")->required();
  c->add_option("--n-lo", o->n_lo, "first n")->required();
  c->add_option("--n-hi", o->n_hi, "last n")->required();
  add_output(c, o->out);
  c->callback([o]() { run_conv(*o); });
}

// --------------------------------------------------------------- chung-erdos

struct CeOpts {
  std::string psi, side = "lower";
  std::uint64_t n_lo = 16;
  int window_cap = 8;
  long budget = 1l << 25;
  IntervalOpts I;
  OutputOpts out;
};

void run_ce(const CeOpts& o) {
  const PsiSpec ps = PsiSpec::parse(o.psi);
  const PsiSide side = o.side == "lower" ? PsiSide::lower : PsiSide::upper;
  const PairwiseResult r =
      chung_erdos_audit(ps, o.n_lo, o.window_cap, side, o.I.build(), o.budget);

  Report rep;
  rep.id = "chung-erdos";
  rep.add_config("subcommand", "chung-erdos");
  rep.add_config("psi", o.psi);
  rep.add_config("side", o.side);
  rep.add_config("n-lo", fmt_u(o.n_lo));
  rep.add_config("window-cap", fmt_i(o.window_cap));
  o.I.echo(rep);
  rep.columns = {"i", "j", "mu", "overlap_ratio"};
  for (const PairRow& p : r.pairs)
    rep.rows.push_back({Cell(p.i), Cell(p.j), Cell(p.mu), Cell(p.overlap_ratio)});
  rep.add_summary("bound", r.bound);
  rep.add_summary("bound_value", to_double(r.bound));
  rep.add_summary("capped", r.capped);
  rep.add_summary("max_overlap_ratio", r.max_overlap_ratio);
  rep.add_summary("max_overlap_ratio_value", to_double(r.max_overlap_ratio));
  rep.add_summary("mu_union", r.mu_union);
  rep.add_summary("mu_union_value", to_double(r.mu_union));
  rep.add_summary("n_hi", r.n_hi);
  rep.add_summary("n_lo", r.n_lo);
  rep.add_summary("n_plus", r.n_plus);
  rep.add_summary("ok", r.ok);
  rep.add_summary("ratio_i", r.ratio_i);
  rep.add_summary("ratio_j", r.ratio_j);
  rep.add_summary("sum_mu", r.sum_mu);
  rep.add_summary("sum_pairs", r.sum_pairs);
  if (!r.ok) flag_violation();
  finish(rep, o.out);
}

void setup_ce(CLI::App& app) {
  auto o = std::make_shared<CeOpts>();
  CLI::App* c = app.add_subcommand(
      "chung-erdos", "second-moment lower bound against the exact union measure");
  c->add_option("--psi", o->psi, "approximation schedule spec")->required();
  c->add_option("--n-lo", o->n_lo, "window start, n >= 16")->required();
  c->add_option("--window-cap", o->window_cap, "largest window length actually audited")
      ->capture_default_str();
  c->add_option("--side", o->side, "psi bracket side: lower | upper")
      ->check(CLI::IsMember({"lower", "upper"}))
      ->capture_default_str();
  c->add_option("--piece-budget", o->budget, "exact-measure work limit")
      ->capture_default_str();
  o->I.add(c);
  add_output(c, o->out);
  c->callback([o]() { run_ce(*o); });
}

// -------------------------------------------------------------- lemma-verify

struct ConnOpts {
  int n = 1, N = 1;
  std::string r, theta = "0";
  IntervalOpts I;
  OutputOpts out;
};

void run_conn(const ConnOpts& o) {
  const ConnectionAudit a =
      connection_audit(o.n, o.N, parse_rat(o.r), parse_rat(o.theta), o.I.build());
  Report rep;
  rep.id = "lemma-verify-connection";
  rep.add_config("subcommand", "lemma-verify connection");
  rep.add_config("n", fmt_i(o.n));
  rep.add_config("N", fmt_i(o.N));
  rep.add_config("r", o.r);
  rep.add_config("theta", o.theta);
  o.I.echo(rep);
  rep.columns = {"count_inner", "count_outer", "lower", "upper", "mu", "ok"};
  rep.rows.push_back({int_cell(a.count_inner), int_cell(a.count_outer), Cell(a.lower),
                      Cell(a.upper), Cell(a.mu), Cell(a.ok)});
  rep.add_summary("count_inner", int_cell(a.count_inner));
  rep.add_summary("count_outer", int_cell(a.count_outer));
  rep.add_summary("lower", a.lower);
  rep.add_summary("mu", a.mu);
  rep.add_summary("mu_value", to_double(a.mu));
  rep.add_summary("ok", a.ok);
  rep.add_summary("upper", a.upper);
  if (!a.ok) flag_violation();
  finish(rep, o.out);
}

struct DropOpts {
  int n = 1, M = 1, N = 1;
  std::string r, theta = "0";
  OutputOpts out;
};

void run_drop(const DropOpts& o) {
  const DroppingAudit a = dropping_audit(o.n, o.M, o.N, parse_rat(o.r), parse_rat(o.theta));
  Report rep;
  rep.id = "lemma-verify-dropping";
  rep.add_config("subcommand", "lemma-verify dropping");
  rep.add_config("n", fmt_i(o.n));
  rep.add_config("M", fmt_i(o.M));
  rep.add_config("N", fmt_i(o.N));
  rep.add_config("r", o.r);
  rep.add_config("theta", o.theta);
  rep.columns = {"count_fine", "count_coarse", "ratio", "valid"};
  rep.rows.push_back(
      {int_cell(a.count_fine), int_cell(a.count_coarse), Cell(a.ratio), Cell(a.valid)});
  rep.add_summary("count_coarse", int_cell(a.count_coarse));
  rep.add_summary("count_fine", int_cell(a.count_fine));
  rep.add_summary("ratio", a.ratio);
  rep.add_summary("valid", a.valid);
  finish(rep, o.out);
}

struct ShiftOpts {
  int n = 1, M = 1, J = 0;
  std::string t, theta = "0";
  IntervalOpts I;
  OutputOpts out;
};

void run_shift(const ShiftOpts& o) {
  const ShiftingAudit a =
      shifting_audit(o.n, parse_rat(o.t), parse_rat(o.theta), o.M, o.J, o.I.build());
  Report rep;
  rep.id = "lemma-verify-shifting";
  rep.add_config("subcommand", "lemma-verify shifting");
  rep.add_config("n", fmt_i(o.n));
  rep.add_config("t", o.t);
  rep.add_config("theta", o.theta);
  rep.add_config("M", fmt_i(o.M));
  rep.add_config("J", fmt_i(o.J));
  o.I.echo(rep);
  rep.columns = {"count_full", "count_short", "ok"};
  rep.rows.push_back({int_cell(a.count_full), int_cell(a.count_short), Cell(a.ok)});
  rep.add_summary("count_full", int_cell(a.count_full));
  rep.add_summary("count_short", int_cell(a.count_short));
  rep.add_summary("ok", a.ok);
  if (!a.ok) flag_violation();
  finish(rep, o.out);
}

void setup_lemma(CLI::App& app) {
  CLI::App* lv = app.add_subcommand("lemma-verify", "exact audits of the counting lemmas");
  lv->require_subcommand(1);

  auto co = std::make_shared<ConnOpts>();
  CLI::App* cc = lv->add_subcommand(
      "connection", "count sandwich for the measure of a ball intersected with I");
  cc->add_option("--n", co->n, "ball scale exponent")->required();
  cc->add_option("--N", co->N, "counting level")->required();
  cc->add_option("--r", co->r, "ball radius, p/q")->required();
  cc->add_option("--theta", co->theta, "ball shift, p/q")->capture_default_str();
  co->I.add(cc);
  add_output(cc, co->out);
  cc->callback([co]() { run_conn(*co); });

  auto dr = std::make_shared<DropOpts>();
  CLI::App* dc = lv->add_subcommand(
      "dropping", "fine-to-coarse count ratio between two counting levels");
  dc->add_option("--n", dr->n, "ball scale exponent")->required();
  dc->add_option("--M", dr->M, "coarse level")->required();
  dc->add_option("--N", dr->N, "fine level")->required();
  dc->add_option("--r", dr->r, "ball radius, p/q")->required();
  dc->add_option("--theta", dr->theta, "ball shift, p/q")->capture_default_str();
  add_output(dc, dr->out);
  dc->callback([dr]() { run_drop(*dr); });

  auto sh = std::make_shared<ShiftOpts>();
  CLI::App* sc = lv->add_subcommand(
      "shifting", "count stability when the counting level drops by J");
  sc->add_option("--n", sh->n, "ball scale exponent")->required();
  sc->add_option("--t", sh->t, "radius scale t, p/q")->required();
  sc->add_option("--theta", sh->theta, "system shift, p/q")->capture_default_str();
  sc->add_option("--M", sh->M, "full counting level")->required();
  sc->add_option("--J", sh->J, "level drop")->required();
  sh->I.add(sc);
  add_output(sc, sh->out);
  sc->callback([sh]() { run_shift(*sh); });
}

CLI::App* find_sub(CLI::App& parent, const std::string& name) {
  for (CLI::App* s : parent.get_subcommands([](const CLI::App*) { return true; }))
    if (s->get_name() == name) return s;
  return nullptr;
}

// Expands "key=value" lines into "--key=value" tokens after validating every
// key against the subcommand's flags. Blank lines and #/; comments pass.
std::vector<std::string> config_tokens(const CLI::App& sub, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw value_error("config: cannot read " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(f, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    std::string s = line.substr(b, e - b + 1);
    if (s[0] == '#' || s[0] == ';') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw value_error("config: expected key=value, got: " + s);
    std::string k = s.substr(0, eq), v = s.substr(eq + 1);
    while (!k.empty() && (k.back() == ' ' || k.back() == '\t')) k.pop_back();
    const auto vb = v.find_first_not_of(" \t");
    v = vb == std::string::npos ? std::string() : v.substr(vb);
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    if (k == "config") throw value_error("config: files cannot nest");
    if (sub.get_option_no_throw("--" + k) == nullptr)
      throw config_key_error("config: unknown key \"" + k + "\" for subcommand " +
                             sub.get_name());
    out.push_back("--" + k + "=" + v);
  }
  return out;
}

// command-line flags must win over config-file tokens inserted before them
void take_last_everywhere(CLI::App* a) {
  for (CLI::Option* o : a->get_options([](const CLI::Option*) { return true; }))
    o->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (CLI::App* s : a->get_subcommands([](const CLI::App*) { return true; }))
    take_last_everywhere(s);
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  const auto t0 = std::chrono::steady_clock::now();

  CLI::App app{"exact dyadic-approximation experiments on the middle-third Cantor set"};
  app.require_subcommand(1);
  setup_scan(app);
  setup_stewart(app);
  setup_count(app);
  setup_measure(app);
  setup_cdf(app);
  setup_fourier(app);
  setup_product(app);
  setup_final(app);
  setup_hits(app);
  setup_series(app);
  setup_conv(app);
  setup_ce(app);
  setup_lemma(app);
  take_last_everywhere(&app);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);

    // splice config-file tokens in right after the subcommand chain, so
    // everything the user typed comes later and takes precedence
    CLI::App* sub = args.empty() ? nullptr : find_sub(app, args[0]);
    std::size_t chain = sub ? 1 : 0;
    if (sub && args[0] == "lemma-verify" && args.size() > 1) {
      if (CLI::App* leaf = find_sub(*sub, args[1])) {
        sub = leaf;
        ++chain;
      }
    }
    if (sub) {
      std::string path;
      for (std::size_t i = chain; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
      }
      if (!path.empty()) {
        const std::vector<std::string> extra = config_tokens(*sub, path);
        args.insert(args.begin() + static_cast<std::ptrdiff_t>(chain), extra.begin(),
                    extra.end());
      }
    }

    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const int code = e.get_exit_code();
    const char* tag = "malformed_value";
    if (code == static_cast<int>(CLI::ExitCodes::ExtrasError) ||
        code == static_cast<int>(CLI::ExitCodes::ConfigError)) {
      tag = "unknown_flag";
    } else if (code == static_cast<int>(CLI::ExitCodes::RequiredError) ||
               code == static_cast<int>(CLI::ExitCodes::RequiresError)) {
      tag = "missing_parameter";
    }
    std::fprintf(stderr, "error=%s %s\n", tag, e.what());
    return 2;
  } catch (const config_key_error& e) {
    std::fprintf(stderr, "error=unknown_flag %s\n", e.what());
    return 2;
  } catch (const budget_error& e) {
    std::fprintf(stderr, "error=budget %s\n", e.what());
    return 3;
  } catch (const value_error& e) {
    std::fprintf(stderr, "error=malformed_value %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error=internal %s\n", e.what());
    return 2;
  }

  const auto t1 = std::chrono::steady_clock::now();
  std::fprintf(stderr, "wall_ms=%lld\n",
               static_cast<long long>(
                   std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()));
  return g_exit;
}

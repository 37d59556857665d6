#include "choired/cli.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "choired/census.hpp"
#include "choired/curve.hpp"
#include "choired/density.hpp"
#include "choired/errors.hpp"
#include "choired/fields.hpp"
#include "choired/primescan.hpp"
#include "choired/rational.hpp"
#include "choired/report.hpp"

namespace choired {

std::string default_curve_file() { return std::string(CHOIRED_DATA_DIR) + "/curves.jsonl"; }

namespace {

constexpr std::int64_t kMaxCliPrime = 1'000'000;
constexpr double kMaxCensusX = 9007199254740992.0;  // 2^53

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> argv;
  std::string curve_file = default_curve_file();
  std::string curve = "497a1";
  std::int64_t p = 5;
  std::string x_text = "1e6";
  std::string mode = "auto";
  double class_sampling_rate = 0.0;
  std::uint64_t seed = 0;
  double tol_1e6 = 0.02;
  double tol_1e7 = 0.005;
  double total_rel_tol = 0.005;
  int threads = 0;
  std::string format;
  std::string out_prefix;
  std::uint64_t chunk_size = std::uint64_t{1} << 22;
  bool assume_surjective = true;
  bool serre_conjectural = false;
  std::int64_t K = 0;
  std::int64_t p_lo = 5;
  std::int64_t p_hi = 1000;
  std::optional<std::int64_t> hK;
  std::int64_t D = 0;
};

std::uint64_t parse_x(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v))
    throw ValidationError("--x: cannot parse '" + text + "' as a number");
  if (v != std::floor(v) || v < 3 || v > kMaxCensusX)
    throw ValidationError("--x must be an integer in [3, 2^53], got '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

Json config_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["argv"] = c.argv;
  j["curve_file"] = c.curve_file;
  if (c.subcommand == "class-number") {
    j["D"] = c.D;
    return j;
  }
  j["curve"] = c.curve;
  if (c.subcommand == "primescan") {
    j["K"] = c.K;
    j["p_lo"] = c.p_lo;
    j["p_hi"] = c.p_hi;
    j["hK"] = c.hK ? Json(*c.hK) : Json(nullptr);
  } else {
    j["p"] = c.p;
    j["mode"] = c.mode;
  }
  if (c.subcommand == "census") {
    j["x"] = c.x_text;
    j["class_sampling_rate"] = c.class_sampling_rate;
    j["seed"] = c.seed;
    j["tol_1e6"] = c.tol_1e6;
    j["tol_1e7"] = c.tol_1e7;
    j["total_rel_tol"] = c.total_rel_tol;
    j["assume_surjective"] = c.assume_surjective;
  }
  j["serre_conjectural"] = c.serre_conjectural;
  j["format"] = c.format;
  return j;
}

CurveModel load_curve(const RunConfig& c) {
  for (const auto& rec : load_curve_records(c.curve_file))
    if (rec.label == c.curve) return validate_curve(rec);
  throw ValidationError("curve '" + c.curve + "' not found in " + c.curve_file);
}

void check_prime_cap(std::int64_t p) {
  if (p > kMaxCliPrime) throw ValidationError("p must be <= 10^6 for point counting");
}

Mode resolve_mode(const RunConfig& c, const PrimeSetting& s) {
  if (c.mode == "auto") return s.ap == 0 ? Mode::ss : Mode::ord;
  return parse_mode(c.mode);
}

std::string exact_and_decimal(const Rational& r) {
  return to_string(r) + " = " + format_decimal(r, 7);
}

std::string join(const std::vector<std::int64_t>& v) {
  return fmt::format("{{{}}}", fmt::join(v, ","));
}

int cmd_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_prime_cap(c.p);
  const CurveModel curve = load_curve(c);
  const PrimeSetting s = make_prime_setting(curve, c.p, c.serre_conjectural);
  const SerreBound sb = serre_surjectivity_bound(curve);
  const Mode mode = resolve_mode(c, s);
  const double cp = cohen_lenstra_cp(c.p);

  std::optional<DensityFormulas> f;
  std::string hypothesis = "ok";
  try {
    f = density_choired(curve, s, mode);
  } catch (const HypothesisError& e) {
    hypothesis = e.what();
  }

  if (c.format == "json") {
    Json j;
    j["schema"] = "choired.check/1";
    j["version"] = kVersion;
    j["run_config"] = config_json(c);
    j["curve"] = curve.label;
    j["conductor"] = curve.conductor;
    j["bad_primes"] = curve.bad_prime_list();
    j["p"] = s.p;
    j["a_p"] = s.ap;
    j["reduction"] = to_string(s.reduction);
    j["kounter_primes"] = s.kounter.primes;
    j["k"] = s.k();
    j["r"] = curve.r();
    j["a_p_ok"] = s.ap_ok();
    j["surjectivity"] = to_string(s.surjectivity);
    j["serre_bound"] = {{"kraus", sb.kraus}, {"cojocaru", sb.cojocaru}, {"value", sb.value}};
    j["c_p"] = cp;
    j["mode"] = to_string(mode);
    j["hypothesis"] = hypothesis;
    j["density"] = f ? Json(exact_and_decimal(f->target())) : Json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    out << "curve\t" << curve.label << '\n'
        << "conductor\t" << curve.conductor << '\n'
        << "bad_primes\t" << join(curve.bad_prime_list()) << '\n'
        << "p\t" << s.p << '\n'
        << "a_p\t" << s.ap << '\n'
        << "reduction\t" << to_string(s.reduction) << '\n'
        << "kounter_primes\t" << join(s.kounter.primes) << '\n'
        << "k\t" << s.k() << '\n'
        << "r\t" << curve.r() << '\n'
        << "a_p_ok\t" << (s.ap_ok() ? "yes" : "no") << '\n'
        << "surjectivity\t" << to_string(s.surjectivity) << '\n'
        << fmt::format("serre_bound\t{:.1f} (kraus {:.1f}, cojocaru {:.1f})\n", sb.value,
                       sb.kraus, sb.cojocaru)
        << fmt::format("c_p\t{:.7f}\n", cp) << "mode\t" << to_string(mode) << '\n'
        << "hypothesis\t" << hypothesis << '\n';
    if (f) out << "density\t" << exact_and_decimal(f->target()) << '\n';
  }
  if (!f) {
    err << "choired: " << hypothesis << '\n';
    return kExitHypothesis;
  }
  return kExitOk;
}

int cmd_density(const RunConfig& c, std::ostream& out) {
  check_prime_cap(c.p);
  const CurveModel curve = load_curve(c);
  const PrimeSetting s = make_prime_setting(curve, c.p, c.serre_conjectural);
  const Mode mode = resolve_mode(c, s);
  const DensityFormulas f = density_choired(curve, s, mode);
  const double lower = to_double(f.target()) * (1.0 - f.cp);
  const std::string caveat = fmt::format(
      "the conclusion holds on a set of density at least density * (1 - c_p*), where c_p* is the "
      "proportion of these fields with p | h_K; with c_p* = c_p this is {:.7f}",
      lower);

  if (c.format == "json") {
    Json j = density_json(f);
    j["run_config"] = config_json(c);
    j["curve"] = curve.label;
    j["p"] = s.p;
    j["a_p"] = s.ap;
    j["reduction"] = to_string(s.reduction);
    j["bd_bound_label"] = "Bertolini–Darmon-hypothesis comparison";
    if (mode == Mode::ss) j["caveat"] = caveat;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  auto row = [&](std::string_view name, const Rational& r, std::string_view note = "") {
    out << name << '\t' << to_string(r) << '\t' << format_decimal(r, 7) << '\t' << note << '\n';
  };
  out << "quantity\texact\tdecimal\tnote\n";
  out << "curve\t" << curve.label << "\t\t\n";
  out << "p\t" << s.p << "\t\ta_p = " << s.ap << ", " << to_string(s.reduction) << '\n';
  out << "mode\t" << to_string(mode) << "\t\tr = " << f.r << ", k = " << f.k << '\n';
  row("frak_d", f.frak_d, "pN / ((p+1) prod (q+1))");
  row("delta_pi", f.delta_pi, "per split partition");
  row("density", f.target(), mode == Mode::ss ? "p split, mod-p condition" : "p split or inert");
  row("bd_bound", f.bd_bound, "Bertolini–Darmon-hypothesis comparison");
  out << fmt::format("c_p\t\t{:.7f}\t(6/pi^2)(1 - prod_j (1 - p^-j))\n", f.cp);
  if (mode == Mode::ss) out << "caveat\t\t\t" << caveat << '\n';
  return kExitOk;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open " + path + " for writing");
  f << body;
}

int cmd_census(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_prime_cap(c.p);
  const std::uint64_t x = parse_x(c.x_text);
  const CurveModel curve = load_curve(c);
  const PrimeSetting s = make_prime_setting(curve, c.p, c.serre_conjectural);
  CensusOptions o;
  o.mode = resolve_mode(c, s);
  o.class_sampling_rate = c.class_sampling_rate;
  o.seed = c.seed;
  o.tol_1e6 = c.tol_1e6;
  o.tol_1e7 = c.tol_1e7;
  o.total_rel_tol = c.total_rel_tol;
  o.assume_surjective = c.assume_surjective;
  o.chunk_size = c.chunk_size;
  o.threads = c.threads;

  const auto t0 = std::chrono::steady_clock::now();
  const CensusReport report = run_census(curve, s, x, o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Json j = census_json(report);
  j["run_config"] = config_json(c);
  const std::string json_text = j.dump(2) + "\n";
  const std::string tsv_text = census_tsv(report);
  if (!c.out_prefix.empty()) {
    write_file(c.out_prefix + ".json", json_text);
    write_file(c.out_prefix + ".tsv", tsv_text);
  }
  out << (c.format == "tsv" ? tsv_text : json_text);
  for (const auto& w : report.warnings) err << "choired: warning: " << w << '\n';
  err << fmt::format("choired: census x = {} in {:.2f} s ({} threads requested)\n", x, secs,
                     c.threads);
  return report.passed() ? kExitOk : kExitTolerance;
}

int cmd_primescan(const RunConfig& c, std::ostream& out) {
  if (c.K == 0) throw ValidationError("primescan requires --K");
  const CurveModel curve = load_curve(c);
  PrimeScanOptions o;
  o.conjectural_serre = c.serre_conjectural;
  o.class_number_K = c.hK;
  o.threads = c.threads;
  const PrimeScan scan = scan_primes(curve, c.K, c.p_lo, c.p_hi, o);
  if (c.format == "json") {
    Json j = primescan_json(scan);
    j["run_config"] = config_json(c);
    j["curve"] = curve.label;
    out << j.dump(2) << '\n';
  } else {
    out << primescan_tsv(scan);
  }
  return kExitOk;
}

int cmd_class_number(const RunConfig& c, std::ostream& out) {
  const std::int64_t h = class_number(c.D);
  if (c.format == "json") {
    Json j;
    j["schema"] = "choired.class_number/1";
    j["version"] = kVersion;
    j["run_config"] = config_json(c);
    j["D"] = c.D;
    j["h"] = h;
    out << j.dump(2) << '\n';
  } else {
    out << "D\th\n" << c.D << '\t' << h << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  c.argv = args;
  if (const char* env = std::getenv("CHOIRED_THREADS")) {
    try {
      c.threads = std::stoi(env);
    } catch (const std::exception&) {
      err << "choired: ignoring CHOIRED_THREADS='" << env << "'\n";
    }
  }

  CLI::App app{"choired: densities of quadratic fields satisfying the choired hypothesis"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"json", "tsv"});

  auto add_curve = [&](CLI::App* sc) {
    sc->add_option("--curves", c.curve_file, "JSON-lines curve file")->capture_default_str();
    sc->add_option("--curve", c.curve, "curve label")->capture_default_str();
  };
  auto add_prime = [&](CLI::App* sc) {
    sc->add_option("--p", c.p, "good prime p > 3")->capture_default_str();
    sc->add_option("--mode", c.mode, "ss, ord or auto (from a_p)")
        ->check(CLI::IsMember({"ss", "ord", "auto"}))
        ->capture_default_str();
    sc->add_flag("--serre-conjectural", c.serre_conjectural,
                 "use 37 as the surjectivity threshold");
  };
  auto add_format = [&](CLI::App* sc) { sc->add_option("--format", c.format)->check(formats); };

  auto* check = app.add_subcommand("check", "field-independent facts about (E, p)");
  add_curve(check);
  add_prime(check);
  add_format(check);

  auto* density = app.add_subcommand("density", "closed-form densities");
  add_curve(density);
  add_prime(density);
  add_format(density);

  auto* census = app.add_subcommand("census", "enumerate imaginary quadratic fields up to x");
  add_curve(census);
  add_prime(census);
  add_format(census);
  census->add_option("--x", c.x_text, "bound on |D|, e.g. 1e6")->capture_default_str();
  census->add_option("--class-sampling-rate", c.class_sampling_rate)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  census->add_option("--seed", c.seed)->capture_default_str();
  census->add_option("--tol-1e6", c.tol_1e6, "absolute tolerance below x = 10^7")
      ->capture_default_str();
  census->add_option("--tol-1e7", c.tol_1e7, "absolute tolerance from x = 10^7")
      ->capture_default_str();
  census->add_option("--total-rel-tol", c.total_rel_tol)->capture_default_str();
  census->add_option("--threads", c.threads, "worker threads (0: default)");
  census->add_option("--chunk-size", c.chunk_size)->capture_default_str();
  census->add_option("--out", c.out_prefix, "write PREFIX.json and PREFIX.tsv");
  census->add_flag("--assume-surjective,!--no-assume-surjective", c.assume_surjective,
                   "count choired fields when surjectivity is unknown");

  auto* primescan = app.add_subcommand("primescan", "fix (E, K) and sweep primes p");
  add_curve(primescan);
  add_format(primescan);
  primescan->add_option("--K", c.K, "fundamental discriminant of K")->required();
  primescan->add_option("--p-lo", c.p_lo)->capture_default_str();
  primescan->add_option("--p-hi", c.p_hi)->capture_default_str();
  primescan->add_option("--hK", c.hK, "class number of K (required when |D_K| > 10^7)");
  primescan->add_option("--threads", c.threads);
  primescan->add_flag("--serre-conjectural", c.serre_conjectural);

  auto* hnum = app.add_subcommand("class-number", "class number h(D) by reduced forms");
  hnum->add_option("--D", c.D, "negative fundamental discriminant")->required();
  add_format(hnum);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (*check) {
      c.subcommand = "check";
      if (c.format.empty()) c.format = "tsv";
      return cmd_check(c, out, err);
    }
    if (*density) {
      c.subcommand = "density";
      if (c.format.empty()) c.format = "tsv";
      return cmd_density(c, out);
    }
    if (*census) {
      c.subcommand = "census";
      if (c.format.empty()) c.format = "json";
      return cmd_census(c, out, err);
    }
    if (*primescan) {
      c.subcommand = "primescan";
      if (c.format.empty()) c.format = "tsv";
      return cmd_primescan(c, out);
    }
    c.subcommand = "class-number";
    if (c.format.empty()) c.format = "tsv";
    return cmd_class_number(c, out);
  } catch (const ValidationError& e) {
    err << "choired: " << e.what() << '\n';
    return kExitValidation;
  } catch (const HypothesisError& e) {
    err << "choired: " << e.what() << '\n';
    return kExitHypothesis;
  }
}

}  // namespace choired

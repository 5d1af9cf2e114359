// scarfcs command-line tool. Talks to the library only through scarfcs.h.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scarfcs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Thrown for bad input discovered after CLI11 has parsed argv.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  scs_status status;
  ApiError(scs_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(scs_status s, const char* context) {
  if (s == SCS_OK) return;
  throw ApiError(s, std::string(context) + ": " + scs_status_name(s) + ": " + scs_last_error());
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Common {
  std::string model = "rational";
  int gcs = 1;
  double alpha = 12.0;
  double beta = -1.0;  // negative: (alpha - 1) / 2
  double sigma = 0.0;
  double alpha_tilde = 0.0;
  double zeta_abs = 1.0;
  double zeta_phase = 0.0;
  int nmax = -1;
  int min_nmax = 20;
  unsigned threads = 0;
  std::string output;
  std::string config;

  scs_params params() const { return {alpha, beta < 0.0 ? (alpha - 1.0) / 2.0 : beta}; }
  scs_gcs gcs_spec() const { return {gcs, sigma, alpha_tilde}; }
  scs_model model_kind() const {
    return model == "conventional" ? SCS_MODEL_CONVENTIONAL : SCS_MODEL_RATIONAL;
  }
  unsigned thread_count() const {
    return threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  }
};

// Output sink: a file when --output is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ApiError(SCS_ERR_IO, "cannot open '" + path + "' for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void add_model(CLI::App* c, Common& o) {
  c->add_option("--model", o.model, "Potential: conventional or rational")
      ->check(CLI::IsMember({"conventional", "rational"}));
}

void add_params(CLI::App* c, Common& o) {
  c->add_option("--alpha", o.alpha, "Potential parameter alpha (> 1)");
  c->add_option("--beta", o.beta, "Potential parameter beta, 0 < beta < alpha - 1; -1 means (alpha-1)/2");
}

void add_gcs(CLI::App* c, Common& o) {
  c->add_option("--gcs", o.gcs, "Coherent-state family 1..4")->check(CLI::Range(1, 4));
  c->add_option("--sigma", o.sigma, "GCS4 parameter sigma (< 2)");
  c->add_option("--alpha-tilde", o.alpha_tilde, "Phase parameter alpha-tilde");
}

void add_zeta(CLI::App* c, Common& o) {
  c->add_option("--zeta-abs", o.zeta_abs, "Modulus |zeta|; statistics depend on it alone");
  c->add_option("--zeta-phase", o.zeta_phase, "Phase arg(zeta)");
}

void add_truncation(CLI::App* c, Common& o) {
  c->add_option("--nmax", o.nmax, "Fixed truncation index; -1 selects the adaptive tail policy");
  c->add_option("--min-nmax", o.min_nmax, "Smallest truncation index for the adaptive policy");
}

void add_io(CLI::App* c, Common& o, const char* output_help) {
  c->add_option("--threads", o.threads, "Worker threads; 0 uses every core")
      ->envname("SCARFCS_THREADS");
  c->add_option("--output", o.output, output_help);
  c->add_option("--config", o.config, "Flat key=value file mirroring the flags; flags win");
}

// "--n 0..5" or "--n 3".
std::pair<int, int> parse_levels(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int n = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {n, n};
    }
    const int lo = std::stoi(text.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument(text);
    const std::string rest = text.substr(dots + 2);
    const int hi = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(text);
    if (lo < 0 || hi < lo) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError("--n expects N or LO..HI with 0 <= LO <= HI, got '" + text + "'");
  }
}

using StatePtr = std::unique_ptr<scs_state, decltype(&scs_state_destroy)>;

StatePtr make_state(const Common& o) {
  scs_state* s = nullptr;
  check(scs_state_create(o.gcs_spec(), o.params(), o.zeta_abs, o.zeta_phase, o.min_nmax, o.nmax,
                         &s),
        "coherent state");
  return {s, &scs_state_destroy};
}

// ---- subcommands ----

struct EigenOpts {
  std::string levels = "0..5";
  int grid_points = 4001;
  double margin = 0.05;
};

int run_eigen(const Common& o, const EigenOpts& e) {
  const auto [lo, hi] = parse_levels(e.levels);
  scs_system* raw = nullptr;
  check(scs_system_create(o.model_kind(), o.params(), hi, &raw), "eigensystem");
  std::unique_ptr<scs_system, decltype(&scs_system_destroy)> sys(raw, &scs_system_destroy);
  Sink sink(o.output);
  auto& os = sink.os();
  os << "n,energy,norm_printed,norm_quadrature,norm_ratio,closed_form_confirmed,"
        "schrodinger_residual\n";
  for (int n = lo; n <= hi; ++n) {
    scs_eigen_row r{};
    check(scs_eigen_row_get(sys.get(), n, e.grid_points, e.margin, &r), "eigen row");
    os << r.n << ',' << num(r.energy) << ',' << num(r.norm_printed) << ','
       << num(r.norm_quadrature) << ',' << num(r.norm_ratio) << ',' << r.closed_form_confirmed
       << ',' << num(r.schrodinger_residual) << '\n';
  }
  return kExitOk;
}

int run_validate(const Common& o) {
  Sink sink(o.output);
  auto& os = sink.os();
  auto cb = [](void* user, int id, const char* name, int passed, const char* detail,
               double seconds) {
    auto& out = *static_cast<std::ostream*>(user);
    char t[32];
    std::snprintf(t, sizeof t, "%.2f", seconds);
    out << (passed ? "PASS" : "FAIL") << " C" << id << ' ' << name << ": " << detail << " (" << t
        << " s)\n";
    out.flush();
  };
  int all = 0;
  check(scs_validate(o.thread_count(), cb, &os, &all), "validate");
  os << (all ? "all checks passed\n" : "some checks failed\n");
  return all ? kExitOk : kExitFailure;
}

struct StatsOpts {
  double z = 0.5;
  double z_min = 0.0;
  double z_max = 0.0;
  int z_steps = 0;
  std::string format = "json";
};

int run_stats(const Common& o, const StatsOpts& s) {
  std::vector<double> zs;
  if (s.z_steps > 0) {
    if (!(s.z_max > s.z_min)) throw UsageError("--z-max must exceed --z-min for a sweep");
    for (int k = 0; k < s.z_steps; ++k) {
      zs.push_back(s.z_steps == 1 ? s.z_min : s.z_min + (s.z_max - s.z_min) * k / (s.z_steps - 1));
    }
  } else {
    zs.push_back(s.z);
  }
  std::vector<scs_stats_report> rows;
  for (double z : zs) {
    scs_stats_report r{};
    check(scs_stats(o.gcs_spec(), o.params(), z, &r), "stats");
    rows.push_back(r);
  }
  Sink sink(o.output);
  auto& os = sink.os();
  if (s.format == "csv") os << "z,g2,mandel_q,mean_photon,metric_factor\n";
  for (const auto& r : rows) {
    if (s.format == "csv") {
      os << num(r.z) << ',' << num(r.g2) << ',' << num(r.mandel_q) << ',' << num(r.mean_photon)
         << ',' << num(r.metric_factor) << '\n';
    } else {
      nlohmann::ordered_json j;
      j["z"] = r.z;
      j["g2"] = r.g2;
      j["mandel_q"] = r.mandel_q;
      j["mean_photon"] = r.mean_photon;
      j["metric_factor"] = r.metric_factor;
      os << j.dump() << '\n';
    }
  }
  return kExitOk;
}

int run_distribution(const Common& o) {
  const int n_max = o.nmax < 0 ? o.min_nmax : o.nmax;
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
  check(scs_distribution(o.gcs_spec(), o.params(), o.zeta_abs, n_max, p.data(), p.size()),
        "distribution");
  Sink sink(o.output);
  auto& os = sink.os();
  os << "n,probability\n";
  for (int n = 0; n <= n_max; ++n) os << n << ',' << num(p[static_cast<std::size_t>(n)]) << '\n';
  return kExitOk;
}

struct TimeOpts {
  double t_max = 2.0 * std::numbers::pi;
  int t_points = 200;
};

int run_autocorr(const Common& o, const TimeOpts& t) {
  if (t.t_points < 2) throw UsageError("--t-points must be at least 2");
  if (!(t.t_max > 0.0)) throw UsageError("--t-max must be positive");
  auto state = make_state(o);
  Sink sink(o.output);
  auto& os = sink.os();
  os << "t,abs2,re,im\n";
  for (int i = 0; i < t.t_points; ++i) {
    const double time = t.t_max * i / (t.t_points - 1);
    double re = 0.0, im = 0.0;
    check(scs_autocorrelation(state.get(), time, &re, &im), "autocorrelation");
    os << num(time) << ',' << num(re * re + im * im) << ',' << num(re) << ',' << num(im) << '\n';
  }
  return kExitOk;
}

struct CarpetOpts {
  int x_points = 200;
  double margin = 0.05;
  std::string format = "pgm";
};

constexpr double kReportedSliceTolerance = 1e-6;

int run_carpet(const Common& o, const TimeOpts& t, const CarpetOpts& c) {
  auto state = make_state(o);
  scs_carpet* raw = nullptr;
  const scs_grid grid{c.x_points, t.t_points, t.t_max, c.margin};
  check(scs_carpet_create(state.get(), o.model_kind(), grid, o.thread_count(), &raw), "carpet");
  std::unique_ptr<scs_carpet, decltype(&scs_carpet_destroy)> field(raw, &scs_carpet_destroy);

  const scs_params p = o.params();
  int n_max = 0;
  double tail = 0.0;
  check(scs_state_info(state.get(), &n_max, &tail, nullptr), "state info");
  std::ostringstream desc;
  desc << "scarfcs carpet model=" << o.model << " gcs=" << o.gcs << " alpha=" << num(p.alpha)
       << " beta=" << num(p.beta) << " zeta=" << num(o.zeta_abs) << "@" << num(o.zeta_phase)
       << " nmax=" << n_max << " t_max=" << num(t.t_max);
  const std::string path = o.output.empty() ? "carpet." + c.format : o.output;
  check(scs_carpet_export(field.get(), c.format == "csv" ? SCS_FORMAT_CSV : SCS_FORMAT_PGM,
                          path.c_str(), desc.str().c_str()),
        "export");

  std::vector<double> norms(static_cast<std::size_t>(t.t_points));
  check(scs_carpet_slice_norms(field.get(), norms.data(), norms.size()), "slice norms");
  double lo = norms.front(), hi = norms.front(), worst = 0.0;
  for (double s : norms) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    worst = std::max(worst, std::fabs(s - 1.0));
  }
  const bool ok = worst <= kReportedSliceTolerance;
  std::fprintf(stderr,
               "carpet: %s (%dx%d), nmax=%d, tail=%.3g, slice norms in [%.15f, %.15f], "
               "max |norm-1| = %.3g %s\n",
               path.c_str(), c.x_points, t.t_points, n_max, tail, lo, hi, worst,
               ok ? "(ok)" : "(exceeds 1e-06)");
  return ok ? kExitOk : kExitFailure;
}

// ---- config file ----

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::string config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return {};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Appends "--key value" for every config entry the command line does not set.
// Keys that the chosen subcommand does not accept are skipped, so one file can
// serve several subcommands.
void merge_config(std::vector<std::string>& args, CLI::App& app) {
  const std::string path = config_path(args);
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (a.empty() || a[0] == '-') continue;
    sub = app.get_subcommand_ptr(a).get();
    if (sub) break;
  }
  if (!sub) return;
  std::string line;
  int lineno = 0;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    if (key == "config") continue;
    if (!sub->get_option_no_throw(flag)) continue;
    if (has_flag(args, flag)) continue;
    extra.push_back(flag);
    extra.push_back(value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
}

int run(int argc, char** argv) {
  CLI::App app{"Coherent states, statistics and quantum carpets of the trigonometric Scarf-I "
               "potential and its X1-rational extension"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(scs_version()));

  // One option block per subcommand so defaults can differ (beta, model).
  Common oe, ov, os, od, oa, oc;
  oe.beta = oc.beta = 10.9;
  EigenOpts eo;
  StatsOpts so;
  TimeOpts ta, tc;
  CarpetOpts co;

  auto* eigen = app.add_subcommand("eigen", "Tabulate energies, normalization audit and residuals");
  add_model(eigen, oe);
  add_params(eigen, oe);
  eigen->add_option("--n", eo.levels, "Level N or range LO..HI");
  eigen->add_option("--grid-points", eo.grid_points, "Samples for the Schrodinger residual")
      ->check(CLI::Range(5, 10000000));
  eigen->add_option("--margin", eo.margin, "Distance kept from each wall")
      ->check(CLI::Range(1e-6, 0.49));
  add_io(eigen, oe, "Output CSV file; empty writes to stdout");

  auto* validate = app.add_subcommand("validate", "Run every built-in cross-check");
  add_io(validate, ov, "Report file; empty writes to stdout");

  auto* stats = app.add_subcommand("stats", "g2, Mandel Q, mean photon number and metric factor");
  add_gcs(stats, os);
  add_params(stats, os);
  stats->add_option("--z", so.z, "Evaluation point z = |zeta|^2 when not sweeping");
  stats->add_option("--z-min", so.z_min, "Sweep start");
  stats->add_option("--z-max", so.z_max, "Sweep end");
  stats->add_option("--z-steps", so.z_steps, "Sweep points; 0 evaluates --z only")
      ->check(CLI::NonNegativeNumber);
  stats->add_option("--format", so.format, "json (one object per line) or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  add_io(stats, os, "Output file; empty writes to stdout");

  auto* dist = app.add_subcommand("distribution", "Weighting distribution P_n");
  add_gcs(dist, od);
  add_params(dist, od);
  add_zeta(dist, od);
  dist->add_option("--nmax", od.nmax, "Last level listed; -1 uses --min-nmax");
  dist->add_option("--min-nmax", od.min_nmax, "Last level listed when --nmax is -1");
  add_io(dist, od, "Output CSV file; empty writes to stdout");

  auto* autocorr = app.add_subcommand("autocorr", "Autocorrelation trace A(t)");
  add_gcs(autocorr, oa);
  add_params(autocorr, oa);
  add_zeta(autocorr, oa);
  add_truncation(autocorr, oa);
  autocorr->add_option("--t-max", ta.t_max, "Last time sample");
  autocorr->add_option("--t-points", ta.t_points, "Number of time samples");
  add_io(autocorr, oa, "Output CSV file; empty writes to stdout");

  auto* carpet = app.add_subcommand("carpet", "Space-time probability density |Psi(x,t)|^2");
  add_gcs(carpet, oc);
  add_model(carpet, oc);
  add_params(carpet, oc);
  add_zeta(carpet, oc);
  add_truncation(carpet, oc);
  carpet->add_option("--x-points", co.x_points, "Spatial samples")->check(CLI::Range(2, 100000));
  carpet->add_option("--t-points", tc.t_points, "Time samples")->check(CLI::Range(2, 100000));
  carpet->add_option("--t-max", tc.t_max, "Last time sample");
  carpet->add_option("--margin", co.margin, "Distance kept from each wall")
      ->check(CLI::Range(1e-6, 0.49));
  carpet->add_option("--format", co.format, "pgm (16-bit P5) or csv")
      ->check(CLI::IsMember({"pgm", "csv"}));
  add_io(carpet, oc, "Output file; empty writes carpet.<format>");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    merge_config(args, app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    CLI::App* shown = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    std::cerr << shown->help("", CLI::AppFormatMode::Normal);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*eigen) return run_eigen(oe, eo);
    if (*validate) return run_validate(ov);
    if (*stats) return run_stats(os, so);
    if (*dist) return run_distribution(od);
    if (*autocorr) return run_autocorr(oa, ta);
    if (*carpet) return run_carpet(oc, tc, co);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
    // Rejected parameters are the caller's mistake, not a numerical failure.
    return e.status == SCS_ERR_DOMAIN || e.status == SCS_ERR_INVALID_ARGUMENT ? kExitUsage
                                                                              : kExitFailure;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "evlab/errors.hpp"
#include "evlab/maass.hpp"
#include "evlab/moments.hpp"
#include "evlab/parallel.hpp"
#include "evlab/verify.hpp"
#include "evlab/wimu.hpp"

#ifndef EVLAB_DATA_DIR
#define EVLAB_DATA_DIR "data"
#endif

namespace evlab::cli {

namespace {

struct HelpRequested {
  std::string text;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

cplx parse_complex(const std::string& s) {
  std::istringstream is(s);
  double re = 0, im = 0;
  char comma = 0;
  if (!(is >> re)) throw ConfigError("--an: expected RE or RE,IM, got '" + s + "'");
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw ConfigError("--an: expected RE,IM, got '" + s + "'");
  }
  std::string rest;
  if (is >> rest) throw ConfigError("--an: trailing characters in '" + s + "'");
  return {re, im};
}

std::size_t required_forms(Command c) {
  switch (c) {
    case Command::verify: return 0;
    case Command::cross: return 2;
    default: return 1;
  }
}

std::vector<std::string> default_forms(Command c) {
  const std::string d = EVLAB_DATA_DIR;
  switch (c) {
    case Command::verify: return {d + "/maass_even_13.78.txt", d + "/maass_odd_9.53.txt"};
    case Command::cross: return {d + "/maass_even_13.78.txt", d + "/maass_even_17.74.txt"};
    default: return {d + "/maass_even_13.78.txt"};
  }
}

void validate(const RunConfig& c) {
  if (c.n < 3) throw ConfigError("--n must be >= 3");
  if (!(c.t_min < c.t_max)) throw ConfigError("--tmin must be below --tmax");
  if (!(c.grid_step >= 0.0)) throw ConfigError("--grid-step must be positive (or 0 for automatic)");
  if (c.threads < 0) throw ConfigError("--threads must be >= 0");
  const std::size_t need = required_forms(c.command);
  if (need == 0 && c.form_paths.empty()) throw ConfigError("verify needs at least one --form");
  if (need > 0 && c.form_paths.size() != need)
    throw ConfigError(std::string(to_string(c.command)) + " takes exactly " + std::to_string(need) +
                      " --form argument" + (need > 1 ? "s" : "") + ", got " + std::to_string(c.form_paths.size()));
  try {
    c.tol.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (c.command == Command::scan_mu && c.t_min < 2.0) throw ConfigError("scan-mu needs --tmin >= 2");
  if (c.command != Command::verify && c.command != Command::scan_mu && dyadic_windows(c.t_min, c.t_max).empty())
    throw ConfigError("no dyadic window [T, 2T] fits in [tmin, tmax]");
}

std::string header(const RunConfig& c) {
  std::ostringstream os;
  os << "# evlab " << EVLAB_VERSION << "\n";
  os << "# command = " << to_string(c.command) << "\n";
  for (const auto& f : c.form_paths) os << "# form = " << f << "\n";
  os << "# n = " << c.n << "\n";
  os << "# tmin = " << num(c.t_min) << "\n";
  os << "# tmax = " << num(c.t_max) << "\n";
  os << "# grid_step = " << (c.grid_step > 0.0 ? num(c.grid_step) : std::string("auto")) << "\n";
  os << "# an = " << num(c.a_n.real()) << "," << num(c.a_n.imag()) << "\n";
  os << "# rel_tol = " << num(c.tol.rel_tol) << "\n";
  os << "# abs_tol = " << num(c.tol.abs_tol) << "\n";
  os << "# max_levels = " << c.tol.max_levels << "\n";
  os << "# series_cap = " << c.tol.series_cap << "\n";
  return os.str();
}

std::vector<MaassForm> load_forms(const RunConfig& c) {
  std::vector<MaassForm> forms;
  for (const auto& p : c.form_paths) forms.push_back(load_maass_form(p));
  return forms;
}

int run_verify(const RunConfig& c, std::ostream& out, std::ostream& log) {
  auto forms = load_forms(c);
  auto checks = run_verify_suite(forms, c.tol, resolve_threads(c.threads));
  const std::string report = format_report(checks);
  out << header(c) << report;
  if (&out != &log) log << report.substr(report.rfind('\n', report.size() - 2) + 1);
  for (const auto& r : checks)
    if (!r.passed) return verification_failed;
  return ok;
}

int run_scan(const RunConfig& c, std::ostream& out, std::ostream& log) {
  auto forms = load_forms(c);
  const MaassForm& f = forms.front();
  MuEvaluator ev(f, c.n, c.a_n);
  const double h = c.grid_step > 0.0 ? c.grid_step : 0.15 / (c.n * std::log(c.t_max));
  const auto count = static_cast<std::size_t>(std::floor((c.t_max - c.t_min) / h + 1e-9)) + 1;
  struct Row {
    double t;
    cplx mu;
    double g, s;
  };
  std::vector<Row> rows(count);
  parallel_for(count, resolve_threads(c.threads), [&](std::size_t k) {
    const double t = c.t_min + double(k) * h;
    rows[k] = {t, ev.completed(t).value, gamma_factor_sq(f, c.n, t), stirling_gamma_sq(c.n, t)};
  });
  out << header(c) << "t,re_mu,im_mu,abs2_mu,gamma_factor_sq,stirling_sq\n";
  for (const auto& r : rows)
    out << num(r.t) << "," << num(r.mu.real()) << "," << num(r.mu.imag()) << "," << num(std::norm(r.mu)) << ","
        << num(r.g) << "," << num(r.s) << "\n";
  const Row& last = rows.back();
  log << "scan-mu n=" << c.n << ": " << count << " samples; gamma_factor_sq/stirling_sq at t=" << num(last.t)
      << " is " << num(last.g / last.s) << "\n";
  return ok;
}

void emit_row(std::ostream& out, const MomentReport& r) {
  out << num(r.T) << "," << num(r.integral.real()) << "," << num(r.integral.imag()) << "," << num(r.predicted.real())
      << "," << num(r.predicted.imag()) << "," << num(r.ratio.real()) << "," << num(r.ratio.imag()) << ","
      << num(r.err_estimate) << "\n";
}

int run_moments(const RunConfig& c, std::ostream& out, std::ostream& log) {
  auto forms = load_forms(c);
  MomentOptions opt;
  opt.grid_step = c.grid_step;
  opt.threads = resolve_threads(c.threads);
  std::vector<MomentReport> reports;
  for (double T : dyadic_windows(c.t_min, c.t_max)) {
    switch (c.command) {
      case Command::mean_value: reports.push_back(mean_value(forms[0], c.n, T, c.a_n, opt)); break;
      case Command::second_moment: reports.push_back(second_moment(forms[0], T, opt)); break;
      case Command::variance: reports.push_back(weighted_variance(forms[0], c.n, T, c.a_n, opt)); break;
      case Command::cross: reports.push_back(cross_variance(forms[0], forms[1], c.n, T, c.a_n, opt)); break;
      default: throw ConfigError("not a moment command");
    }
    log << to_string(c.command) << " T=" << num(T) << " ratio=" << num(reports.back().ratio.real()) << "\n";
  }
  out << header(c) << "T,integral_re,integral_im,predicted_re,predicted_im,ratio_re,ratio_im,err\n";
  for (const auto& r : reports) emit_row(out, r);
  for (const auto& r : reports) {
    out << "# T = " << num(r.T) << ": grid_step = " << num(r.grid_step) << ", samples = " << r.samples;
    for (const auto& [k, v] : r.diagnostics) out << ", " << k << " = " << num(v);
    out << "\n";
  }
  std::ostringstream summary;
  if (reports.size() >= 2 && c.command == Command::mean_value) {
    std::vector<double> x, y;
    for (const auto& r : reports) {
      x.push_back(std::log(r.T));
      y.push_back(std::log(std::abs(r.integral)));
    }
    LineFit f = fit_line(x, y);
    summary << "log-log slope = " << num(f.slope) << " +- " << num(f.slope_ci95);
  } else if (reports.size() >= 2 && c.command == Command::second_moment) {
    JutilaFit j = fit_jutila(forms[0], reports);
    summary << "fitted coefficient = " << num(j.coefficient) << ", predicted = " << num(j.predicted)
            << ", B = " << num(j.B) << ", relative gap = " << num(j.relative_gap);
  } else {
    summary << "ratio at T=" << num(reports.back().T) << " is " << num(reports.back().ratio.real());
  }
  out << "# " << summary.str() << "\n";
  log << to_string(c.command) << ": " << summary.str() << "\n";
  return ok;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::scan_mu: return "scan-mu";
    case Command::mean_value: return "mean-value";
    case Command::second_moment: return "second-moment";
    case Command::variance: return "variance";
    case Command::cross: return "cross";
  }
  return "?";
}

std::vector<double> dyadic_windows(double t_min, double t_max) {
  std::vector<double> w;
  for (double T = t_min; 2.0 * T <= t_max * (1.0 + 1e-12); T *= 2.0) w.push_back(T);
  return w;
}

RunConfig parse(int argc, const char* const* argv) {
  RunConfig c;
  std::string an = "1,0";
  CLI::App app{"evlab: Eisenstein-series observables, L-values and their moments"};
  app.set_config("--config", "", "INI-style key = value file; command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--form", c.form_paths, "Maass form data file (repeat for cross)")->check(CLI::ExistingFile);
  app.add_option("--n", c.n, "rank n >= 3");
  app.add_option("--tmin", c.t_min, "start of the t range");
  app.add_option("--tmax", c.t_max, "end of the t range");
  app.add_option("--grid-step", c.grid_step, "t step; 0 picks it from the phase rule");
  app.add_option("--an", an, "coefficient a_n as RE or RE,IM");
  app.add_option("--out", c.out_path, "output file (default stdout)");
  app.add_option("--threads", c.threads, "worker threads, 0 = all");
  app.add_option("--rel-tol", c.tol.rel_tol, "relative quadrature tolerance");
  app.add_option("--abs-tol", c.tol.abs_tol, "absolute quadrature tolerance");
  app.add_option("--max-levels", c.tol.max_levels, "refinement depth");
  app.add_option("--series-cap", c.tol.series_cap, "series term cap");
  const std::pair<const char*, Command> cmds[] = {
      {"verify", Command::verify},       {"scan-mu", Command::scan_mu},   {"mean-value", Command::mean_value},
      {"second-moment", Command::second_moment}, {"variance", Command::variance}, {"cross", Command::cross}};
  const char* help[] = {"run the identity suite", "tabulate mu_{n,t} over [tmin, tmax]",
                        "windowed mean of mu over dyadic windows", "windowed |L(1/2+it)|^2 integrals",
                        "weighted quantum variance over dyadic windows", "off-diagonal variance of two forms"};
  std::vector<std::pair<CLI::App*, Command>> subs;
  for (std::size_t i = 0; i < std::size(cmds); ++i) {
    CLI::App* s = app.add_subcommand(cmds[i].first, help[i]);
    s->fallthrough();
    subs.emplace_back(s, cmds[i].second);
  }
  app.require_subcommand(1);
  const std::string usage = app.help();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{usage};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string(e.what()) + "\n" + usage);
  }
  for (auto& [s, cmd] : subs)
    if (s->parsed()) c.command = cmd;
  c.a_n = parse_complex(an);
  if (c.form_paths.empty()) c.form_paths = default_forms(c.command);
  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(e.what()) + "\n" + usage);
  }
  return c;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  std::ofstream file;
  std::ostream* dst = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) throw ConfigError("cannot open output file " + cfg.out_path);
    dst = &file;
  }
  switch (cfg.command) {
    case Command::verify: return run_verify(cfg, *dst, log);
    case Command::scan_mu: return run_scan(cfg, *dst, log);
    default: return run_moments(cfg, *dst, log);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  RunConfig cfg;
  try {
    cfg = parse(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.text;
    return ok;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return config_error;
  }
  const std::string what = std::string(to_string(cfg.command)) + " (n=" + std::to_string(cfg.n) + ", tmin=" +
                           num(cfg.t_min) + ", tmax=" + num(cfg.t_max) + ")";
  try {
    return run(cfg, out, log);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const DataError& e) {
    log << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const DomainError& e) {
    log << "config error in " << what << ": " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    log << "numerical failure in " << what << ": " << e.what() << "\n";
    return budget_failure;
  }
}

}  // namespace evlab::cli

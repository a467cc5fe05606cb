#include "duffing/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "duffing/derivation.hpp"
#include "duffing/error.hpp"
#include "duffing/execution.hpp"
#include "duffing/format.hpp"
#include "duffing/jump.hpp"
#include "duffing/sim.hpp"
#include "duffing/singular.hpp"
#include "duffing/steady.hpp"

namespace duffing::cli {

using json = nlohmann::ordered_json;

namespace {

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError(std::string(what) + ": '" + std::string(s) + "' is not a finite number");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw UsageError(std::string(what) + ": '" + std::string(s) + "' is not an integer");
  }
  return v;
}

std::pair<int, int> parse_grid(std::string_view s) {
  const auto x = s.find('x');
  if (x == std::string_view::npos) throw UsageError("grid: expected NxM, got '" + std::string(s) + "'");
  const int n = parse_int(s.substr(0, x), "grid");
  const int m = parse_int(s.substr(x + 1), "grid");
  if (n < 1 || m < 1) throw UsageError("grid: dimensions must be >= 1");
  return {n, m};
}

std::string num(double v) { return format_number(v); }

json params_json(const Params& p) {
  return json{{"gamma", p.gamma}, {"zeta", p.zeta}, {"f", p.f_amp}, {"f0", p.f0}};
}

Execution exec_of(const RunConfig& cfg) {
  return cfg.serial ? Execution::serial : Execution::parallel;
}

Format format_of(const RunConfig& cfg, Format fallback) { return cfg.format.value_or(fallback); }

// Destination for the data: an explicit --out path, "-" for standard
// output, or a default file under $DUFFING_OUT_DIR.
std::string destination(const RunConfig& cfg, std::string_view ext) {
  if (cfg.out == "-") return {};
  if (!cfg.out.empty()) return cfg.out;
  if (const char* dir = std::getenv("DUFFING_OUT_DIR"); dir && *dir) {
    return (std::filesystem::path(dir) / (cfg.command + "." + std::string(ext))).string();
  }
  return {};
}

// Writes the data and the summary.  With a file destination the summary goes
// to `out`; otherwise the data does and the summary goes to `err`.
void emit(const RunConfig& cfg, std::string_view ext, const std::string& data,
          const std::string& summary, std::ostream& out, std::ostream& err) {
  const std::string path = destination(cfg, ext);
  if (path.empty()) {
    out << data;
    err << summary << "\n";
  } else {
    write_file(path, data);
    out << summary << " -> " << path << "\n";
  }
}

const char* ext_of(Format f) { return f == Format::json ? "json" : "csv"; }

steady::OmegaRange omega_range(const Range& r) { return {r.lo, r.hi, r.count}; }
jump::SampleRange sample_range(const Range& r) { return {r.lo, r.hi, r.count}; }

int run_response(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto curve = steady::response_curve(cfg.params, omega_range(*cfg.omega), exec_of(cfg),
                                            cfg.include_negative);
  const Format fmt = format_of(cfg, Format::csv);
  std::string data;
  if (fmt == Format::csv) {
    data = csv_line({"omega", "branch", "a0", "a1", "theta"});
    for (const auto& s : curve.samples) {
      data += csv_line({num(s.omega), std::to_string(s.branch), num(s.a0), num(s.a1), num(s.theta)});
    }
  } else {
    json samples = json::array();
    for (const auto& s : curve.samples) {
      samples.push_back(
          {{"omega", s.omega}, {"branch", s.branch}, {"a0", s.a0}, {"a1", s.a1}, {"theta", s.theta}});
    }
    data = json{{"params", params_json(cfg.params)}, {"samples", samples}}.dump(1) + "\n";
  }
  std::set<int> branches;
  for (const auto& s : curve.samples) branches.insert(s.branch);
  std::ostringstream summary;
  summary << "response: " << curve.samples.size() << " samples on " << branches.size()
          << " branches, omega in [" << num(cfg.omega->lo) << ", " << num(cfg.omega->hi) << "]";
  emit(cfg, ext_of(fmt), data, summary.str(), out, err);
  return kOk;
}

int run_jumps(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto pts = jump::jump_points(cfg.params);
  const Format fmt = format_of(cfg, Format::csv);
  std::string data;
  if (fmt == Format::csv) {
    data = csv_line({"omega", "a0", "a1"});
    for (const auto& p : pts) data += csv_line({num(p.omega), num(p.a0), num(p.a1)});
  } else {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({{"omega", p.omega}, {"a0", p.a0}, {"a1", p.a1}});
    data = arr.dump(1) + "\n";
  }
  std::ostringstream summary;
  summary << "jumps: " << pts.size() << " vertical tangencies at " << to_string(cfg.params);
  emit(cfg, ext_of(fmt), data, summary.str(), out, err);
  return kOk;
}

std::string slice_data(const jump::JumpManifoldSlice& s, Format fmt) {
  std::string data;
  if (fmt == Format::csv) {
    data = s.f_amp_free ? csv_line({"f", "f0", "a0"}) : csv_line({"f0", "a0"});
    for (const auto& p : s.points) {
      data += s.f_amp_free ? csv_line({num(p.f_amp), num(p.f0), num(p.a0)})
                           : csv_line({num(p.f0), num(p.a0)});
    }
    return data;
  }
  json arr = json::array();
  for (const auto& p : s.points) {
    if (s.f_amp_free) {
      arr.push_back({{"f", p.f_amp}, {"f0", p.f0}, {"a0", p.a0}});
    } else {
      arr.push_back({{"f0", p.f0}, {"a0", p.a0}});
    }
  }
  return json{{"params", params_json(s.fixed)}, {"points", arr}}.dump(1) + "\n";
}

int run_manifold2d(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = jump::manifold_slice_2d(cfg.params.gamma, cfg.params.zeta, cfg.params.f_amp,
                                         sample_range(*cfg.f0_range), exec_of(cfg));
  const Format fmt = format_of(cfg, Format::csv);
  std::ostringstream summary;
  summary << "manifold2d: " << s.points.size() << " points over " << s.roots_per_sample.size()
          << " F0 samples";
  emit(cfg, ext_of(fmt), slice_data(s, fmt), summary.str(), out, err);
  return kOk;
}

int run_manifold3d(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto s = jump::manifold_slice_3d(cfg.params.gamma, cfg.params.zeta,
                                         sample_range(*cfg.f_range),
                                         sample_range(*cfg.f0_range), exec_of(cfg));
  const Format fmt = format_of(cfg, Format::csv);
  std::ostringstream summary;
  summary << "manifold3d: " << s.points.size() << " points over " << s.roots_per_sample.size()
          << " (F, F0) samples";
  emit(cfg, ext_of(fmt), slice_data(s, fmt), summary.str(), out, err);
  return kOk;
}

int run_border(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const jump::Parameter varied = jump::parse_parameter(cfg.vary);
  const auto scan = jump::border_set(cfg.params, varied, sample_range(*cfg.range), exec_of(cfg));
  const Format fmt = format_of(cfg, Format::json);
  const std::string name(jump::parameter_name(varied));
  std::string data;
  if (fmt == Format::csv) {
    data = csv_line({"param", "value", "a0_double", "count_below", "count_above"});
    for (const auto& p : scan.points) {
      data += csv_line({name, num(p.value), num(p.a0_double), std::to_string(p.count_below),
                        std::to_string(p.count_above)});
    }
  } else {
    json arr = json::array();
    for (const auto& p : scan.points) {
      arr.push_back({{"param", name},
                     {"value", p.value},
                     {"a0_double", p.a0_double},
                     {"count_below", p.count_below},
                     {"count_above", p.count_above}});
    }
    data = arr.dump(1) + "\n";
  }
  std::ostringstream summary;
  summary << "border (" << name << "):";
  for (const auto& p : scan.points) {
    summary << " " << num(p.value) << " [" << p.count_below << "->" << p.count_above << "]";
  }
  emit(cfg, ext_of(fmt), data, summary.str(), out, err);
  for (const auto& u : scan.unresolved) {
    err << "border: unresolved bracket [" << num(u.lo) << ", " << num(u.hi) << "]\n";
  }
  return scan.unresolved.empty() ? kOk : kNumerical;
}

int run_double_omega(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto ev = jump::double_omega_points(cfg.params.gamma, cfg.params.zeta, cfg.params.f_amp,
                                            sample_range(*cfg.f0_range), exec_of(cfg));
  const Format fmt = format_of(cfg, Format::csv);
  std::string data;
  if (fmt == Format::csv) {
    data = csv_line({"f0", "omega", "a0_low", "a0_high"});
    for (const auto& e : ev) data += csv_line({num(e.f0), num(e.omega), num(e.a0_low), num(e.a0_high)});
  } else {
    json arr = json::array();
    for (const auto& e : ev) {
      arr.push_back({{"f0", e.f0}, {"omega", e.omega}, {"a0", {e.a0_low, e.a0_high}}});
    }
    data = arr.dump(1) + "\n";
  }
  std::ostringstream summary;
  summary << "double-omega: " << ev.size() << " events";
  for (const auto& e : ev) summary << " F0=" << num(e.f0) << " (omega=" << num(e.omega) << ")";
  emit(cfg, ext_of(fmt), data, summary.str(), out, err);
  return kOk;
}

int run_singular_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  singular::ScanGrid grid;
  if (cfg.zeta_range) {
    grid.zeta_lo = cfg.zeta_range->lo;
    grid.zeta_hi = cfg.zeta_range->hi;
    grid.n_zeta = cfg.zeta_range->count;
  }
  if (cfg.c_range) {
    grid.c_lo = cfg.c_range->lo;
    grid.c_hi = cfg.c_range->hi;
    grid.n_c = cfg.c_range->count;
  }
  if (cfg.grid) {
    grid.n_zeta = cfg.grid->first;
    grid.n_c = cfg.grid->second;
  }
  const auto rep = singular::scan_no_singular(grid, exec_of(cfg));
  const Format fmt = format_of(cfg, Format::json);
  std::string data;
  if (fmt == Format::csv) {
    data = csv_line({"zeta", "c", "x"});
    for (const auto& v : rep.violations) data += csv_line({num(v.zeta), num(v.c), num(v.x)});
  } else {
    json viol = json::array();
    for (const auto& v : rep.violations) viol.push_back({{"zeta", v.zeta}, {"c", v.c}, {"x", v.x}});
    const json g{{"zeta_lo", grid.zeta_lo}, {"zeta_hi", grid.zeta_hi}, {"n_zeta", grid.n_zeta},
                 {"c_lo", grid.c_lo},       {"c_hi", grid.c_hi},       {"n_c", grid.n_c}};
    data = json{{"grid", g}, {"violations", viol}, {"checked", rep.checked}}.dump(1) + "\n";
  }
  std::ostringstream summary;
  summary << "singular-scan: " << rep.violations.size() << " violations (" << rep.checked
          << " grid points, " << rep.descartes_cleared << " cleared by sign pattern)";
  emit(cfg, ext_of(fmt), data, summary.str(), out, err);
  return kOk;
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  sim::SweepConfig sc;
  sc.steps_per_period = cfg.steps_per_period;
  sc.transient_periods = cfg.transient_periods;
  sc.measure_periods = cfg.measure_periods;
  const auto sweep = sim::bifurcation_sweep(cfg.params, omega_range(*cfg.omega), sc);
  const auto jumps = sim::sweep_jumps(sweep, 0.15, cfg.refine);
  const Format fmt = format_of(cfg, Format::csv);
  std::string data;
  if (fmt == Format::csv) {
    data = csv_line({"omega", "direction", "a0_sim", "a1_sim"});
    for (const auto& r : sweep.records) {
      data += csv_line({num(r.omega), sim::direction_name(r.direction), num(r.a0_sim), num(r.a1_sim)});
    }
  } else {
    json recs = json::array();
    for (const auto& r : sweep.records) {
      recs.push_back({{"omega", r.omega},
                      {"direction", sim::direction_name(r.direction)},
                      {"a0_sim", r.a0_sim},
                      {"a1_sim", r.a1_sim}});
    }
    const json meta{{"params", params_json(cfg.params)},
                    {"steps_per_period", sc.steps_per_period},
                    {"transient_periods", sc.transient_periods},
                    {"measure_periods", sc.measure_periods},
                    {"seed", {{"y", sweep.seed.y}, {"v", sweep.seed.v}}}};
    data = json{{"metadata", meta}, {"records", recs}}.dump(1) + "\n";
  }
  std::ostringstream summary;
  summary << "sweep: " << sweep.records.size() << " records; jumps";
  if (jumps.empty()) summary << " none";
  for (const auto& j : jumps) {
    summary << " " << sim::direction_name(j.direction) << "@" << num(j.omega);
  }
  emit(cfg, ext_of(fmt), data, summary.str(), out, err);
  return kOk;
}

int run_derive_tables(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto tables = algebra::derive_tables();
  emit(cfg, "txt", algebra::tables_report(tables),
       "derive-tables: response degree " +
           std::to_string(tables.response.degree(algebra::Symbol::A0)) + ", jump degree " +
           std::to_string(tables.jump.degree(algebra::Symbol::A0)),
       out, err);
  return kOk;
}

}  // namespace

Range parse_range(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw UsageError("range: expected min:max[:count], got '" + std::string(text) + "'");
  }
  Range r;
  r.lo = parse_double(parts[0], "range");
  r.hi = parse_double(parts[1], "range");
  if (parts.size() == 3) r.count = parse_int(parts[2], "range count");
  if (r.hi < r.lo) throw UsageError("range: max < min in '" + std::string(text) + "'");
  if (r.count < 1) throw UsageError("range: count must be >= 1");
  return r;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Jump-phenomenon analysis of the forced asymmetric Duffing oscillator"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string omega, range, f_range, f0_range, zeta_range, c_range, grid, format;

  auto add_params = [&](CLI::App* s, bool with_f0) {
    s->add_option("--gamma", cfg.params.gamma, "cubic stiffness (default 0.0783)");
    s->add_option("--zeta", cfg.params.zeta, "damping ratio (default 0.025)");
    s->add_option("--f", cfg.params.f_amp, "harmonic forcing amplitude F (default 0.1)");
    if (with_f0) s->add_option("--f0", cfg.params.f0, "constant force F0 (default 0.4)");
  };
  auto add_output = [&](CLI::App* s) {
    s->add_option("--out", cfg.out, "output file ('-' for standard output)");
    s->add_option("--format", format, "csv or json");
    s->add_option("--threads", cfg.threads, "worker threads (default: all)");
    s->add_flag("--serial", cfg.serial, "use the serial reference kernels");
  };

  auto* response = app.add_subcommand("response", "amplitude-frequency response curve");
  add_params(response, true);
  response->add_option("--omega", omega, "min:max[:count]")->required();
  response->add_flag("--include-negative", cfg.include_negative, "keep A0 < 0 roots");
  add_output(response);

  auto* jumps = app.add_subcommand("jumps", "vertical tangencies of the response curve");
  add_params(jumps, true);
  add_output(jumps);

  auto* m2 = app.add_subcommand("manifold2d", "jump manifold over F0 at fixed gamma, zeta, F");
  add_params(m2, false);
  m2->add_option("--f0-range", f0_range, "min:max[:count]")->required();
  add_output(m2);

  auto* m3 = app.add_subcommand("manifold3d", "jump manifold over (F, F0) at fixed gamma, zeta");
  add_params(m3, false);
  m3->add_option("--f-range", f_range, "min:max[:count]")->required();
  m3->add_option("--f0-range", f0_range, "min:max[:count]")->required();
  add_output(m3);

  auto* border = app.add_subcommand("border", "parameter values where the tangency count changes");
  add_params(border, true);
  border->add_option("--vary", cfg.vary, "gamma, zeta, f or f0")->required();
  border->add_option("--range", range, "min:max[:count]")->required();
  add_output(border);

  auto* dbl = app.add_subcommand("double-omega", "F0 values where two tangencies share omega");
  add_params(dbl, false);
  dbl->add_option("--f0-range", f0_range, "min:max[:count]")->required();
  add_output(dbl);

  auto* scan = app.add_subcommand("singular-scan", "search the (zeta, c) grid for singular points");
  scan->add_option("--zeta-range", zeta_range, "min:max[:count]");
  scan->add_option("--c-range", c_range, "min:max[:count]");
  scan->add_option("--grid", grid, "NxM grid size (zeta x c)");
  add_output(scan);

  auto* sweep = app.add_subcommand("sweep", "time-domain up/down frequency sweep");
  add_params(sweep, true);
  sweep->add_option("--omega", omega, "min:max[:count]")->required();
  sweep->add_option("--steps-per-period", cfg.steps_per_period, "RK4 steps per period (>= 500)");
  sweep->add_option("--transient", cfg.transient_periods, "discarded periods per omega");
  sweep->add_option("--measure", cfg.measure_periods, "measured periods per omega");
  sweep->add_option("--refine", cfg.refine, "bisection steps locating each jump");
  add_output(sweep);

  auto* derive = app.add_subcommand("derive-tables", "exact derivation report");
  derive->add_option("--out", cfg.out, "output file ('-' for standard output)");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
  } catch (const CLI::Success&) {
    out << app.help();
    for (auto* sub : app.get_subcommands()) out << sub->help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  cfg.command = app.get_subcommands().front()->get_name();
  const auto& p = cfg.params;
  for (double v : {p.gamma, p.zeta, p.f_amp, p.f0}) {
    if (!std::isfinite(v)) throw UsageError("parameters must be finite");
  }
  if (!(p.gamma > 0)) throw UsageError("--gamma must be > 0");
  if (!(p.zeta > 0)) throw UsageError("--zeta must be > 0");
  if (p.f_amp < 0) throw UsageError("--f must be >= 0");
  if (p.f0 < 0) throw UsageError("--f0 must be >= 0");

  if (!omega.empty()) cfg.omega = parse_range(omega);
  if (!range.empty()) cfg.range = parse_range(range);
  if (!f_range.empty()) cfg.f_range = parse_range(f_range);
  if (!f0_range.empty()) cfg.f0_range = parse_range(f0_range);
  if (!zeta_range.empty()) cfg.zeta_range = parse_range(zeta_range);
  if (!c_range.empty()) cfg.c_range = parse_range(c_range);
  if (!grid.empty()) cfg.grid = parse_grid(grid);
  if (!format.empty()) {
    if (format == "csv") {
      cfg.format = Format::csv;
    } else if (format == "json") {
      cfg.format = Format::json;
    } else {
      throw UsageError("--format must be csv or json");
    }
  }
  if (cfg.omega && !(cfg.omega->lo > 0)) throw UsageError("--omega: min must be > 0");
  if (!cfg.vary.empty()) {
    try {
      (void)jump::parse_parameter(cfg.vary);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--vary: ") + e.what());
    }
  }
  if (cfg.threads < 0) throw UsageError("--threads must be >= 0");
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  set_thread_count(cfg.threads);
  const std::string& c = cfg.command;
  if (c == "response") return run_response(cfg, out, err);
  if (c == "jumps") return run_jumps(cfg, out, err);
  if (c == "manifold2d") return run_manifold2d(cfg, out, err);
  if (c == "manifold3d") return run_manifold3d(cfg, out, err);
  if (c == "border") return run_border(cfg, out, err);
  if (c == "double-omega") return run_double_omega(cfg, out, err);
  if (c == "singular-scan") return run_singular_scan(cfg, out, err);
  if (c == "sweep") return run_sweep(cfg, out, err);
  if (c == "derive-tables") return run_derive_tables(cfg, out, err);
  throw UsageError("unknown command '" + c + "'");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const char* name = argc > 0 ? argv[0] : "duffing";
  try {
    const auto cfg = parse_args(argc, argv, out);
    if (!cfg) return kOk;
    return run(*cfg, out, err);
  } catch (const UsageError& e) {
    err << name << ": " << e.what() << "\n";
    return kUsage;
  } catch (const DivergenceError& e) {
    err << name << ": " << e.what() << "\n";
    return kDivergence;
  } catch (const std::invalid_argument& e) {
    err << name << ": " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalError& e) {
    err << name << ": " << e.what() << "\n";
    return kNumerical;
  } catch (const std::domain_error& e) {
    err << name << ": " << e.what() << "\n";
    return kNumerical;
  } catch (const std::range_error& e) {
    err << name << ": " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace duffing::cli

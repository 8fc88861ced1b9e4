#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "liegeo/error.hpp"
#include "liegeo/geodesics.hpp"
#include "liegeo/integrals.hpp"

namespace liegeo::cli {

using nlohmann::json;

namespace {

constexpr double kDefaultDriftTol = 1e-8;
constexpr double kDefaultCompareTol = 1e-6;

/// Opens `path` for writing, or hands back `fallback` for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path == "-") return;
    file_.open(path);
    if (!file_) throw ConfigError("cannot write '" + path + "'");
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

VectorFieldSpec field_or_config_error(const RunConfig& cfg) {
  try {
    return make_field(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::vector<Monitor> build_monitors(const RunConfig& cfg, const VectorFieldSpec& spec) {
  std::vector<std::string> names = cfg.monitors;
  if (names.empty()) {
    names = {"hamiltonian", "norm"};
    if (cfg.n == 4) names.push_back("casimirs");
    names.push_back("momentum");
    if (spec.manakov_data()) names.push_back("manakov-integrals");
    if (spec.kind() == FieldKind::singular_manakov) names.push_back("isotropy-a");
  }
  std::vector<Monitor> out;
  for (const auto& n : names) {
    try {
      out.push_back(make_monitor(n, spec));
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

IntegrationOptions integration_options(const RunConfig& cfg) {
  IntegrationOptions o;
  o.t_end = cfg.t_end;
  o.step = cfg.step;
  o.record_every = cfg.record_every;
  return o;
}

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

json coefficient_map(const Polynomial& p, const std::vector<std::string>& names) {
  json m = json::object();
  for (const auto& [mono, c] : p.terms()) {
    std::string key;
    for (std::size_t k = 0; k < mono.size(); ++k) {
      if (mono[k] == 0) continue;
      if (!key.empty()) key += '*';
      key += names[k];
      if (mono[k] > 1) key += '^' + std::to_string(mono[k]);
    }
    m[key.empty() ? "1" : key] = c;
  }
  return m;
}

/// Restriction of a scalar quadratic on so(n) to the selected coordinates.
Polynomial restricted(const std::function<double(const AlgebraElement&)>& f, int n, const std::vector<int>& vars) {
  const int d = SoBasis(n).dim();
  return quadratic_polynomial(
      [&](const Vector& y) {
        Vector c = Vector::Zero(d);
        for (std::size_t k = 0; k < vars.size(); ++k) c(vars[k]) = y(static_cast<Eigen::Index>(k));
        return f(AlgebraElement::from_coeffs(n, std::move(c)));
      },
      static_cast<int>(vars.size()));
}

}  // namespace

// ------------------------------------------------------------ simulate

int cmd_simulate(const RunConfig& cfg, const OutputOptions& opts, std::ostream& report) {
  const VectorFieldSpec spec = field_or_config_error(cfg);
  const auto monitors = build_monitors(cfg, spec);
  spdlog::info("simulate {}: kind {}, t_end {}, step {}", cfg.source, to_string(spec.kind()), cfg.t_end, cfg.step);
  const Trajectory traj =
      integrate(spec, initial_position(cfg), initial_momentum(cfg), integration_options(cfg), monitors);

  const std::string path = opts.out.empty() ? cfg.output : opts.out;
  if (!path.empty()) {
    Sink sink(path, report);
    write_trajectory_csv(sink.get(), traj, CsvOptions{cfg.include_g, false});
  }
  const double tol = cfg.tolerance.value_or(kDefaultDriftTol);
  bool ok = true;
  for (std::size_t m = 0; m < traj.monitor_names.size(); ++m) {
    report << "max_drift " << traj.monitor_names[m] << ' ' << format_double(traj.max_drift[m]) << '\n';
    ok = ok && traj.max_drift[m] <= tol;
  }
  report << "status " << (ok ? "ok" : "exceeded") << " tol " << format_double(tol) << '\n';
  return ok ? kOk : kToleranceExceeded;
}

// ------------------------------------------------------------ compare

int cmd_compare(const RunConfig& cfg, const OutputOptions& opts, std::ostream& report) {
  if (cfg.kind != FieldKind::sub_riemannian_chain)
    throw ConfigError("compare needs a sub-riemannian-chain field (closed forms exist for chain flows only)");
  const VectorFieldSpec spec = field_or_config_error(cfg);
  const auto s = spec.s();
  const Trajectory numeric =
      integrate(spec, initial_position(cfg), initial_momentum(cfg), integration_options(cfg));
  const OracleDeviation dev = oracle_deviation(*spec.filtration(), s, numeric);

  const std::string path = opts.out.empty() ? cfg.output : opts.out;
  if (!path.empty()) {
    const Trajectory exact =
        closed_form_trajectory(*spec.filtration(), s, numeric.g.front(), numeric.x.front(), numeric.times);
    Sink sink(path, report);
    const CsvOptions csv{cfg.include_g, true};
    write_csv_header(sink.get(), numeric, csv);
    write_csv_rows(sink.get(), exact, csv, "closed-form");
    write_csv_rows(sink.get(), numeric, csv, "ode");
  }
  const double tol = cfg.tolerance.value_or(kDefaultCompareTol);
  report << "deviation group " << format_double(dev.group) << '\n';
  report << "deviation algebra " << format_double(dev.algebra) << '\n';
  const bool ok = dev.max() <= tol;
  report << "status " << (ok ? "ok" : "exceeded") << " tol " << format_double(tol) << '\n';
  return ok ? kOk : kToleranceExceeded;
}

// ------------------------------------------------------------ hull

int cmd_hull(const RunConfig& cfg, const OutputOptions& opts, std::ostream& report) {
  if (!cfg.hull) throw ConfigError("hull needs a 'hull' section");
  const SoBasis ambient(cfg.n);
  const LieHull hull = lie_hull(ambient, cfg.hull->seeds, cfg.hull->labels);
  report << "dim " << hull.dim() << " of " << ambient.dim() << '\n';
  for (const auto& step : hull.certificate)
    report << "  " << step.expression << "  depth " << step.depth << "  dim " << step.dim_after << '\n';
  if (!opts.out.empty()) {
    json doc;
    doc["n"] = cfg.n;
    doc["dim"] = hull.dim();
    doc["ambient_dim"] = ambient.dim();
    doc["certificate"] = json::array();
    for (const auto& step : hull.certificate)
      doc["certificate"].push_back({{"expression", step.expression}, {"depth", step.depth}, {"dim", step.dim_after}});
    Sink sink(opts.out, report);
    sink.get() << doc.dump(2) << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------ search-integrals

int cmd_search_integrals(const RunConfig& cfg, const OutputOptions& opts, std::ostream& report) {
  const VectorFieldSpec spec = field_or_config_error(cfg);
  const SearchConfig search = cfg.search.value_or(SearchConfig{});
  std::vector<int> vars = search.variables;
  if (vars.empty()) {
    vars.resize(SoBasis(cfg.n).dim());
    for (std::size_t k = 0; k < vars.size(); ++k) vars[k] = static_cast<int>(k);
  }
  PolySystem sys;
  try {
    sys = extract_poly_system(spec, vars);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  std::vector<Polynomial> known;
  for (const auto& name : search.known) {
    if (name == "hamiltonian") {
      known.push_back(restricted([&spec](const AlgebraElement& x) { return hamiltonian(spec, x); }, cfg.n, vars));
    } else if (name == "I1") {
      known.push_back(restricted([](const AlgebraElement& x) { return x.coeffs().squaredNorm(); }, cfg.n, vars));
    } else {
      known.push_back(restricted([](const AlgebraElement& x) { return casimirs_so4(x).i2; }, cfg.n, vars));
    }
  }

  IntegralBasis result;
  try {
    result = search_integrals(sys, search.degree, known);
  } catch (const RankAmbiguous& e) {
    report << "error: " << e.what() << " (gap " << format_double(e.below()) << " .. " << format_double(e.above())
           << ")\n";
    return kToleranceExceeded;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }

  json doc;
  doc["degree"] = result.degree;
  doc["kernel_dim"] = result.kernel_dim;
  doc["known_dim"] = result.known_dim;
  doc["generated_dim"] = result.generated_dim;
  doc["variables"] = result.names;
  doc["sigma_nonzero_min"] = json::parse(json_number(result.sigma_nonzero_min));
  doc["sigma_zero_max"] = json::parse(json_number(result.sigma_zero_max));
  doc["new_integrals"] = json::array();
  for (const auto& p : result.new_integrals) doc["new_integrals"].push_back(coefficient_map(p, result.names));

  Sink sink(opts.out.empty() ? "-" : opts.out, report);
  sink.get() << doc.dump(2) << '\n';
  if (opts.expect_none && !result.new_integrals.empty()) return kToleranceExceeded;
  return kOk;
}

// ------------------------------------------------------------ figures

std::vector<std::string> figure_names() {
  return {"fig1-left", "fig1-right", "fig2-left", "fig2-right", "fig3-left", "fig3-right"};
}

namespace {

// Representative momentum for figures without prescribed initial data:
// (x12, x13, x14, x23, x24, x34).
const Vector& representative_so4() {
  static const Vector x = (Vector(6) << 0.2, 0.7, -0.4, 0.5, 0.3, -0.1).finished();
  return x;
}

}  // namespace

RunConfig figure_config(const std::string& name) {
  RunConfig cfg;
  cfg.source = "figure " + name;
  cfg.n = 4;
  cfg.step = 1e-3;
  cfg.record_every = 10;
  cfg.t_end = 30.0;
  cfg.monitors = {"hamiltonian", "casimirs"};
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "fig1-left" || name == "fig1-right") {
    const auto entry = catalog("u1-su2-u2-so4");
    cfg.filtration = entry.filtration;
    cfg.kind = FieldKind::sub_riemannian_chain;
    if (name == "fig1-left") {
      cfg.index_set = std::set<int>{1, 3};
      cfg.s = {0.0, 1.0, 0.0, 2.0};
    } else {
      cfg.index_set = std::set<int>{1, 2, 3};
      cfg.s = {0.0, 1.0, 1.5, 2.0};
    }
    cfg.x0 = representative_so4();
  } else if (name == "fig2-left" || name == "fig2-right") {
    cfg.kind = FieldKind::rank2_so4;
    cfg.nu1 = 1.0;
    cfg.nu2 = 0.5;
    cfg.t_end = 60.0;
    if (name == "fig2-left") {
      cfg.x0 = (Vector(6) << 1.0, 0.0, 0.0, 0.5, r, -0.5).finished();
    } else {
      cfg.x0 = (Vector(6) << 0.0, 0.0, 0.0, r, std::sqrt(3.0) * r, 0.0).finished();
    }
  } else if (name == "fig3-left" || name == "fig3-right") {
    cfg.kind = FieldKind::singular_manakov;
    cfg.b = {0.0, 0.0, 1.0, 1.0};
    cfg.a = name == "fig3-left" ? std::vector<double>{1.0, 1.0, 3.0, 3.0} : std::vector<double>{1.0, 1.5, 3.0, 4.0};
    cfg.x0 = representative_so4();
    cfg.monitors = {"hamiltonian", "casimirs", "manakov-integrals"};
  } else {
    throw ConfigError("unknown figure '" + name + "'");
  }
  return cfg;
}

std::array<std::string, 3> figure_axes(const std::string& name) {
  if (name.rfind("fig2", 0) == 0) return {"23", "24", "34"};
  return {"13", "14", "24"};
}

void write_svg(std::ostream& out, const std::vector<std::array<double, 3>>& points,
               const std::array<std::string, 3>& axes, const std::string& title) {
  // Oblique view: the third axis recedes at 30 degrees with half length.
  const double cx = 0.5 * std::cos(M_PI / 6.0), cy = 0.5 * std::sin(M_PI / 6.0);
  std::vector<std::pair<double, double>> flat;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& p : points) {
    const double u = p[0] - cx * p[2];
    const double v = p[1] - cy * p[2];
    if (flat.empty()) {
      xmin = xmax = u;
      ymin = ymax = v;
    }
    xmin = std::min(xmin, u);
    xmax = std::max(xmax, u);
    ymin = std::min(ymin, v);
    ymax = std::max(ymax, v);
    flat.emplace_back(u, v);
  }
  const double size = 480.0, margin = 30.0;
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double scale = (size - 2 * margin) / span;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  out << "<title>" << title << " (x_" << axes[0] << ", x_" << axes[1] << ", x_" << axes[2] << ")</title>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f4e9a\" stroke-width=\"0.8\" points=\"";
  for (const auto& [u, v] : flat)
    out << format_double(margin + (u - xmin) * scale) << ',' << format_double(size - margin - (v - ymin) * scale)
        << ' ';
  out << "\"/>\n</svg>\n";
}

int cmd_figure(const std::string& name, const OutputOptions& opts, std::ostream& report) {
  const RunConfig cfg = figure_config(name);
  const VectorFieldSpec spec = make_field(cfg);
  const Trajectory traj = integrate(spec, initial_position(cfg), initial_momentum(cfg), integration_options(cfg),
                                    build_monitors(cfg, spec));
  const auto axes = figure_axes(name);
  const SoBasis basis(4);
  std::array<int, 3> idx{};
  for (int k = 0; k < 3; ++k) idx[k] = basis.parse_label(axes[k]).first;

  std::vector<std::array<double, 3>> points;
  for (const auto& x : traj.x) points.push_back({x.coeffs()(idx[0]), x.coeffs()(idx[1]), x.coeffs()(idx[2])});

  Sink sink(opts.out.empty() ? "-" : opts.out, report);
  sink.get() << "x_" << axes[0] << ",x_" << axes[1] << ",x_" << axes[2] << '\n';
  for (const auto& p : points) sink.get() << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(p[2]) << '\n';
  if (!opts.svg.empty()) {
    Sink svg(opts.svg, report);
    write_svg(svg.get(), points, axes, name);
  }
  if (!opts.out.empty() && opts.out != "-") {
    for (std::size_t m = 0; m < traj.monitor_names.size(); ++m) {
      report << "level " << traj.monitor_names[m] << ' ' << format_double(traj.monitor_values[m].front())
             << " max_drift " << format_double(traj.max_drift[m]) << '\n';
    }
  }
  return kOk;
}

// ------------------------------------------------------------ catalog

int cmd_catalog(std::ostream& report) {
  for (const auto& name : catalog_names()) {
    if (name.find('(') != std::string::npos) {
      report << name << '\n';
      continue;
    }
    const auto entry = catalog(name);
    report << name << "  n=" << entry.filtration->n() << "  dims=";
    const auto dims = entry.filtration->level_dims();
    for (std::size_t k = 0; k < dims.size(); ++k) report << (k ? "<" : "") << dims[k];
    report << "  I={";
    bool first = true;
    for (int i : entry.index_set) {
      report << (first ? "" : ",") << i;
      first = false;
    }
    report << "}  s=(";
    for (std::size_t k = 0; k < entry.s.size(); ++k) report << (k ? "," : "") << format_double(entry.s[k]);
    report << ")\n";
  }
  return kOk;
}

// ------------------------------------------------------------ dispatch

namespace {

struct Overrides {
  CLI::Option* step = nullptr;
  CLI::Option* t_end = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* seed = nullptr;
  double step_v = 0, t_end_v = 0, tol_v = 0;
  std::uint64_t seed_v = 0;

  void apply(RunConfig& cfg) const {
    if (step && step->count()) cfg.step = step_v;
    if (t_end && t_end->count()) cfg.t_end = t_end_v;
    if (tol && tol->count()) cfg.tolerance = tol_v;
    if (seed && seed->count()) cfg.seed = seed_v;
    if (!(cfg.step > 0.0)) throw ConfigError("--step must be positive");
    if (!(cfg.t_end >= 0.0)) throw ConfigError("--t-end must be non-negative");
  }
};

using Command = int (*)(const RunConfig&, const OutputOptions&, std::ostream&);

/// Runs one config, mapping exceptions to exit codes.
int guarded(const std::function<int(std::ostream&)>& body, std::ostream& report, std::ostream& err) {
  try {
    return body(report);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IntegrationDiverged& e) {
    err << "diverged: " << e.what() << " (last good t = " << format_double(e.last_good_time()) << ")\n";
    return kDiverged;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kConfigError;
  }
}

int run_configs(Command command, const std::vector<std::string>& paths, const OutputOptions& opts,
                const Overrides& overrides, int jobs, std::ostream& out, std::ostream& err) {
  if (paths.empty()) {
    err << "config error: --config is required\n";
    return kConfigError;
  }
  if (paths.size() > 1 && !opts.out.empty()) {
    err << "config error: --out applies to a single config; set 'output' per config instead\n";
    return kConfigError;
  }
  std::vector<std::string> reports(paths.size()), errors(paths.size());
  std::vector<int> codes(paths.size(), kOk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) {
      std::ostringstream rep, er;
      codes[i] = guarded(
          [&](std::ostream& r) {
            RunConfig cfg = load_config(paths[i]);
            overrides.apply(cfg);
            return command(cfg, opts, r);
          },
          rep, er);
      reports[i] = rep.str();
      errors[i] = er.str();
    }
  };
  const int threads = std::clamp(jobs, 1, static_cast<int>(paths.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kOk;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (paths.size() > 1) out << "# " << paths[i] << '\n';
    out << reports[i];
    err << errors[i];
    code = std::max(code, codes[i]);
  }
  return code;
}

void configure_logging() {
  static bool done = false;
  if (done) return;
  done = true;
  const char* env = std::getenv("LIEGEO_LOG");
  spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_logging();
  CLI::App app{"Normal sub-Riemannian geodesics on SO(n) from chains of subalgebras"};
  app.name("liegeo");
  app.require_subcommand(1);

  std::vector<std::string> configs;
  OutputOptions opts;
  Overrides ov;
  int jobs = 1;
  std::string figure;

  auto common = [&](CLI::App* sub, bool multi) {
    sub->add_option("--config", configs, "JSON run configuration")->required()->expected(1, multi ? -1 : 1);
    sub->add_option("--out", opts.out, "output file ('-' for standard output)");
    sub->add_option("--step", ov.step_v, "integrator step");
    sub->add_option("--t-end", ov.t_end_v, "final time");
    sub->add_option("--tol", ov.tol_v, "pass/fail tolerance");
    sub->add_option("--seed", ov.seed_v, "seed for random parameters and initial data");
    if (multi) sub->add_option("--jobs", jobs, "configs run concurrently")->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "integrate a flow and report conserved-quantity drift");
  common(simulate, true);
  auto* compare = app.add_subcommand("compare", "closed-form geodesic against numerical integration");
  common(compare, true);
  auto* hull = app.add_subcommand("hull", "Lie hull of seed vectors with a generation certificate");
  common(hull, false);
  auto* search = app.add_subcommand("search-integrals", "polynomial first integrals up to a degree");
  common(search, false);
  search->add_flag("--expect-none", opts.expect_none, "exit 1 if any new integral is found");
  auto* fig = app.add_subcommand("figure", "curve data for a built-in figure");
  fig->add_option("name", figure, "figure name")->required()->check(CLI::IsMember(figure_names()));
  fig->add_option("--out", opts.out, "CSV output ('-' for standard output)");
  fig->add_option("--svg", opts.svg, "also write an SVG polyline");
  auto* cat = app.add_subcommand("catalog", "list built-in chains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kConfigError;
  }

  CLI::App* active = app.get_subcommands().front();
  ov.step = active->get_option_no_throw("--step");
  ov.t_end = active->get_option_no_throw("--t-end");
  ov.tol = active->get_option_no_throw("--tol");
  ov.seed = active->get_option_no_throw("--seed");

  if (*simulate) return run_configs(cmd_simulate, configs, opts, ov, jobs, out, err);
  if (*compare) return run_configs(cmd_compare, configs, opts, ov, jobs, out, err);
  if (*hull) return run_configs(cmd_hull, configs, opts, ov, 1, out, err);
  if (*search) return run_configs(cmd_search_integrals, configs, opts, ov, 1, out, err);
  if (*fig) return guarded([&](std::ostream& r) { return cmd_figure(figure, opts, r); }, out, err);
  if (*cat) return cmd_catalog(out);
  return kConfigError;
}

}  // namespace liegeo::cli

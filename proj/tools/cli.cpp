#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>
#include <utility>

#include "multient/correlations.hpp"
#include "multient/ed.hpp"
#include "multient/eigensolver.hpp"
#include "multient/error.hpp"
#include "multient/ggm.hpp"
#include "multient/hamiltonian.hpp"
#include "multient/model.hpp"
#include "multient/parallel.hpp"
#include "multient/twosite.hpp"

namespace multient::cli {
namespace {

constexpr std::string_view kToolName = "spinchain-multient";
constexpr std::string_view kVersion = MULTIENT_VERSION;

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::string join_numbers(const std::vector<double>& values, std::string_view sep) {
  std::vector<std::string> parts;
  for (double v : values) parts.push_back(format_number(v));
  return join(parts, sep);
}

double field_for(const RunConfig& cfg, int N) {
  if (cfg.h_field) return *cfg.h_field;
  return N % 2 ? kOddChainField : 0.0;
}

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions opts;
  opts.seed = cfg.seed;
  return opts;
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg) {
  std::vector<std::string> sizes;
  for (int N : cfg.sizes) sizes.push_back(std::to_string(N));
  return {
      {"command", cfg.command},
      {"alpha-min", format_number(cfg.alpha_min)},
      {"alpha-max", format_number(cfg.alpha_max)},
      {"alpha-step", format_number(cfg.alpha_step)},
      {"n-max", std::to_string(cfg.n_max)},
      {"N", join(sizes, ",")},
      {"convention", std::string(to_string(cfg.convention))},
      {"bipartitions", std::string(to_string(cfg.bipartitions))},
      {"h-field", cfg.h_field ? format_number(*cfg.h_field) : "auto"},
      {"tol", format_number(cfg.tol)},
      {"threshold", format_number(cfg.threshold)},
      {"seed", std::to_string(cfg.seed)},
      {"inputs", join(cfg.inputs, ",")},
      {"points", cfg.points},
      {"alpha-c", format_number(cfg.alpha_c)},
      {"which", cfg.which},
  };
}

/// Header comment block, column line included.
std::string header(const RunConfig& cfg, const std::vector<std::string>& columns,
                   const std::vector<std::string>& extra = {}) {
  std::ostringstream s;
  s << "# " << kToolName << ' ' << kVersion << '\n';
  for (const auto& [key, value] : config_echo(cfg)) s << "# config " << key << " = " << value << '\n';
  s << "# convention: " << to_string(cfg.convention) << '\n';
  for (const auto& line : extra) s << "# " << line << '\n';
  s << "# columns: " << join(columns, ",") << '\n';
  s << join(columns, ",") << '\n';
  return s.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + path + "'");
  file << content;
  if (!file) throw ConfigError("failed writing output file '" + path + "'");
}

std::string row(const std::vector<std::string>& cells) { return join(cells, ",") + "\n"; }

// ---------------------------------------------------------------- commands

int cmd_infinite_sweep(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> grid = make_grid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step);
  const SweepSeries conc = concurrence_sweep(grid, cfg.threshold);
  const int orders = cfg.n_max - 1;

  std::vector<std::vector<double>> gm(grid.size(), std::vector<double>(static_cast<std::size_t>(orders)));
  std::vector<double> energy(grid.size());
  parallel_for_each_index(static_cast<std::int64_t>(grid.size()), [&](std::int64_t i) {
    const auto idx = static_cast<std::size_t>(i);
    for (int n = 2; n <= cfg.n_max; ++n) {
      gm[idx][static_cast<std::size_t>(n - 2)] = nth_order_gm(n, grid[idx], cfg.convention);
    }
    try {
      energy[idx] = ground_energy_per_site_numeric(grid[idx], cfg.tol);
    } catch (const NumericalError& e) {
      throw NumericalError("alpha=" + format_number(grid[idx]) + ": " + e.what());
    }
  });

  std::vector<std::string> columns{"alpha", "C", "dC_dalpha"};
  for (int n = 2; n <= cfg.n_max; ++n) columns.push_back("G" + std::to_string(n));
  columns.insert(columns.end(), {"GGM", "E0_per_site"});

  std::string content = header(cfg, columns);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> cells{format_number(grid[i]), format_number(conc.values[i]),
                                   format_number(conc.derivative[i])};
    for (double g : gm[i]) cells.push_back(format_number(g));
    cells.push_back(format_number(*std::min_element(gm[i].begin(), gm[i].end())));
    cells.push_back(format_number(energy[i]));
    content += row(cells);
  }
  content += "# C_discontinuities: " + join_numbers(conc.discontinuities, ";") + "\n";
  content += "# C_vanishing_point: " + format_number(concurrence_vanishing_point()) + "\n";
  write_output(cfg.out, content, out);
  return 0;
}

int cmd_table_an(const RunConfig& cfg, std::ostream& out) {
  std::string content = header(cfg, {"n", "A_n"});
  for (int n = 2; n <= cfg.n_max; ++n) content += row({std::to_string(n), format_number(asymptotic_constant(n))});
  write_output(cfg.out, content, out);
  return 0;
}

int cmd_finite_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<double> grid = make_grid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step);
  const std::vector<std::string> columns{"alpha", "E0",   "gap", "magnetization", "GGM", "dGGM_dalpha",
                                         "discontinuity_flag", "status"};
  int failures = 0;
  for (int N : cfg.sizes) {
    const double h = field_for(cfg, N);
    const FiniteSweep sweep = ggm_sweep(N, grid, cfg.bipartitions, h, cfg.threshold, solver_options(cfg));
    const TransitionPoints t = locate_transitions(sweep.ggm, cfg.alpha_c);

    std::string content = header(cfg, columns, {"chain: N=" + std::to_string(N) + " h=" + format_number(h)});
    for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
      const FiniteSweepRow& r = sweep.rows[i];
      std::string status = "ok";
      if (!r.error.empty()) {
        status = "error";
        ++failures;
        err << "error: " << r.error << '\n';
      } else if (!r.valid) {
        status = "degenerate";
      }
      content += row({format_number(r.alpha), format_number(r.energy), format_number(r.gap),
                      format_number(r.magnetization), format_number(r.ggm),
                      format_number(sweep.ggm.derivative[i]), sweep.ggm.flagged(r.alpha) ? "1" : "0", status});
    }
    content += "# GGM_discontinuities: " + join_numbers(sweep.ggm.discontinuities, ";") + "\n";
    content += "# transition_first: " + (t.first ? format_number(*t.first) : std::string("none")) + "\n";
    content += "# transition_second: " + (t.second ? format_number(*t.second) : std::string("none")) + "\n";
    write_output(path_for_size(cfg.out, N), content, out);
  }
  return failures ? 3 : 0;
}

int cmd_gap_scan(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> grid = make_grid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step);
  for (int N : cfg.sizes) {
    const double h = field_for(cfg, N);
    const GapScan scan = gap_scan(N, grid, h, solver_options(cfg));
    std::string content =
        header(cfg, {"alpha", "gap", "closing_flag"}, {"chain: N=" + std::to_string(N) + " h=" + format_number(h)});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double g = scan.gaps.values[i];
      content += row({format_number(grid[i]), format_number(g), g < kGapClosingThreshold ? "1" : "0"});
    }
    content += "# refined_closings: " + join_numbers(scan.closings, ";") + "\n";
    write_output(path_for_size(cfg.out, N), content, out);
  }
  return 0;
}

int cmd_scaling_fit(const RunConfig& cfg, std::ostream& out) {
  if (cfg.which != "first" && cfg.which != "second") throw ConfigError("--which must be 'first' or 'second'");
  std::vector<ScalingPoint> points;
  std::string source;
  auto take = [&](int N, const SweepSeries& series) {
    const TransitionPoints t = locate_transitions(series, cfg.alpha_c);
    const std::optional<double> a = cfg.which == "first" ? t.first : t.second;
    if (!a) throw NumericalError("no " + cfg.which + " discontinuity found for N=" + std::to_string(N));
    points.push_back({static_cast<double>(N), *a});
  };
  if (!cfg.points.empty()) {
    points = parse_points(cfg.points);
    source = "points";
  } else if (!cfg.inputs.empty()) {
    for (const auto& path : cfg.inputs) {
      SweepFile f = read_sweep_file(path);
      analyse(f.ggm, cfg.threshold);
      take(f.N, f.ggm);
    }
    source = "files";
  } else {
    const std::vector<double> grid = make_grid(cfg.alpha_min, cfg.alpha_max, cfg.alpha_step);
    for (int N : cfg.sizes) {
      take(N, ggm_sweep(N, grid, cfg.bipartitions, field_for(cfg, N), cfg.threshold, solver_options(cfg)).ggm);
    }
    source = "ed";
  }
  const ScalingFit fit = fit_power_law(points, cfg.alpha_c);

  std::ostringstream s;
  s << "points:";
  for (const auto& p : points) s << ' ' << format_number(p.size) << ':' << format_number(p.alpha);
  s << '\n';
  s << "alpha_N = alpha_c + prefactor * N^(-exponent)\n";
  s << "alpha_c   = " << format_number(fit.alpha_c) << '\n';
  s << "exponent  = " << format_number(fit.exponent) << '\n';
  s << "prefactor = " << format_number(fit.prefactor) << '\n';
  s << "r_squared = " << format_number(fit.r_squared) << '\n';

  nlohmann::ordered_json record;
  record["tool"] = std::string(kToolName);
  record["version"] = std::string(kVersion);
  record["source"] = source;
  record["which"] = cfg.which;
  record["points"] = nlohmann::json::array();
  for (const auto& p : points) record["points"].push_back({{"N", p.size}, {"alpha", p.alpha}});
  record["alpha_c"] = fit.alpha_c;
  record["exponent"] = fit.exponent;
  record["prefactor"] = fit.prefactor;
  record["r_squared"] = fit.r_squared;
  s << record.dump() << '\n';
  write_output(cfg.out, s.str(), out);
  return 0;
}

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
  std::vector<Check> checks;
  auto add = [&](std::string name, double error, double bound) {
    checks.push_back({std::move(name), error <= bound,
                      "max error " + format_number(error) + " (bound " + format_number(bound) + ")"});
  };

  double worst = 0.0;
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i <= 500; ++i) {
      worst = std::max(worst, std::abs(nth_order_gm(n, 0.01 * i) - closed_form_gm(n, 0.01 * i)));
    }
  }
  add("block spectra vs closed forms G2..G4", worst, 1e-10);

  worst = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double a = 0.01 * i;
    worst = std::max(worst, std::abs(ground_energy_per_site_numeric(a, cfg.tol) - ground_energy_per_site(a)));
  }
  add("quadrature vs closed-form energy", worst, 1e-9);

  const double table[] = {0.318309, 0.450158, 0.488664, 0.497669, 0.499544, 0.499913};
  worst = 0.0;
  for (int n = 2; n <= 7; ++n) worst = std::max(worst, std::abs(asymptotic_constant(n) - table[n - 2]));
  add("asymptotic constants A_2..A_7", worst, 1e-5);

  worst = 0.0;
  for (int i = 0; i <= 300; ++i) {
    const TwoSiteState s = two_site_rdm(0.01 * i);
    worst = std::max(worst, std::abs(concurrence(s) - concurrence_xstate(s)));
  }
  add("Wootters vs X-state concurrence", worst, 1e-10);
  add("concurrence vanishing point",
      std::abs(concurrence_vanishing_point() - 2 * (std::sqrt(2.0) + 1) / kPi), 1e-12);

  worst = 0.0;
  for (int N : {4, 6, 8}) {
    for (double a : {0.0, 0.5, 2.0}) {
      const double ed = ground_state(ChainSpec::make(N, a), solver_options(cfg)).energy;
      worst = std::max(worst, std::abs(ed - free_fermion_finite_ground(N, a).energy));
    }
  }
  add("exact diagonalisation vs free fermions", worst, 1e-10);

  {
    const ChainHamiltonian H(ChainSpec::make(12, 1.9));
    const SparseHermitian block = H.sector_matrix(6);
    const EigenPairs dense = lowest_eigenpairs_dense(block, 2);
    const EigenPairs krylov = lowest_eigenpairs_krylov(block, 2, solver_options(cfg));
    add("Krylov vs dense eigensolver",
        std::max(std::abs(dense.values[0] - krylov.values[0]), std::abs(dense.values[1] - krylov.values[1])),
        1e-10);
  }

  {
    Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(1 << 6);
    ghz(0) = ghz((1 << 6) - 1) = 1.0 / std::sqrt(2.0);
    add("GHZ state GGM", std::abs(ggm_finite(as_span(ghz), 6, BipartitionMode::All) - 0.5), 1e-12);
  }

  {
    std::vector<ScalingPoint> pts;
    for (double N : {8.0, 10.0, 12.0}) pts.push_back({N, 1.0 + 5.0 * std::pow(N, -1.787)});
    add("power-law fit on exact data", std::abs(fit_power_law(pts).exponent - 1.787), 1e-10);
  }

  int failed = 0;
  std::ostringstream s;
  for (const auto& c : checks) {
    s << (c.ok ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    failed += c.ok ? 0 : 1;
  }
  s << (failed ? "selftest failed: " + std::to_string(failed) + " check(s)" : std::string("selftest passed")) << '\n';
  write_output(cfg.out, s.str(), out);
  return failed ? 3 : 0;
}

}  // namespace

void RunConfig::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(alpha_min) || !finite(alpha_max) || !finite(alpha_step)) throw ConfigError("alpha range must be finite");
  if (alpha_min < 0.0) throw ConfigError("--alpha-min must be >= 0");
  if (alpha_max < alpha_min) throw ConfigError("--alpha-max must be >= --alpha-min");
  if (alpha_step <= 0.0) throw ConfigError("--alpha-step must be > 0");
  if (n_max < 2 || n_max > 64) throw ConfigError("--n-max must be in [2, 64]");
  if (sizes.empty()) throw ConfigError("--N needs at least one chain size");
  for (int N : sizes) {
    if (N < kMinSites || N > kMaxSites) {
      throw ConfigError("--N values must be in [" + std::to_string(kMinSites) + ", " + std::to_string(kMaxSites) + "]");
    }
  }
  if (h_field && !std::isfinite(*h_field)) throw ConfigError("--h-field must be finite");
  if (!(tol > 0.0)) throw ConfigError("--tol must be > 0");
  if (!(threshold > 0.0)) throw ConfigError("--threshold must be > 0");
  if (threads < 0) throw ConfigError("--threads must be >= 0");
  if (!finite(alpha_c)) throw ConfigError("--alpha-c must be finite");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 15);
  return {buf, res.ptr};
}

std::string path_for_size(const std::string& out, int N) {
  if (out == "-") return out;
  const std::string tag = "_N" + std::to_string(N);
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash) || dot == slash + 1) return out + tag;
  return out.substr(0, dot) + tag + out.substr(dot);
}

std::vector<ScalingPoint> parse_points(const std::string& text) {
  std::vector<ScalingPoint> points;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("point '" + item + "' is not N:alpha");
    double N = 0.0;
    double alpha = 0.0;
    const std::string_view ns(item.data(), colon);
    const std::string_view as(item.data() + colon + 1, item.size() - colon - 1);
    const auto r1 = std::from_chars(ns.data(), ns.data() + ns.size(), N);
    const auto r2 = std::from_chars(as.data(), as.data() + as.size(), alpha);
    if (r1.ec != std::errc() || r1.ptr != ns.data() + ns.size() || r2.ec != std::errc() ||
        r2.ptr != as.data() + as.size()) {
      throw ConfigError("point '" + item + "' is not N:alpha");
    }
    points.push_back({N, alpha});
  }
  return points;
}

SweepFile read_sweep_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  SweepFile f;
  std::string line;
  int alpha_col = -1;
  int ggm_col = -1;
  const std::string chain_tag = "# chain: N=";
  while (std::getline(in, line)) {
    if (line.rfind(chain_tag, 0) == 0) {
      f.N = std::atoi(line.c_str() + chain_tag.size());
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (alpha_col < 0) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "alpha") alpha_col = static_cast<int>(i);
        if (cells[i] == "GGM") ggm_col = static_cast<int>(i);
      }
      if (alpha_col < 0 || ggm_col < 0) throw ConfigError("'" + path + "' has no alpha/GGM columns");
      continue;
    }
    auto number = [&](int col) {
      const std::string& c = cells.at(static_cast<std::size_t>(col));
      if (c == "nan") return std::numeric_limits<double>::quiet_NaN();
      double v = 0.0;
      const auto r = std::from_chars(c.data(), c.data() + c.size(), v);
      if (r.ec != std::errc()) throw ConfigError("'" + path + "': bad number '" + c + "'");
      return v;
    };
    f.ggm.grid.push_back(number(alpha_col));
    f.ggm.values.push_back(number(ggm_col));
  }
  if (f.N <= 0) throw ConfigError("'" + path + "' has no chain size line");
  return f;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string convention = "paper";
  std::string bipartitions = "contiguous";

  CLI::App app{"Entanglement of the XX chain with three-spin interactions", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "Flat 'key = value' file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--alpha-min", cfg.alpha_min, "Lower end of the alpha grid")->capture_default_str();
  app.add_option("--alpha-max", cfg.alpha_max, "Upper end of the alpha grid")->capture_default_str();
  app.add_option("--alpha-step", cfg.alpha_step, "Grid spacing")->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "Largest block size n")->capture_default_str();
  app.add_option("--N", cfg.sizes, "Chain sizes, e.g. 8,10,12")->delimiter(',')->capture_default_str();
  app.add_option("--convention", convention, "Block measure: paper | strict")->capture_default_str();
  app.add_option("--bipartitions", bipartitions, "Finite-chain cuts: all | contiguous")->capture_default_str();
  app.add_option("--h-field", cfg.h_field, "Uniform field (default 0, or 1e-6 for odd N)");
  app.add_option("--tol", cfg.tol, "Quadrature tolerance")->capture_default_str();
  app.add_option("--threshold", cfg.threshold, "Discontinuity threshold factor")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0: runtime default)")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for iterative-solver start vectors")->capture_default_str();
  app.add_option("--out", cfg.out, "Output path, '-' for stdout")->capture_default_str();
  app.add_option("--inputs", cfg.inputs, "finite-sweep CSV files for scaling-fit")->delimiter(',');
  app.add_option("--points", cfg.points, "Inline N:alpha list for scaling-fit");
  app.add_option("--alpha-c", cfg.alpha_c, "Assumed critical point")->capture_default_str();
  app.add_option("--which", cfg.which, "Discontinuity used by scaling-fit: first | second")->capture_default_str();

  const std::pair<const char*, const char*> commands[] = {
      {"infinite-sweep", "Concurrence, G_n, GGM and energy of the infinite chain"},
      {"table-an", "Asymptotic constants A_n"},
      {"finite-sweep", "Exact-diagonalisation GGM sweep, one CSV per N"},
      {"gap-scan", "Spectral gap along the alpha grid, one CSV per N"},
      {"scaling-fit", "Power-law fit of pseudo-critical points"},
      {"selftest", "Closed-form versus numeric oracle checks"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.convention = parse_convention(convention);
    cfg.bipartitions = parse_bipartition_mode(bipartitions);
    cfg.validate();
    set_thread_count(cfg.threads);

    if (cfg.command == "infinite-sweep") return cmd_infinite_sweep(cfg, out);
    if (cfg.command == "table-an") return cmd_table_an(cfg, out);
    if (cfg.command == "finite-sweep") return cmd_finite_sweep(cfg, out, err);
    if (cfg.command == "gap-scan") return cmd_gap_scan(cfg, out);
    if (cfg.command == "scaling-fit") return cmd_scaling_fit(cfg, out);
    return cmd_selftest(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace multient::cli

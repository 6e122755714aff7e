#include "semidens/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "semidens/bandwidth.hpp"
#include "semidens/bias_bench.hpp"
#include "semidens/errors.hpp"
#include "semidens/fit.hpp"
#include "semidens/mixtures.hpp"
#include "semidens/quadrature.hpp"
#include "semidens/sample.hpp"

namespace semidens::cli {

namespace {

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::string sidecar_path(const std::string& output) {
  const std::string suffix = ".csv";
  if (output.size() > suffix.size() &&
      output.compare(output.size() - suffix.size(), suffix.size(), suffix) ==
          0) {
    return output.substr(0, output.size() - suffix.size()) + ".json";
  }
  return output + ".json";
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

const NormalMixture& find_density(const std::vector<NormalMixture>& catalog,
                                  const std::string& name) {
  for (const NormalMixture& m : catalog) {
    if (m.name == name) return m;
  }
  std::string known;
  for (const NormalMixture& m : catalog) {
    if (!known.empty()) known += ", ";
    known += m.name;
  }
  throw ValidationError("unknown density '" + name + "'; catalog has: " +
                        known);
}

std::vector<double> auto_h_grid(const Sample& data) {
  const double href = normal_reference_h(data);
  std::vector<double> grid;
  const double lo = 0.25 * href, hi = 4.0 * href;
  const int steps = 25;
  for (int i = 0; i < steps; ++i) {
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (steps - 1)));
  }
  return grid;
}

std::vector<double> parse_h_grid(const std::string& text) {
  const GridSpec spec = parse_grid_spec(text);
  if (!(spec.a > 0.0)) {
    throw ValidationError("bandwidth grid must have positive endpoints");
  }
  std::vector<double> grid;
  for (long i = 0; i < spec.n; ++i) {
    grid.push_back(spec.a +
                   (spec.b - spec.a) * static_cast<double>(i) / (spec.n - 1));
  }
  return grid;
}

int run_fit(const RunConfig& config) {
  if (config.output.empty()) {
    throw ValidationError("fit requires --output for the evaluation CSV");
  }
  const Sample data(read_data_file(config.input));

  double h = config.h;
  BandwidthReport auto_report;
  if (config.h_auto) {
    auto_report =
        lscv_select(data, config.method, config.kernel, auto_h_grid(data));
    h = auto_report.h_selected;
  } else if (!(h > 0.0)) {
    throw ValidationError("fit requires --h positive or --h auto");
  }

  const DensityEstimate est =
      fit_method(config.method, data, h, config.kernel, config.renormalize);

  std::ostringstream csv;
  csv << "x,fhat,fhat_prime\n";
  for (double x : grid_points(config.grid)) {
    const EvalPair e = est.eval(x);
    csv << format17(x) << ',' << format17(e.value) << ',' << format17(e.deriv)
        << '\n';
  }
  write_file(config.output, csv.str());

  nlohmann::ordered_json meta;
  meta["method"] = method_name(est.method);
  meta["kernel"] = kernel_name(est.kernel);
  meta["h"] = h;
  meta["h_selector"] = config.h_auto ? "lscv" : "fixed";
  meta["n"] = data.n();
  meta["renormalized"] = config.renormalize;
  if (!est.beta.empty()) meta["beta"] = est.beta;
  if (est.method == Method::jones || est.method == Method::hg ||
      est.method == Method::local1 || est.method == Method::local2) {
    meta["mu_hat"] = est.mu_hat;
    meta["sigma_hat"] = est.sigma_hat;
  }
  meta["diagnostics"] = {{"iterations", est.diagnostics.iterations},
                         {"grad_norm", est.diagnostics.grad_norm}};
  if (config.h_auto) {
    auto curve = nlohmann::ordered_json::array();
    for (const auto& [hg, cv] : auto_report.curve) {
      curve.push_back({hg, cv});
    }
    meta["lscv_curve"] = std::move(curve);
  }
  const std::string side = sidecar_path(config.output);
  write_file(side, meta.dump(2) + "\n");

  std::cout << "fit method=" << method_name(est.method) << " h=" << format17(h)
            << " n=" << data.n() << " -> " << config.output << " (sidecar "
            << side << ")\n";
  return kExitOk;
}

int run_bench_table(const RunConfig& config) {
  const auto catalog = load_catalog(resolve_catalog_path(config.catalog));
  const BenchmarkTable table = benchmark_table(catalog);
  if (!config.output.empty()) write_file(config.output, table.to_csv());
  std::cout << table.to_text();
  return kExitOk;
}

int run_bench_mc(const RunConfig& config) {
  if (config.h_auto || !(config.h > 0.0)) {
    throw ValidationError("bench-mc requires an explicit positive --h");
  }
  if (config.density.empty()) {
    throw ValidationError("bench-mc requires --density <catalog name>");
  }
  const auto catalog = load_catalog(resolve_catalog_path(config.catalog));
  const NormalMixture& m = find_density(catalog, config.density);
  const McReport report =
      mc_verify_proposition(m, config.method, config.n, config.h, config.reps,
                            config.seed, grid_points(config.grid),
                            config.kernel);
  if (config.output.empty()) {
    std::cout << report.to_csv();
  } else {
    write_file(config.output, report.to_csv());
  }
  double max_z = 0.0;
  for (const McRow& r : report.rows) {
    max_z = std::max(max_z, std::abs(r.z_bias));
  }
  std::cout << "bench-mc density=" << m.name << " method="
            << method_name(config.method) << " reps_done=" << report.reps_done
            << " failures=" << report.failures
            << " max_abs_z_bias=" << format17(max_z) << "\n";
  return kExitOk;
}

int run_bandwidth(const RunConfig& config) {
  if (config.selector == "lscv") {
    const Sample data(read_data_file(config.input));
    const std::vector<double> grid = config.h_grid.empty()
                                         ? auto_h_grid(data)
                                         : parse_h_grid(config.h_grid);
    const BandwidthReport report =
        lscv_select(data, config.method, config.kernel, grid);
    std::ostringstream csv;
    csv << "h,cv\n";
    for (const auto& [h, cv] : report.curve) {
      csv << format17(h) << ',' << format17(cv) << '\n';
    }
    if (!config.output.empty()) write_file(config.output, csv.str());
    std::cout << "selected h = " << format17(report.h_selected)
              << " (lscv over " << report.curve.size() << " bandwidths)\n";
    return kExitOk;
  }
  if (config.selector == "amise") {
    if (config.density.empty()) {
      throw ValidationError(
          "bandwidth --selector amise requires --density <catalog name>");
    }
    const auto catalog = load_catalog(resolve_catalog_path(config.catalog));
    const NormalMixture& m = find_density(catalog, config.density);
    const double h0 =
        amise_bandwidth(m, config.method, config.kernel, config.n);
    const KernelConstants kc = kernel_constants(config.kernel);
    const double isb = integrated_squared_bias(config.method, m);
    const auto criterion = [&](double h) {
      return 0.25 * kc.k2 * kc.k2 * h * h * h * h * isb +
             kc.rk / (static_cast<double>(config.n) * h);
    };
    std::vector<double> hs{h0};
    for (int i = 0; i <= 20; ++i) {
      hs.push_back(0.5 * h0 * std::pow(4.0, i / 20.0));
    }
    std::sort(hs.begin(), hs.end());
    std::ostringstream csv;
    csv << "h,amise\n";
    for (double h : hs) csv << format17(h) << ',' << format17(criterion(h)) << '\n';
    if (!config.output.empty()) write_file(config.output, csv.str());
    std::cout << "selected h = " << format17(h0) << " (amise oracle, density "
              << m.name << ", n=" << config.n << ")\n";
    return kExitOk;
  }
  throw ValidationError("unknown selector '" + config.selector +
                        "'; expected lscv or amise");
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text) {
  GridSpec spec;
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw ValidationError("grid spec must be a:b:n, got '" + text + "'");
  }
  try {
    std::size_t pos = 0;
    const std::string a_s = trimmed(text.substr(0, first));
    const std::string b_s = trimmed(text.substr(first + 1, second - first - 1));
    const std::string n_s = trimmed(text.substr(second + 1));
    spec.a = std::stod(a_s, &pos);
    if (pos != a_s.size()) throw std::invalid_argument(a_s);
    spec.b = std::stod(b_s, &pos);
    if (pos != b_s.size()) throw std::invalid_argument(b_s);
    spec.n = std::stol(n_s, &pos);
    if (pos != n_s.size()) throw std::invalid_argument(n_s);
  } catch (const std::exception&) {
    throw ValidationError("grid spec must be a:b:n with numeric fields, got '" +
                          text + "'");
  }
  if (spec.n < 2) throw ValidationError("grid spec needs n >= 2 points");
  if (!(spec.a < spec.b)) throw ValidationError("grid spec needs a < b");
  return spec;
}

std::vector<double> grid_points(const GridSpec& grid) {
  std::vector<double> xs(static_cast<std::size_t>(grid.n));
  for (long i = 0; i < grid.n; ++i) {
    xs[static_cast<std::size_t>(i)] =
        grid.a + (grid.b - grid.a) * static_cast<double>(i) /
                     static_cast<double>(grid.n - 1);
  }
  xs.back() = grid.b;
  return xs;
}

std::vector<double> read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open data file: " + path);
  std::vector<double> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    double v = 0.0;
    bool ok = true;
    try {
      std::size_t pos = 0;
      v = std::stod(line, &pos);
      ok = pos == line.size() && std::isfinite(v);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": cannot parse '" + line + "' as a number");
    }
    out.push_back(v);
  }
  if (out.empty()) {
    throw ParseError(path + ": no data values found");
  }
  return out;
}

std::string resolve_catalog_path(const std::string& explicit_path) {
  if (!explicit_path.empty()) {
    std::ifstream probe(explicit_path);
    if (!probe) throw IoError("cannot open catalog: " + explicit_path);
    return explicit_path;
  }
  std::vector<std::string> tried;
  const char* env = std::getenv("SEMIDENS_CATALOG");
  if (env && *env) tried.push_back(env);
#ifdef SEMIDENS_INSTALL_CATALOG
  tried.push_back(SEMIDENS_INSTALL_CATALOG);
#endif
#ifdef SEMIDENS_SOURCE_CATALOG
  tried.push_back(SEMIDENS_SOURCE_CATALOG);
#endif
  for (const std::string& path : tried) {
    std::ifstream probe(path);
    if (probe) return path;
  }
  std::string msg = "no catalog found; tried:";
  for (const std::string& path : tried) msg += " " + path;
  msg += " (set --catalog or SEMIDENS_CATALOG)";
  throw IoError(msg);
}

int run(const RunConfig& config) {
  try {
    switch (config.cmd) {
      case RunConfig::Cmd::fit: return run_fit(config);
      case RunConfig::Cmd::bench_table: return run_bench_table(config);
      case RunConfig::Cmd::bench_mc: return run_bench_mc(config);
      case RunConfig::Cmd::bandwidth: return run_bandwidth(config);
    }
    throw ValidationError("unknown subcommand");
  } catch (const ParseError& e) {
    std::cerr << "error (parse): " << e.what() << "\n";
    return kExitParse;
  } catch (const IoError& e) {
    std::cerr << "error (io): " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error (numeric): " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error (internal): " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace semidens::cli

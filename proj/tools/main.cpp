#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "semidens/cli.hpp"
#include "semidens/errors.hpp"
#include "semidens/estimate.hpp"
#include "semidens/kernels.hpp"

namespace {

using semidens::cli::RunConfig;

struct RawArgs {
  std::string method = "et2";
  std::string kernel = "gaussian";
  std::string h = "auto";
  std::string grid = "-5:5:201";
};

void add_method_kernel(CLI::App* sub, RawArgs* raw) {
  sub->set_help_flag("--help", "print this help and exit");
  sub->add_option("--method", raw->method,
                  "kernel, et1..et4, jones, hg, local1, local2")
      ->capture_default_str();
  sub->add_option("--kernel", raw->kernel, "gaussian or epanechnikov")
      ->capture_default_str();
}

RunConfig materialize(const RawArgs& raw, RunConfig config) {
  config.method = semidens::method_from_name(raw.method);
  config.kernel = semidens::kernel_from_name(raw.kernel);
  if (raw.h == "auto") {
    config.h_auto = true;
    config.h = 0.0;
  } else {
    std::size_t pos = 0;
    config.h = std::stod(raw.h, &pos);
    if (pos != raw.h.size() || !(config.h > 0.0)) {
      throw semidens::ValidationError("--h must be a positive number or auto");
    }
  }
  config.grid = semidens::cli::parse_grid_spec(raw.grid);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "semidens: kernel density estimation with exponential-family "
      "corrections, competing semiparametric estimators, and the asymptotic "
      "bias benchmark"};
  app.footer(
      "exit codes: 0 ok, 2 usage error, 3 input parse error, 4 numeric "
      "failure, 5 I/O error");
  app.require_subcommand(1);
  // --h is the bandwidth option throughout, so help lives on --help only.
  app.set_help_flag("--help", "print this help and exit");

  RunConfig config;
  RawArgs fit_raw, mc_raw, bw_raw;

  CLI::App* fit = app.add_subcommand(
      "fit", "fit an estimator to a data file and evaluate it on a grid");
  add_method_kernel(fit, &fit_raw);
  fit->add_option("--h", fit_raw.h, "bandwidth, or auto for LSCV selection")
      ->capture_default_str();
  fit->add_option("--input", config.input, "data file, one number per line")
      ->required();
  fit->add_option("--output", config.output, "CSV of x,fhat,fhat_prime")
      ->required();
  fit->add_option("--grid", fit_raw.grid, "evaluation grid a:b:n")
      ->capture_default_str();
  fit->add_flag("--renormalize", config.renormalize,
                "divide local1/local2 by their quadrature integral");

  CLI::App* bench_table = app.add_subcommand(
      "bench-table",
      "root integrated squared bias of every method relative to the kernel "
      "method, over the shipped density catalog");
  bench_table->set_help_flag("--help", "print this help and exit");
  bench_table->add_option("--catalog", config.catalog, "catalog JSON path");
  bench_table->add_option("--output", config.output, "CSV output path");

  CLI::App* bench_mc = app.add_subcommand(
      "bench-mc",
      "Monte Carlo check of the first-order bias/variance predictions");
  add_method_kernel(bench_mc, &mc_raw);
  mc_raw.h = "0.3";
  bench_mc->add_option("--density", config.density, "catalog density name")
      ->required();
  bench_mc->add_option("--h", mc_raw.h, "bandwidth")->capture_default_str();
  bench_mc->add_option("--n", config.n, "sample size per replication")
      ->capture_default_str();
  bench_mc->add_option("--reps", config.reps, "number of replications")
      ->capture_default_str();
  bench_mc->add_option("--seed", config.seed, "base RNG seed")
      ->capture_default_str();
  bench_mc->add_option("--grid", mc_raw.grid, "evaluation grid a:b:n")
      ->capture_default_str();
  bench_mc->add_option("--catalog", config.catalog, "catalog JSON path");
  bench_mc->add_option("--output", config.output,
                       "report CSV path (stdout when omitted)");

  CLI::App* bandwidth = app.add_subcommand(
      "bandwidth", "select a bandwidth by LSCV or the AMISE oracle");
  add_method_kernel(bandwidth, &bw_raw);
  bandwidth
      ->add_option("--selector", config.selector, "lscv or amise")
      ->capture_default_str();
  bandwidth->add_option("--input", config.input,
                        "data file (lscv selector)");
  bandwidth->add_option("--h-grid", config.h_grid,
                        "bandwidth grid a:b:steps (lscv selector)");
  bandwidth->add_option("--density", config.density,
                        "catalog density name (amise selector)");
  bandwidth->add_option("--n", config.n, "sample size (amise selector)")
      ->capture_default_str();
  bandwidth->add_option("--catalog", config.catalog, "catalog JSON path");
  bandwidth->add_option("--output", config.output,
                        "criterion curve CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return semidens::cli::kExitUsage;
  }

  try {
    if (fit->parsed()) {
      config.cmd = RunConfig::Cmd::fit;
      config = materialize(fit_raw, config);
    } else if (bench_table->parsed()) {
      config.cmd = RunConfig::Cmd::bench_table;
    } else if (bench_mc->parsed()) {
      config.cmd = RunConfig::Cmd::bench_mc;
      config = materialize(mc_raw, config);
    } else if (bandwidth->parsed()) {
      config.cmd = RunConfig::Cmd::bandwidth;
      config = materialize(bw_raw, config);
      config.h_auto = false;
    }
  } catch (const std::exception& e) {
    std::cerr << "error (usage): " << e.what() << "\n";
    return semidens::cli::kExitUsage;
  }

  return semidens::cli::run(config);
}

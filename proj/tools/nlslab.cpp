// SPDX-FileCopyrightText: 2026 nlslab authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line harness. Every experiment takes an optional flat config file
// (see README for the schema); without one, the reference defaults run.

#include <clocale>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "nlslab/config.hpp"
#include "nlslab/experiments.hpp"
#include "nlslab/kernels.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;
  bool dump_fields = false;
};

void add_common(CLI::App* sub, CommonOpts& opts)
{
  sub->add_option("--config", opts.config_path, "flat key=value config file");
  sub->add_option("--out", opts.out_dir, "output directory");
  sub->add_option("--threads", opts.threads, "worker threads (0 = library default)");
  sub->add_flag("--dump-fields", opts.dump_fields, "write CFD1 field dumps");
}

nlslab::Config load_config(const CommonOpts& opts, const std::string& experiment)
{
  if (!opts.config_path.empty()) return nlslab::Config::from_file(opts.config_path);
  return nlslab::Config::from_string("experiment = " + experiment, "<defaults>");
}

int finish(const nlslab::experiments::RunResult& r)
{
  std::printf("%s: %s\n", r.experiment.c_str(), r.pass ? "PASS" : "FAIL");
  std::printf("%s\n", r.summary.dump(2).c_str());
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
  std::setlocale(LC_NUMERIC, "C");
  CLI::App app{"semiclassical NLS focusing laboratory"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string config_dir;

  auto* sim = app.add_subcommand("simulate", "evolve one configuration and dump diagnostics");
  add_common(sim, opts);
  auto* lin = app.add_subcommand("linear-layer", "linear boundary-layer and amplitude-bound scan");
  add_common(lin, opts);
  auto* casc = app.add_subcommand("cascade", "phase-shift layer-onset exponents");
  add_common(casc, opts);
  auto* mt = app.add_subcommand("main-theorem", "Lambda-profile of the approximation error");
  add_common(mt, opts);
  auto* inst = app.add_subcommand("instability", "formal-approximant divergence scan");
  add_common(inst, opts);
  auto* gren = app.add_subcommand("grenier", "phase/amplitude convergence study");
  add_common(gren, opts);
  auto* ser = app.add_subcommand("series", "small-time series coefficients and orders");
  add_common(ser, opts);
  auto* all = app.add_subcommand("run-all", "run every config in a directory");
  add_common(all, opts);
  all->add_option("config_dir", config_dir, "directory of .cfg files")->required();

  CLI11_PARSE(app, argc, argv);

  if (opts.threads > 0) nlslab::kernels::set_threads(opts.threads);

  try {
    using namespace nlslab::experiments;
    if (sim->parsed()) return finish(run_simulate(load_config(opts, "simulate"), opts.out_dir, opts.dump_fields));
    if (lin->parsed()) return finish(run_linear_layer(load_config(opts, "linear_layer"), opts.out_dir));
    if (casc->parsed()) return finish(run_cascade_layers(load_config(opts, "cascade_layers"), opts.out_dir));
    if (mt->parsed()) return finish(run_main_theorem(load_config(opts, "main_theorem"), opts.out_dir));
    if (inst->parsed()) return finish(run_instability_scan(load_config(opts, "instability_scan"), opts.out_dir));
    if (gren->parsed()) return finish(run_grenier_convergence(load_config(opts, "grenier_convergence"), opts.out_dir));
    if (ser->parsed()) return finish(run_series_orders(load_config(opts, "series_orders"), opts.out_dir));
    if (all->parsed()) {
      const bool ok = nlslab::experiments::run_all(config_dir, opts.out_dir);
      std::printf("run-all: %s (manifest at %s/manifest.json)\n", ok ? "PASS" : "FAIL",
                  opts.out_dir.c_str());
      return ok ? 0 : 1;
    }
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 0;
}

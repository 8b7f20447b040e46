// Command-line front end: run, sweep, table, grover, validate.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gridsearch/gridsearch.hpp"
#include "gridsearch/io/config.hpp"
#include "gridsearch/io/csv.hpp"
#include "gridsearch/io/experiment.hpp"

namespace gs = gridsearch;
namespace gio = gridsearch::io;

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::string> order;
  std::optional<std::size_t> snapshots;
  std::optional<std::size_t> max_iters;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool config_required) {
  auto* c = cmd->add_option("--config", f.config_path, "experiment config file (key = value lines)");
  if (config_required) c->required();
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--order", f.order, "operator order: ltr (default) or rtl");
  cmd->add_option("--snapshots", f.snapshots, "store a snapshot every k rounds (0 = none)");
  cmd->add_option("--max-iters", f.max_iters, "rounds to simulate (default ceil(4 sqrt(n)))");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

gio::ExperimentConfig load(const CommonFlags& f) {
  auto cfg = gio::parse_config(read_file(f.config_path));
  if (f.out) cfg.out_dir = *f.out;
  if (f.order) cfg.orders = {gs::parse_order(*f.order)};
  if (f.max_iters) cfg.max_iterations = *f.max_iters;
  if (f.snapshots) {
    cfg.snapshot_stride = *f.snapshots;
    if (*f.snapshots != 0 && !cfg.emit.snapshots && !cfg.emit.heatmaps) cfg.emit.snapshots = true;
  }
  return cfg;
}

int report_points(const gio::ExperimentReport& rep, const std::string& out_dir) {
  std::cout << gio::format_experiment_report(rep);
  std::size_t files = 0;
  for (const auto& p : rep.points) files += p.files.size();
  std::cout << files << " file(s) written to " << out_dir << "\n";
  return rep.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tessellated diffuse-and-disperse quantum search on the cyclic grid"};
  app.require_subcommand(1);

  CommonFlags run_f, sweep_f, grover_f, validate_f;
  auto* run_cmd = app.add_subcommand("run", "simulate a single configuration");
  add_common(run_cmd, run_f, true);
  auto* sweep_cmd = app.add_subcommand("sweep", "simulate every point of a config's sweep lists");
  add_common(sweep_cmd, sweep_f, true);

  auto* grover_cmd = app.add_subcommand("grover", "global Grover reference trace");
  add_common(grover_cmd, grover_f, false);
  std::optional<std::size_t> grover_n, grover_m;
  grover_cmd->add_option("--n", grover_n, "items (complete graph); used when no --config is given");
  grover_cmd->add_option("--m", grover_m, "marked items for --n (default 1)");

  auto* validate_cmd = app.add_subcommand("validate", "build and check the config's partitions");
  add_common(validate_cmd, validate_f, true);
  bool dump_partitions = false;
  validate_cmd->add_flag("--dump", dump_partitions, "write i,j,group CSVs to the output directory");

  auto* table_cmd = app.add_subcommand("table", "reproduce the scaling table (n = 16 ... 65536)");
  std::string table_out = "out/table";
  std::optional<std::string> table_order;
  std::optional<std::size_t> table_max_iters;
  std::size_t table_max_n = 65536;
  std::string peak_rule = "first";
  table_cmd->add_option("--out", table_out, "output directory for table.csv and report.txt");
  table_cmd->add_option("--order", table_order, "report only this order (default: both)");
  table_cmd->add_option("--max-iters", table_max_iters, "rounds per run (default ceil(4 sqrt(n)))");
  table_cmd->add_option("--max-n", table_max_n, "largest n to include (reference rows go to 4194304)");
  table_cmd->add_option("--peak-rule", peak_rule, "first (default) or global");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      const auto cfg = load(run_f);
      const auto pts = gio::expand_sweep(cfg);
      if (pts.size() != 1) {
        std::cerr << "run expects a single configuration, got " << pts.size()
                  << " sweep points (use 'sweep')\n";
        return 2;
      }
      return report_points(gio::run_experiment(cfg), cfg.out_dir);
    }
    if (*sweep_cmd) {
      const auto cfg = load(sweep_f);
      return report_points(gio::run_experiment(cfg), cfg.out_dir);
    }
    if (*grover_cmd) {
      if (grover_f.config_path.empty()) {
        if (!grover_n) {
          std::cerr << "grover needs --config or --n\n";
          return 2;
        }
        const std::size_t m = grover_m.value_or(1);
        const std::size_t iters = grover_f.max_iters.value_or(gs::default_horizon(*grover_n));
        const auto trace = gs::run_grover_reference(*grover_n, m, iters);
        const std::string dir = grover_f.out.value_or("out");
        gio::ensure_output_dir(dir);
        const auto path = std::filesystem::path(dir) / ("grover_n" + std::to_string(*grover_n) + "_m" +
                                                        std::to_string(m) + "_trace.csv");
        gio::emit_trace_csv(trace, path);
        std::printf("peak probability %.6f at round %zu (closed form %.6f); trace: %s\n", trace.peak.probability,
                    trace.peak.iteration, gs::grover_closed_form(*grover_n, m, trace.peak.iteration),
                    path.string().c_str());
        return 0;
      }
      const auto cfg = load(grover_f);
      return report_points(gio::run_grover_experiment(cfg), cfg.out_dir);
    }
    if (*validate_cmd) {
      const auto cfg = load(validate_f);
      bool ok = true;
      for (const auto& c : gio::validate_experiment(cfg, dump_partitions)) {
        ok = ok && c.ok();
        if (!c.error.empty()) std::cout << c.label << ": ERROR " << c.error << "\n";
        else std::cout << c.label << ": local " << c.local.message() << ", dispersion " << c.dispersion.message() << "\n";
      }
      return ok ? 0 : 1;
    }
    if (*table_cmd) {
      gio::TableOptions opts;
      opts.n_values.clear();
      for (const auto& r : gio::reference_table) {
        if (r.n <= table_max_n) opts.n_values.push_back(r.n);
      }
      if (table_order) opts.orders = {gs::parse_order(*table_order)};
      if (table_max_iters) opts.max_iterations = *table_max_iters;
      opts.peak_rule = gs::parse_peak_rule(peak_rule);
      const auto rep = gio::run_table(opts);
      const auto text = gio::format_table_report(rep);
      std::cout << text;
      gio::ensure_output_dir(table_out);
      gio::emit_table_csv(rep, std::filesystem::path(table_out) / "table.csv");
      auto out = gio::open_output(std::filesystem::path(table_out) / "report.txt");
      out << text;
      bool all_ok = true;
      for (const auto& m : rep.for_order(opts.orders.front())) all_ok = all_ok && m.ok();
      return all_ok ? 0 : 1;
    }
  } catch (const gio::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

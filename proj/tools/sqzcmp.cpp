#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sqz/errors.hpp"
#include "sqz/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

int emit(const sqz::Table& table, const sqz::ExperimentConfig& cfg) {
  std::ostringstream buf;
  sqz::write_table(buf, table, cfg.format);
  if (cfg.out.empty()) {
    std::cout << buf.str() << std::flush;
    return kExitOk;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) {
    std::cerr << "error: cannot open " << cfg.out << " for writing\n";
    return kExitFailure;
  }
  f << buf.str();
  return f ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unambiguous comparison of squeezed vacuum states: figure data, probes and checks",
               "sqzcmp"};
  app.set_config("--config", "", "Flat key = value file using the long flag names");
  app.fallthrough();
  app.require_subcommand(1);

  std::optional<int> n_max;
  double tail_tol = 1e-6;
  std::vector<double> etas;
  std::string delta_minus, delta_plus, r_text;
  std::optional<double> s_value;
  double grid_step = 0.05;
  double sweep_step = 0.2;
  std::string out;
  std::string format = "csv";
  int workers = 1;

  app.add_option("--n-max", n_max, "Fock cutoff; adaptive per point when omitted");
  app.add_option("--tail-tol", tail_tol, "Admissible probability mass beyond the cutoff")
      ->capture_default_str();
  app.add_option("--eta", etas, "Detector efficiency in (0, 1]; repeatable")->delimiter(',');
  app.add_option("--delta-minus", delta_minus, "delta- value or lo:hi range");
  app.add_option("--delta-plus", delta_plus, "delta+ value or lo:hi range");
  app.add_option("--r", r_text, "Squeezing r: value (probe) or lo:hi range (figure3)");
  app.add_option("--s", s_value, "Second squeezing s (probe)");
  app.add_option("--grid-step", grid_step, "Grid spacing")->capture_default_str();
  app.add_option("--sweep-step", sweep_step, "delta+ spacing of the figure2 sweep")
      ->capture_default_str();
  app.add_option("--out", out, "Output file (default stdout)");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--workers", workers, "Worker threads")->capture_default_str();

  auto* fig2 = app.add_subcommand("figure2", "Difference probability vs delta- at eta = 1");
  auto* fig3 = app.add_subcommand("figure3", "p_eta(0|r,r) vs r for several efficiencies");
  auto* fig4 = app.add_subcommand("figure4", "Reliability vs delta- and vs delta+");
  auto* prb = app.add_subcommand("probe", "All quantities at one (r, s) point");
  auto* val = app.add_subcommand("validate", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  sqz::ExperimentConfig cfg;
  try {
    cfg.n_max = n_max;
    cfg.tail_tol = tail_tol;
    cfg.etas = etas;
    if (!delta_minus.empty()) cfg.delta_minus = sqz::parse_range(delta_minus);
    if (!delta_plus.empty()) cfg.delta_plus = sqz::parse_range(delta_plus);
    if (!r_text.empty()) cfg.r = sqz::parse_range(r_text);
    cfg.s = s_value;
    cfg.grid_step = grid_step;
    cfg.sweep_step = sweep_step;
    cfg.out = out;
    cfg.format = format == "json" ? sqz::OutputFormat::Json : sqz::OutputFormat::Csv;
    cfg.workers = workers;
    sqz::validate_config(cfg);
  } catch (const sqz::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (fig2->parsed()) return emit(sqz::figure2(cfg), cfg);
    if (fig3->parsed()) return emit(sqz::figure3(cfg), cfg);
    if (fig4->parsed()) return emit(sqz::figure4(cfg), cfg);
    if (prb->parsed()) return emit(sqz::probe(cfg), cfg);
    if (val->parsed()) {
      const auto checks = sqz::run_validation(cfg);
      const int rc = emit(sqz::validation_table(checks), cfg);
      bool ok = rc == kExitOk;
      for (const auto& c : checks) {
        ok = ok && c.passed;
        if (!c.passed) std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
      }
      return ok ? kExitOk : kExitFailure;
    }
  } catch (const sqz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

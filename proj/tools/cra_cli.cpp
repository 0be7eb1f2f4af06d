// Command-line front end: spectra, dressed-state overlaps, bound-state
// reports, oracle comparisons and wavepacket transport as reproducible
// CSV/JSON files.

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "cra/bound_states.hpp"
#include "cra/dark_state.hpp"
#include "cra/errors.hpp"
#include "cra/io.hpp"
#include "cra/lattice_oracle.hpp"
#include "cra/scattering.hpp"

namespace {

// exit codes, also listed in --help and the README
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNotResonant = 3;
constexpr int kExitTolerance = 4;
constexpr int kExitIo = 5;

struct Cli {
  std::string config_path;
  std::string grid_text;
  std::string format_text;
  cra::RunConfig cfg;
  // optional overrides; flags win over the config file
  std::optional<double> omega_a, omega_b, xi_a, xi_b, j_a, j_b, eps_e, eps_f;
  std::optional<std::string> out_path;
  std::optional<int> oracle_n_half, oracle_points, packet_n_half;
  std::optional<double> packet_e0, packet_sigma_k, packet_t_final;
  bool svg = false;
};

void add_common(CLI::App* cmd, Cli& cli) {
  cmd->add_option("--config", cli.config_path,
                  "key = value config file (flags win over the file)");
  cmd->add_option("--grid", cli.grid_text, "energy grid as Emin:Emax:N");
  cmd->add_option("--out", cli.out_path, "output file (default: stdout)");
  cmd->add_option("--format", cli.format_text, "csv or json (default csv)");
  cmd->add_flag("--svg", cli.svg, "emit a static line-plot SVG next to --out");
  cmd->add_option("--omega-a", cli.omega_a, "chain-A resonator energy");
  cmd->add_option("--omega-b", cli.omega_b, "chain-B resonator energy");
  cmd->add_option("--xi-a", cli.xi_a, "chain-A hopping energy");
  cmd->add_option("--xi-b", cli.xi_b, "chain-B hopping energy");
  cmd->add_option("--j-a", cli.j_a, "atom coupling to mode a");
  cmd->add_option("--j-b", cli.j_b, "atom coupling to mode b");
  cmd->add_option("--eps-e", cli.eps_e, "excited-state energy");
  cmd->add_option("--eps-f", cli.eps_f, "metastable-state energy");
}

void resolve(Cli& cli) {
  if (!cli.config_path.empty()) {
    cli.cfg = cra::parse_config_file(cli.config_path);
  }
  if (!cli.grid_text.empty()) cli.cfg.grid = cra::parse_grid_spec(cli.grid_text);
  if (!cli.format_text.empty()) {
    if (cli.format_text == "csv") cli.cfg.format = cra::OutputFormat::Csv;
    else if (cli.format_text == "json")
      cli.cfg.format = cra::OutputFormat::Json;
    else throw cra::ConfigError("--format must be csv or json");
  }
  if (cli.omega_a) cli.cfg.params.omega_a = *cli.omega_a;
  if (cli.omega_b) cli.cfg.params.omega_b = *cli.omega_b;
  if (cli.xi_a) cli.cfg.params.xi_a = *cli.xi_a;
  if (cli.xi_b) cli.cfg.params.xi_b = *cli.xi_b;
  if (cli.j_a) cli.cfg.params.j_a = *cli.j_a;
  if (cli.j_b) cli.cfg.params.j_b = *cli.j_b;
  if (cli.eps_e) cli.cfg.params.eps_e = *cli.eps_e;
  if (cli.eps_f) cli.cfg.params.eps_f = *cli.eps_f;
  if (cli.out_path) cli.cfg.output_path = *cli.out_path;
  if (cli.oracle_n_half) cli.cfg.oracle_n_half = *cli.oracle_n_half;
  if (cli.oracle_points) cli.cfg.oracle_points = *cli.oracle_points;
  if (cli.packet_e0) cli.cfg.packet_e0 = *cli.packet_e0;
  if (cli.packet_sigma_k) cli.cfg.packet_sigma_k = *cli.packet_sigma_k;
  if (cli.packet_n_half) cli.cfg.packet_n_half = *cli.packet_n_half;
  if (cli.packet_t_final) cli.cfg.packet_t_final = *cli.packet_t_final;
  if (cli.svg) cli.cfg.svg = true;
  try {
    cli.cfg.params.validate();
  } catch (const cra::InvalidParams& e) {
    throw cra::ConfigError(e.what());
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Single-photon transport through crossed coupled-resonator arrays "
      "with a three-level atom at the intersection.\n"
      "Exit codes: 0 ok, 2 config error, 3 not resonant, 4 tolerance "
      "exceeded, 5 i/o error."};
  app.require_subcommand(1);
  Cli cli;

  auto* c_spec = app.add_subcommand(
      "spectrum", "transmission/reflection/leak spectrum over the grid");
  add_common(c_spec, cli);

  auto* c_over = app.add_subcommand(
      "overlaps",
      "dressed-state overlaps of the scattering state (needs two-photon "
      "resonance)");
  add_common(c_over, cli);

  auto* c_bound =
      app.add_subcommand("bound-states",
                         "bound-state energies, residuals and perfect-"
                         "reflection flags");
  add_common(c_bound, cli);

  auto* c_comp = app.add_subcommand(
      "oracle-compare",
      "closed-form transmission against the lattice oracle; exits 4 if the "
      "worst |delta s| exceeds 1e-8");
  add_common(c_comp, cli);
  c_comp->add_option("--oracle-n-half", cli.oracle_n_half,
                     "lattice half-length for the oracle (default 200)");
  c_comp->add_option("--oracle-points", cli.oracle_points,
                     "number of comparison energies (default 200)");

  auto* c_wp = app.add_subcommand(
      "wavepacket", "Gaussian wavepacket transport through the intersection");
  add_common(c_wp, cli);
  c_wp->add_option("--e0", cli.packet_e0, "carrier energy (default 1.0)");
  c_wp->add_option("--sigma-k", cli.packet_sigma_k,
                   "wave-number spread (default 0.05*pi)");
  c_wp->add_option("--n-half", cli.packet_n_half,
                   "lattice half-length (default 800)");
  c_wp->add_option("--t-final", cli.packet_t_final,
                   "evolution time (default: auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    resolve(cli);
    if (c_spec->parsed()) {
      const cra::Table t = cra::make_spectrum_table(cli.cfg);
      for (const auto& n : t.notes) std::cerr << "note: " << n << "\n";
      cra::emit_table(t, cli.cfg, {"T", "R", "L", "T_plus_R"});
    } else if (c_over->parsed()) {
      const cra::Table t = cra::make_overlaps_table(cli.cfg);
      for (const auto& n : t.notes) std::cerr << "note: " << n << "\n";
      cra::emit_table(t, cli.cfg,
                      {"T", "overlap_dark", "overlap_bright_plus",
                       "overlap_bright_minus"});
    } else if (c_bound->parsed()) {
      const cra::Table t = cra::make_bound_states_table(cli.cfg);
      for (const auto& n : t.notes) std::cerr << "note: " << n << "\n";
      cra::emit_table(t, cli.cfg, {});
    } else if (c_comp->parsed()) {
      double worst = 0.0;
      const cra::Table t = cra::make_oracle_compare_table(cli.cfg, &worst);
      cra::emit_table(t, cli.cfg, {"abs_delta_s"});
      if (worst > 1e-8) {
        std::cerr << "FAIL: max |s_closed - s_oracle| = " << worst
                  << " exceeds 1e-8\n";
        return kExitTolerance;
      }
      std::cerr << "PASS: max |s_closed - s_oracle| = " << worst << "\n";
    } else if (c_wp->parsed()) {
      const cra::Table t = cra::make_wavepacket_table(cli.cfg);
      cra::emit_table(t, cli.cfg, {});
    }
  } catch (const cra::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cra::NotResonant& e) {
    std::cerr << "not resonant: " << e.what() << "\n";
    return kExitNotResonant;
  } catch (const cra::ToleranceExceeded& e) {
    std::cerr << "tolerance exceeded: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const cra::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const cra::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cra/model.hpp"

namespace cra {

struct GridSpec {
  double e_min = 0.55;
  double e_max = 1.55;
  int n_points = 2001;

  void validate() const;
};

enum class OutputFormat { Csv, Json };

/// Resolved run configuration. Defaults reproduce the reference spectrum:
/// reference parameters, uniform grid (0.55, 1.55, 2001).
struct RunConfig {
  SystemParams params = SystemParams::reference();
  GridSpec grid;
  int oracle_n_half = 200;
  int oracle_points = 200;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path; // empty: stdout
  bool svg = false;
  // wavepacket settings
  double packet_e0 = 1.0;
  double packet_sigma_k = 0.05 * M_PI;
  int packet_n_half = 800;
  double packet_t_final = 0.0; // auto
};

/// Parses a key = value config file ('#' starts a comment). Unknown keys,
/// malformed lines and unparsable values raise ConfigError with the line
/// number and field name.
RunConfig parse_config_file(const std::string& path);

/// Parses "Emin:Emax:N".
GridSpec parse_grid_spec(const std::string& text);

/// Flat data table: comment lines echoing the resolved configuration,
/// column names, and numeric rows. All numbers are written with 17
/// significant digits, '.' decimal separator and '\n' line endings, so a
/// fixed config yields byte-identical files.
struct Table {
  std::vector<std::pair<std::string, std::string>> config_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes; // extra comment lines after the config
};

std::string format_double(double v);
void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);
/// Static line plot of the chosen y-columns against the first column.
void write_svg(const Table& table, std::ostream& os,
               const std::vector<std::string>& y_columns);

/// Writes the table to config.output_path (or stdout when empty) in the
/// configured format, plus a sibling .svg when config.svg is set.
/// Throws IoError on filesystem failures.
void emit_table(const Table& table, const RunConfig& config,
                const std::vector<std::string>& svg_columns);

/// Columns E, T, R, L, T_plus_R, s_re, s_im, r_re, r_im, edge over the
/// configured grid. Out-of-band grid points are skipped; each skip is
/// recorded in the returned table's notes.
Table make_spectrum_table(const RunConfig& config);

/// Columns E, T, overlap_dark, overlap_bright_plus, overlap_bright_minus,
/// dark_fraction, edge. Throws NotResonant (with the omega_b adjustment
/// hint) off two-photon resonance.
Table make_overlaps_table(const RunConfig& config);

/// Bound-state report: energy, branch, residual, inside_b_band,
/// abs_s_at_root, atom_weight, localization_length.
Table make_bound_states_table(const RunConfig& config);

/// Closed form against the stationary lattice oracle on a decimated
/// in-band grid (excluding 1e-6 neighborhoods of band edges and
/// reflection roots). max_abs_ds receives the worst |s_closed - s_oracle|;
/// the caller decides the exit status. s_override replaces the closed-form
/// evaluator (test hook for negative controls).
Table make_oracle_compare_table(
    const RunConfig& config, double* max_abs_ds,
    const std::function<complexd(const SystemParams&, double)>& s_override =
        {});

/// Single-row wavepacket transport summary.
Table make_wavepacket_table(const RunConfig& config);

} // namespace cra

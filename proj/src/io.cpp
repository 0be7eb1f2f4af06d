#include "cra/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "cra/bound_states.hpp"
#include "cra/dark_state.hpp"
#include "cra/lattice_oracle.hpp"
#include "cra/scattering.hpp"

namespace cra {

void GridSpec::validate() const {
  if (n_points < 2) throw ConfigError("grid: n_points must be >= 2");
  if (!(e_min < e_max)) throw ConfigError("grid: need e_min < e_max");
  if (!std::isfinite(e_min) || !std::isfinite(e_max)) {
    throw ConfigError("grid: bounds must be finite");
  }
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& text, const std::string& field) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("field '" + field + "': cannot parse '" + text +
                      "' as a number");
  }
  return v;
}

int parse_int(const std::string& text, const std::string& field) {
  int v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("field '" + field + "': cannot parse '" + text +
                      "' as an integer");
  }
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

} // namespace

GridSpec parse_grid_spec(const std::string& text) {
  GridSpec g;
  const auto c1 = text.find(':');
  const auto c2 = text.rfind(':');
  if (c1 == std::string::npos || c2 == c1) {
    throw ConfigError("grid '" + text + "' must look like Emin:Emax:N");
  }
  g.e_min = parse_double(text.substr(0, c1), "grid.e_min");
  g.e_max = parse_double(text.substr(c1 + 1, c2 - c1 - 1), "grid.e_max");
  g.n_points = parse_int(text.substr(c2 + 1), "grid.n_points");
  g.validate();
  return g;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "omega_a") cfg.params.omega_a = parse_double(val, key);
      else if (key == "omega_b") cfg.params.omega_b = parse_double(val, key);
      else if (key == "xi_a") cfg.params.xi_a = parse_double(val, key);
      else if (key == "xi_b") cfg.params.xi_b = parse_double(val, key);
      else if (key == "j_a") cfg.params.j_a = parse_double(val, key);
      else if (key == "j_b") cfg.params.j_b = parse_double(val, key);
      else if (key == "eps_e") cfg.params.eps_e = parse_double(val, key);
      else if (key == "eps_f") cfg.params.eps_f = parse_double(val, key);
      else if (key == "grid") cfg.grid = parse_grid_spec(val);
      else if (key == "oracle_n_half") cfg.oracle_n_half = parse_int(val, key);
      else if (key == "oracle_points") cfg.oracle_points = parse_int(val, key);
      else if (key == "out") cfg.output_path = val;
      else if (key == "svg") cfg.svg = (val == "true" || val == "1");
      else if (key == "packet_e0") cfg.packet_e0 = parse_double(val, key);
      else if (key == "packet_sigma_k")
        cfg.packet_sigma_k = parse_double(val, key);
      else if (key == "packet_n_half") cfg.packet_n_half = parse_int(val, key);
      else if (key == "packet_t_final")
        cfg.packet_t_final = parse_double(val, key);
      else if (key == "format") {
        if (val == "csv") cfg.format = OutputFormat::Csv;
        else if (val == "json") cfg.format = OutputFormat::Json;
        else throw ConfigError("format must be csv or json");
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

namespace {

std::vector<std::pair<std::string, std::string>> echo_config(
    const RunConfig& cfg, const std::string& command) {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("command", command);
  e.emplace_back("omega_a", format_double(cfg.params.omega_a));
  e.emplace_back("omega_b", format_double(cfg.params.omega_b));
  e.emplace_back("xi_a", format_double(cfg.params.xi_a));
  e.emplace_back("xi_b", format_double(cfg.params.xi_b));
  e.emplace_back("j_a", format_double(cfg.params.j_a));
  e.emplace_back("j_b", format_double(cfg.params.j_b));
  e.emplace_back("eps_e", format_double(cfg.params.eps_e));
  e.emplace_back("eps_f", format_double(cfg.params.eps_f));
  e.emplace_back("grid", format_double(cfg.grid.e_min) + ":" +
                             format_double(cfg.grid.e_max) + ":" +
                             std::to_string(cfg.grid.n_points));
  if (command == "oracle-compare") {
    e.emplace_back("oracle_n_half", std::to_string(cfg.oracle_n_half));
    e.emplace_back("oracle_points", std::to_string(cfg.oracle_points));
  }
  if (command == "wavepacket") {
    e.emplace_back("packet_e0", format_double(cfg.packet_e0));
    e.emplace_back("packet_sigma_k", format_double(cfg.packet_sigma_k));
    e.emplace_back("packet_n_half", std::to_string(cfg.packet_n_half));
    e.emplace_back("packet_t_final", format_double(cfg.packet_t_final));
  }
  e.emplace_back("format",
                 cfg.format == OutputFormat::Csv ? "csv" : "json");
  return e;
}

} // namespace

void write_csv(const Table& table, std::ostream& os) {
  for (const auto& [k, v] : table.config_echo) {
    os << "# " << k << " = " << v << "\n";
  }
  for (const auto& n : table.notes) os << "# " << n << "\n";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      os << format_double(row[i]) << (i + 1 < row.size() ? "," : "");
    }
    os << "\n";
  }
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

} // namespace

void write_json(const Table& table, std::ostream& os) {
  os << "{\n  \"config\": {\n";
  for (size_t i = 0; i < table.config_echo.size(); ++i) {
    os << "    \"" << json_escape(table.config_echo[i].first) << "\": \""
       << json_escape(table.config_echo[i].second) << "\""
       << (i + 1 < table.config_echo.size() ? "," : "") << "\n";
  }
  os << "  },\n  \"notes\": [";
  for (size_t i = 0; i < table.notes.size(); ++i) {
    os << "\"" << json_escape(table.notes[i]) << "\""
       << (i + 1 < table.notes.size() ? "," : "");
  }
  os << "],\n  \"columns\": [";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    os << "\"" << json_escape(table.columns[i]) << "\""
       << (i + 1 < table.columns.size() ? "," : "");
  }
  os << "],\n  \"rows\": [\n";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    os << "    [";
    for (size_t j = 0; j < table.rows[i].size(); ++j) {
      os << format_double(table.rows[i][j])
         << (j + 1 < table.rows[i].size() ? "," : "");
    }
    os << "]" << (i + 1 < table.rows.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
}

void write_svg(const Table& table, std::ostream& os,
               const std::vector<std::string>& y_columns) {
  const int width = 960, height = 560;
  const int ml = 70, mr = 20, mt = 20, mb = 45;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<!--\n";
  for (const auto& [k, v] : table.config_echo) {
    os << k << " = " << v << "\n";
  }
  os << "-->\n";
  if (table.rows.empty() || table.columns.empty()) {
    os << "</svg>\n";
    return;
  }
  std::vector<size_t> ycols;
  for (const auto& name : y_columns) {
    const auto it =
        std::find(table.columns.begin(), table.columns.end(), name);
    if (it != table.columns.end()) {
      ycols.push_back(it - table.columns.begin());
    }
  }
  double xmin = table.rows.front()[0], xmax = xmin;
  double ymin = 0.0, ymax = 1e-300;
  for (const auto& row : table.rows) {
    xmin = std::min(xmin, row[0]);
    xmax = std::max(xmax, row[0]);
    for (size_t c : ycols) {
      ymin = std::min(ymin, row[c]);
      ymax = std::max(ymax, row[c]);
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const auto px = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  const auto py = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
     << (width - ml - mr) << "\" height=\"" << (height - mt - mb)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  const char* colors[] = {"#1f77b4", "#2ca02c", "#d62728",
                          "#9467bd", "#ff7f0e", "#8c564b"};
  for (size_t ci = 0; ci < ycols.size(); ++ci) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[ci % 6]
       << "\" stroke-width=\"1.2\" points=\"";
    for (const auto& row : table.rows) {
      os << px(row[0]) << "," << py(row[ycols[ci]]) << " ";
    }
    os << "\"/>\n";
    os << "<text x=\"" << (ml + 10) << "\" y=\"" << (mt + 18 + 16 * ci)
       << "\" fill=\"" << colors[ci % 6] << "\" font-size=\"13\">"
       << table.columns[ycols[ci]] << "</text>\n";
  }
  os << "<text x=\"" << px(xmin) << "\" y=\"" << (height - mb + 18)
     << "\" font-size=\"12\">" << format_double(xmin) << "</text>\n";
  os << "<text x=\"" << (px(xmax) - 60) << "\" y=\"" << (height - mb + 18)
     << "\" font-size=\"12\">" << format_double(xmax) << "</text>\n";
  os << "<text x=\"8\" y=\"" << py(ymin) << "\" font-size=\"12\">"
     << format_double(ymin) << "</text>\n";
  os << "<text x=\"8\" y=\"" << (py(ymax) + 10) << "\" font-size=\"12\">"
     << format_double(ymax) << "</text>\n";
  os << "<text x=\"" << (width / 2 - 10) << "\" y=\"" << (height - 10)
     << "\" font-size=\"13\">" << table.columns[0] << "</text>\n";
  os << "</svg>\n";
}

void emit_table(const Table& table, const RunConfig& config,
                const std::vector<std::string>& svg_columns) {
  const auto write_payload = [&](std::ostream& os) {
    if (config.format == OutputFormat::Csv) {
      write_csv(table, os);
    } else {
      write_json(table, os);
    }
  };
  if (config.output_path.empty()) {
    write_payload(std::cout);
    if (config.svg) {
      std::cerr << "note: --svg needs --out to name the .svg file; skipped\n";
    }
    return;
  }
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + config.output_path + "'");
  write_payload(out);
  out.flush();
  if (!out) throw IoError("write failed for '" + config.output_path + "'");
  if (config.svg) {
    const std::string svg_path = config.output_path + ".svg";
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw IoError("cannot open '" + svg_path + "'");
    write_svg(table, svg, svg_columns);
    svg.flush();
    if (!svg) throw IoError("write failed for '" + svg_path + "'");
  }
}

Table make_spectrum_table(const RunConfig& config) {
  config.params.validate();
  config.grid.validate();
  Table t;
  t.config_echo = echo_config(config, "spectrum");
  t.columns = {"E",    "T",    "R",    "L",    "T_plus_R",
               "s_re", "s_im", "r_re", "r_im", "edge"};
  const auto grid =
      uniform_grid(config.grid.e_min, config.grid.e_max, config.grid.n_points);
  const auto entries = spectrum(config.params, grid);
  for (const auto& e : entries) {
    if (e.status == PointStatus::OutOfBand) {
      t.notes.push_back("skipped E = " + format_double(e.energy) +
                        " (outside the chain-B band)");
      continue;
    }
    const ScatteringSolution& s = e.sol;
    t.rows.push_back({s.energy, s.t_rate, s.r_rate, s.leak_rate,
                      s.t_rate + s.r_rate, s.s.real(), s.s.imag(),
                      s.r.real(), s.r.imag(),
                      e.status == PointStatus::EdgeLimit ? 1.0 : 0.0});
  }
  return t;
}

Table make_overlaps_table(const RunConfig& config) {
  config.params.validate();
  config.grid.validate();
  const Detunings det = detunings_of(config.params);
  if (!det.two_photon_resonant) {
    const double suggestion = config.params.omega_a - config.params.eps_f;
    throw NotResonant(
        "overlaps need the two-photon resonance delta_1 = delta_2; with the "
        "current parameters set omega_b = omega_a - eps_f = " +
        format_double(suggestion));
  }
  Table t;
  t.config_echo = echo_config(config, "overlaps");
  t.columns = {"E",
               "T",
               "overlap_dark",
               "overlap_bright_plus",
               "overlap_bright_minus",
               "dark_fraction",
               "edge"};
  const auto grid =
      uniform_grid(config.grid.e_min, config.grid.e_max, config.grid.n_points);
  const auto entries = spectrum(config.params, grid);
  for (const auto& e : entries) {
    if (e.status == PointStatus::OutOfBand) {
      t.notes.push_back("skipped E = " + format_double(e.energy) +
                        " (outside the chain-B band)");
      continue;
    }
    const OverlapTriple ov = overlaps(config.params, e.sol);
    t.rows.push_back({e.sol.energy, e.sol.t_rate, ov.dark, ov.bright_plus,
                      ov.bright_minus, ov.dark_fraction(),
                      e.status == PointStatus::EdgeLimit ? 1.0 : 0.0});
  }
  return t;
}

Table make_bound_states_table(const RunConfig& config) {
  config.params.validate();
  Table t;
  t.config_echo = echo_config(config, "bound-states");
  t.columns = {"energy",        "branch_upper", "residual",
               "inside_b_band", "abs_s_at_root", "atom_weight",
               "localization_length"};
  std::vector<std::string> branch_errors;
  const auto states = solve_bound_states(config.params, &branch_errors);
  for (const auto& msg : branch_errors) t.notes.push_back(msg);
  if (states.empty() && branch_errors.empty()) {
    t.notes.push_back(
        "no bound states: the atom-chain-A coupling j_a is zero, so no "
        "level detaches from the band");
  }
  const Band bb = band(config.params, Chain::B);
  for (const auto& bs : states) {
    double abs_s = 0.0;
    if (bb.strictly_contains(bs.energy)) {
      abs_s = std::abs(transmission_amplitude(config.params, bs.energy));
    }
    t.rows.push_back({bs.energy, bs.branch == Branch::Upper ? 1.0 : 0.0,
                      bs.residual, bb.strictly_contains(bs.energy) ? 1.0 : 0.0,
                      abs_s, bs.atom_weight, bs.localization_length});
  }
  return t;
}

Table make_oracle_compare_table(
    const RunConfig& config, double* max_abs_ds,
    const std::function<complexd(const SystemParams&, double)>& s_override) {
  config.params.validate();
  Table t;
  t.config_echo = echo_config(config, "oracle-compare");
  t.columns = {"E",           "s_re",        "s_im",  "s_oracle_re",
               "s_oracle_im", "abs_delta_s"};
  const Band bb = band(config.params, Chain::B);
  const double margin = 2.5e-3 * (bb.upper_edge() - bb.lower_edge());

  std::vector<double> exclusions{band(config.params, Chain::A).lower_edge(),
                                 band(config.params, Chain::A).upper_edge()};
  for (double e : feshbach_resonances(config.params)) exclusions.push_back(e);

  const auto grid = uniform_grid(bb.lower_edge() + margin,
                                 bb.upper_edge() - margin,
                                 std::max(config.oracle_points, 2));
  double worst = 0.0;
  for (double e : grid) {
    bool excluded = false;
    for (double x : exclusions) {
      if (std::abs(e - x) < 1e-6) excluded = true;
    }
    if (excluded) {
      t.notes.push_back("skipped E = " + format_double(e) +
                        " (within 1e-6 of a band edge or reflection root)");
      continue;
    }
    const complexd s_cf = s_override
                              ? s_override(config.params, e)
                              : transmission_amplitude(config.params, e);
    const ScatteringSolution oracle =
        stationary_scatter(config.params, e, config.oracle_n_half);
    const double ds = std::abs(s_cf - oracle.s);
    worst = std::max(worst, ds);
    t.rows.push_back(
        {e, s_cf.real(), s_cf.imag(), oracle.s.real(), oracle.s.imag(), ds});
  }
  t.notes.push_back("max_abs_delta_s = " + format_double(worst));
  if (max_abs_ds) *max_abs_ds = worst;
  return t;
}

Table make_wavepacket_table(const RunConfig& config) {
  config.params.validate();
  Table t;
  t.config_echo = echo_config(config, "wavepacket");
  t.columns = {"E0",     "sigma_k", "t_final",   "T_wp",       "R_wp",
               "L_wp",   "T_pred",  "R_pred",    "L_pred",     "norm_drift",
               "boundary_norm"};
  const WavepacketResult r =
      wavepacket_transport(config.params, config.packet_e0,
                           config.packet_sigma_k, config.packet_n_half,
                           config.packet_t_final);
  t.rows.push_back({config.packet_e0, config.packet_sigma_k, r.t_final,
                    r.t_wp, r.r_wp, r.l_wp, r.t_predicted, r.r_predicted,
                    r.l_predicted, r.norm_drift, r.boundary_norm});
  return t;
}

} // namespace cra

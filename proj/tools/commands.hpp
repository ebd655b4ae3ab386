#pragma once

// Command implementations behind the edgeworth-rmt executable. Each command
// produces a Dataset, which is rendered either as CSV or as a gnuplot script
// plus the CSV it reads.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ermt/edgeworth.hpp"
#include "ermt/fredholm.hpp"
#include "ermt/kernels.hpp"
#include "ermt/orthopoly.hpp"
#include "ermt/painleve.hpp"
#include "ermt/parallel.hpp"
#include "ermt/plancherel_rotach.hpp"

namespace ermt::cli {

enum class Format { Csv, PlotScript };

struct SRange {
  double lo = -5.0;
  double hi = 2.0;
  int count = 15;
};

struct RunConfig {
  std::string command;
  Ensemble ensemble = Ensemble::GUE;
  int n = 40;
  double alpha = 0.0;
  double c = 0.0;
  SRange s_range;
  std::vector<double> s_values;  // overrides s_range when non-empty
  std::string output_path;       // empty: stdout
  Format format = Format::Csv;
  int which = 1;
  std::vector<int> n_list{10, 20, 40, 80};
  int order = 2;
  ExpansionMode mode = ExpansionMode::PerEnsemble;

  EnsembleSpec spec() const { return {ensemble, n, alpha, c}; }

  void validate() const {
    detail::require(s_range.count >= 2, "s range needs at least two points");
    detail::require(s_range.lo < s_range.hi, "s range must have lo < hi");
    detail::require(format == Format::Csv || !output_path.empty(), "--format plot-script needs --out");
  }

  std::vector<double> s_grid() const {
    return s_values.empty() ? linspace(s_range.lo, s_range.hi, s_range.count) : s_values;
  }
};

struct Series {
  int column = 1;
  std::string title;
  int dash = 1;  // gnuplot dashtype: 1 solid, 2 dashed, 3 dotted
};

struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string x_label;
  std::string y_label;
  std::vector<Series> plot;
};

inline void write_csv(const Dataset& d, std::ostream& os) {
  os << "# edgeworth-rmt v1\n";
  for (std::size_t j = 0; j < d.columns.size(); ++j) os << (j ? "," : "") << d.columns[j];
  os << '\n';
  char buf[32];
  for (const auto& row : d.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", row[j]);
      os << (j ? "," : "") << buf;
    }
    os << '\n';
  }
}

/// gnuplot script reading `csv_name` (a path relative to the script).
inline void write_plot_script(const Dataset& d, const std::string& csv_name, const std::string& image_name,
                              std::ostream& os) {
  os << "# edgeworth-rmt v1\n"
     << "set datafile separator \",\"\n"
     << "set key autotitle columnhead\n"
     << "set terminal svg size 800,560\n"
     << "set output \"" << image_name << "\"\n"
     << "set xlabel \"" << d.x_label << "\"\n"
     << "set ylabel \"" << d.y_label << "\"\n"
     << "plot ";
  for (std::size_t i = 0; i < d.plot.size(); ++i) {
    const auto& s = d.plot[i];
    os << (i ? ", \\\n     " : "") << '"' << (i ? "" : csv_name) << "\" using 1:" << s.column + 1
       << " with lines dashtype " << s.dash << " linewidth 2 title \"" << s.title << '"';
  }
  os << '\n';
}

/// Writes the dataset to `cfg.output_path` (or `os`), in the configured format.
/// For plot scripts the CSV goes next to the script with extension .csv.
inline void emit(const Dataset& d, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == Format::Csv) {
    if (cfg.output_path.empty()) {
      write_csv(d, os);
      return;
    }
    std::ofstream f(cfg.output_path);
    if (!f) throw std::runtime_error("cannot open " + cfg.output_path);
    write_csv(d, f);
    if (!f) throw std::runtime_error("write failed: " + cfg.output_path);
    return;
  }
  namespace fs = std::filesystem;
  const fs::path script(cfg.output_path);
  fs::path csv = script, image = script;
  csv.replace_extension(".csv");
  image.replace_extension(".svg");
  if (csv == script) throw std::runtime_error("plot script path must not end in .csv");
  std::ofstream fc(csv);
  if (!fc) throw std::runtime_error("cannot open " + csv.string());
  write_csv(d, fc);
  std::ofstream fs_(script);
  if (!fs_) throw std::runtime_error("cannot open " + script.string());
  write_plot_script(d, csv.filename().string(), image.filename().string(), fs_);
  if (!fc || !fs_) throw std::runtime_error("write failed: " + script.string());
}

/// Painleve table from $EDGEWORTH_TABLE_CACHE when that file exists; otherwise
/// built, and written to the cache path if one is set.
inline PainleveTable load_table() {
  const char* cache = std::getenv("EDGEWORTH_TABLE_CACHE");
  if (cache && *cache) {
    std::ifstream in(cache);
    if (in) return read_table_csv(in);
  }
  auto table = build_painleve_table();
  if (cache && *cache) {
    std::ofstream out(cache);
    if (out) write_table_csv(table, out);
  }
  return table;
}

inline Dataset tw2_table(const PainleveTable& table, const std::vector<double>& s_grid, double c) {
  Dataset d;
  d.columns = {"s", "q", "u0", "v0", "w1", "E_G", "E_L", "F2"};
  d.x_label = "s";
  d.y_label = "F2(s)";
  d.plot = {{7, "F2", 1}};
  for (double s : s_grid) {
    d.rows.push_back({s, table_value(table, Column::Q, s), table_value(table, Column::U0, s),
                      table_value(table, Column::V0, s), table_value(table, Column::W1, s),
                      e_function(table, s, EKind::G, c), e_function(table, s, EKind::L, c), tw2_cdf(table, s)});
  }
  return d;
}

struct FigureResult {
  Dataset data;
  double first_order_sup = 0.0;
  double corrected_sup = 0.0;
};

/// The three comparison figures at their captioned parameters:
///   1  GUE one-point density, n = 40, c_G = 0, X in [-4, 2]
///   2  LUE one-point density, n = 40, alpha = 1/2, c_L = 0, X in [-4, 2]
///   3  e^{-xi^2/2} L_n^alpha(xi^2), n = 40, alpha = 1, c = -1, t in [-4, 4]
/// Columns: grid variable, exact, first-order Airy approximation, corrected.
inline FigureResult figure(int which, int points = 241) {
  detail::require(which >= 1 && which <= 3, "figure: --which must be 1, 2 or 3");
  detail::require(points >= 2, "figure: need at least two points");
  FigureResult r;
  auto& d = r.data;
  const int n = 40;
  const double lo = -4.0, hi = which == 3 ? 4.0 : 2.0;
  const auto grid = linspace(lo, hi, points);
  d.rows.assign(points, {});
  if (which == 3) {
    const double alpha = 1.0, c = -1.0;
    d.columns = {"t", "exact", "airy", "corrected"};
    d.x_label = "t";
    d.y_label = "exp(-xi^2/2) L_n^alpha(xi^2)";
    parallel_for(points, [&](std::size_t i) {
      const double t = grid[i];
      const double xi = pr_xi(n, alpha, c, t);
      d.rows[i] = {t, laguerre_weighted(n, alpha, xi * xi).to_double(), pr_laguerre_expansion(n, alpha, c, t, 0),
                   pr_laguerre_expansion(n, alpha, c, t, 3)};
    });
  } else {
    const EnsembleSpec spec = which == 1 ? EnsembleSpec{Ensemble::GUE, n, 0.0, 0.0}
                                         : EnsembleSpec{Ensemble::LUE, n, 0.5, 0.0};
    d.columns = {"X", "exact", "airy", "corrected"};
    d.x_label = "X";
    d.y_label = "scaled one-point density";
    parallel_for(points, [&](std::size_t i) {
      const double X = grid[i];
      d.rows[i] = {X, scaled_kernel_exact(spec, X, X), rho1_expansion(spec, X, 1), rho1_expansion(spec, X, 2)};
    });
  }
  d.plot = {{1, "exact", 1}, {2, "Airy approximation", 2}, {3, "corrected", 3}};
  for (const auto& row : d.rows) {
    r.first_order_sup = std::max(r.first_order_sup, std::fabs(row[2] - row[1]));
    r.corrected_sup = std::max(r.corrected_sup, std::fabs(row[3] - row[1]));
  }
  return r;
}

inline Dataset exact_table(const EnsembleSpec& spec, const std::vector<double>& s_grid) {
  Dataset d;
  d.columns = {"s", "t", "exact_cdf"};
  d.x_label = "s";
  d.y_label = "P(lambda_max <= t(s))";
  d.plot = {{2, "exact", 1}};
  d.rows.assign(s_grid.size(), {});
  const auto tr = edge_transform(spec);
  parallel_for(s_grid.size(), [&](std::size_t i) {
    const double t = tr.to_t(s_grid[i]);
    d.rows[i] = {s_grid[i], t, exact_cdf(spec, t)};
  });
  return d;
}

inline Dataset edgeworth_table(const EnsembleSpec& spec, const std::vector<double>& s_grid, const PainleveTable& table,
                               ExpansionMode mode, int order) {
  Dataset d;
  d.columns = {"s", "F2", "corr1", "corr2", "total", "overshoot"};
  d.x_label = "s";
  d.y_label = "expansion";
  d.plot = {{1, "F2", 2}, {4, "expansion", 1}};
  for (double s : s_grid) {
    const auto r = edgeworth_cdf(spec, s, table, mode, order);
    d.rows.push_back({s, r.leading, r.corr1, r.corr2, r.total, r.overshoot ? 1.0 : 0.0});
  }
  return d;
}

/// Sup errors of the expansion against exact_cdf over 25 points of [-5, 2].
inline Dataset converge_table(const EnsembleSpec& spec, const std::vector<int>& n_list, const PainleveTable& table,
                              ExpansionMode mode, int order) {
  const auto rep = convergence_report(spec, n_list, linspace(-5.0, 2.0, 25), table, order, mode);
  Dataset d;
  d.columns = {"n", "sup_error", "slope"};
  d.x_label = "n";
  d.y_label = "sup error";
  d.plot = {{1, "sup error", 1}};
  for (std::size_t i = 0; i < rep.n.size(); ++i) d.rows.push_back({double(rep.n[i]), rep.sup_error[i], rep.slope});
  return d;
}

/// Runs one command; returns the process exit status.
inline int run(const RunConfig& cfg, std::ostream& os) {
  cfg.validate();
  const auto& cmd = cfg.command;
  if (cmd == "tw2-table") {
    emit(tw2_table(load_table(), cfg.s_grid(), cfg.c), cfg, os);
  } else if (cmd == "figure") {
    const auto r = figure(cfg.which);
    if (!(r.corrected_sup < r.first_order_sup)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "figure %d: corrected sup error %.3g is not below the Airy sup error %.3g",
                    cfg.which, r.corrected_sup, r.first_order_sup);
      throw std::runtime_error(buf);
    }
    emit(r.data, cfg, os);
  } else if (cmd == "exact") {
    emit(exact_table(cfg.spec(), cfg.s_grid()), cfg, os);
  } else if (cmd == "edgeworth") {
    emit(edgeworth_table(cfg.spec(), cfg.s_grid(), load_table(), cfg.mode, cfg.order), cfg, os);
  } else if (cmd == "converge") {
    emit(converge_table(cfg.spec(), cfg.n_list, load_table(), cfg.mode, cfg.order), cfg, os);
  } else {
    throw std::invalid_argument("unknown command: " + cmd);
  }
  return 0;
}

}  // namespace ermt::cli

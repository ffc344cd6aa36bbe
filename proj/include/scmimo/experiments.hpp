// SPDX-License-Identifier: Apache-2.0
//
// scmimo - space-constrained massive MIMO channel statistics
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Experiment harness: parameter sweeps over the analytic and Monte Carlo
// estimators, emitted as tabular rows with provenance tags. The three
// stock sweeps reproduce the mean/variance-versus-N, versus-d0, and
// sum-rate-versus-N studies; `custom` runs arbitrary grids.

#ifndef SCMIMO_EXPERIMENTS_HPP
#define SCMIMO_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scmimo/analytic.hpp"
#include "scmimo/array_channel.hpp"
#include "scmimo/common.hpp"
#include "scmimo/montecarlo.hpp"

namespace scmimo {

enum class Figure { kFig1, kFig2a, kFig2b, kFig3, kCustom };

enum class Quantity { kMoments, kRates };

struct SweepSpec {
  Figure figure = Figure::kCustom;
  // Empty grids fall back to the per-figure defaults.
  std::vector<int> antenna_grid;
  std::vector<double> aperture_grid;
  bool include_reference = true;
  int users = 10;
  double rho_db = 10.0;
  double loss_db = 30.0;
  std::uint64_t trials = 0;  // 0 -> per-figure default
  std::uint64_t seed = 1;
  unsigned workers = 1;
  int epsilon_terms = 0;  // 0 -> default truncation M = N-1
  // Which estimator families a custom sweep emits.
  std::vector<Quantity> quantities = {Quantity::kMoments, Quantity::kRates};
};

// Single effective linear SNR: transmit SNR minus propagation losses.
inline double effective_snr(const SweepSpec& spec) {
  const double value = std::pow(10.0, (spec.rho_db - spec.loss_db) / 10.0);
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::domain_error("effective SNR must be positive and finite");
  }
  return value;
}

struct FigureRow {
  double x;
  std::string series;
  double value;
  std::optional<double> std_error;  // Monte Carlo rows only
  std::string provenance;           // montecarlo | exact | asymptotic | reference
};

struct FigureOutput {
  std::vector<FigureRow> rows;
};

namespace detail {

inline std::string format_compact(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

inline std::string format_value(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

inline std::vector<int> log_int_grid(int lo, int hi, int count) {
  std::vector<int> grid;
  for (int i = 0; i < count; ++i) {
    const double f = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
    const int v = static_cast<int>(
        std::lround(lo * std::pow(static_cast<double>(hi) / lo, f)));
    if (grid.empty() || v > grid.back()) {
      grid.push_back(v);
    }
  }
  return grid;
}

inline std::vector<int> checked_antenna_grid(std::vector<int> grid) {
  if (grid.empty()) {
    throw std::domain_error("antenna grid must not be empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) {
      throw std::domain_error("antenna counts must be positive");
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw std::domain_error("antenna grid must be strictly increasing");
    }
  }
  return grid;
}

inline std::vector<double> checked_aperture_grid(std::vector<double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw std::domain_error("apertures must be positive and finite");
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw std::domain_error("aperture grid must be strictly increasing");
    }
  }
  return grid;
}

inline std::string aperture_label(double aperture) {
  return "d0=" + format_compact(aperture);
}

}  // namespace detail

// Mean inner product versus N for each constrained aperture, with the exact
// finite-N curve, its large-N asymptote (where valid, N >= 2*d0), the Monte
// Carlo estimate, and the unlimited-space reference curve 1/N.
inline FigureOutput run_fig1(const SweepSpec& spec) {
  if (spec.figure != Figure::kFig1) {
    throw std::domain_error("spec.figure must be fig1");
  }
  const auto antennas = detail::checked_antenna_grid(
      spec.antenna_grid.empty() ? detail::log_int_grid(10, 1000, 25)
                                : spec.antenna_grid);
  const auto apertures = detail::checked_aperture_grid(
      spec.aperture_grid.empty() ? std::vector<double>{4.0, 10.0}
                                 : spec.aperture_grid);
  const std::uint64_t trials = spec.trials ? spec.trials : 100000;

  FigureOutput out;
  for (const double d0 : apertures) {
    const std::string label = detail::aperture_label(d0);
    for (const int n : antennas) {
      const auto est = estimate_inner_moments(
          space_constrained(n, d0), {trials, spec.seed, spec.workers});
      out.rows.push_back({static_cast<double>(n), label + "/montecarlo",
                          est.mean_scaled.real(), est.stderr_mean,
                          "montecarlo"});
    }
    for (const int n : antennas) {
      out.rows.push_back({static_cast<double>(n), label + "/exact",
                          exact_mean_scaled(n, d0), std::nullopt, "exact"});
    }
    for (const int n : antennas) {
      if (2.0 * d0 <= n) {
        out.rows.push_back({static_cast<double>(n), label + "/asymptotic",
                            asymptotic_mean_scaled(n, d0), std::nullopt,
                            "asymptotic"});
      }
    }
  }
  if (spec.include_reference) {
    for (const int n : antennas) {
      out.rows.push_back({static_cast<double>(n), "reference/exact",
                          unlimited_reference_moments(n).mean_scaled,
                          std::nullopt, "reference"});
    }
  }
  return out;
}

// Mean (fig2a) or variance (fig2b) of the scaled inner product versus d0 at
// fixed N, with Monte Carlo, exact, asymptotic, and the horizontal
// unlimited-space reference value.
inline FigureOutput run_fig2(const SweepSpec& spec) {
  const bool variance_panel = spec.figure == Figure::kFig2b;
  if (spec.figure != Figure::kFig2a && !variance_panel) {
    throw std::domain_error("spec.figure must be fig2a or fig2b");
  }
  if (spec.antenna_grid.size() > 1) {
    throw std::domain_error("fig2 sweeps d0 at a single antenna count");
  }
  const int n = spec.antenna_grid.empty() ? 200 : spec.antenna_grid.front();
  if (n < 1) {
    throw std::domain_error("antenna count must be positive");
  }
  std::vector<double> apertures = spec.aperture_grid;
  if (apertures.empty()) {
    for (int d = 1; d <= 20; ++d) {
      apertures.push_back(d);
    }
  }
  apertures = detail::checked_aperture_grid(std::move(apertures));
  const std::uint64_t trials = spec.trials ? spec.trials : 100000;

  FigureOutput out;
  for (const double d0 : apertures) {
    const auto est = estimate_inner_moments(
        space_constrained(n, d0), {trials, spec.seed, spec.workers});
    if (variance_panel) {
      out.rows.push_back({d0, "montecarlo", est.variance_scaled,
                          variance_std_error(est), "montecarlo"});
    } else {
      out.rows.push_back({d0, "montecarlo", est.mean_scaled.real(),
                          est.stderr_mean, "montecarlo"});
    }
  }
  for (const double d0 : apertures) {
    out.rows.push_back({d0, "exact",
                        variance_panel ? exact_variance_scaled(n, d0)
                                       : exact_mean_scaled(n, d0),
                        std::nullopt, "exact"});
  }
  for (const double d0 : apertures) {
    if (2.0 * d0 > n) {
      continue;  // outside the validity window of the asymptotic forms
    }
    double value = 0.0;
    try {
      if (variance_panel) {
        const auto eps = spec.epsilon_terms > 0
                             ? epsilon_correction(n, d0, spec.epsilon_terms)
                             : epsilon_correction(n, d0);
        value = asymptotic_variance_scaled(n, d0, eps);
      } else {
        value = asymptotic_mean_scaled(n, d0);
      }
    } catch (const std::domain_error&) {
      continue;  // epsilon truncation outside validity at this point
    }
    out.rows.push_back({d0, "asymptotic", value, std::nullopt, "asymptotic"});
  }
  if (spec.include_reference) {
    const auto ref = unlimited_reference_moments(n);
    const double value =
        variance_panel ? ref.variance_scaled : ref.mean_scaled;
    for (const double d0 : apertures) {
      out.rows.push_back({d0, "reference", value, std::nullopt, "reference"});
    }
  }
  return out;
}

// MRT ergodic sum rate versus N for each constrained aperture and the
// unlimited-space reference deployment, with the closed-form Jensen lower
// bound per series. Sweeps share angle draws per trial index (common random
// numbers), so curves at a fixed seed are smooth.
inline FigureOutput run_fig3(const SweepSpec& spec) {
  if (spec.figure != Figure::kFig3) {
    throw std::domain_error("spec.figure must be fig3");
  }
  static const std::vector<int> kDefaultGrid = {20,  32,  50,  80,  128,
                                                200, 320, 512, 1024};
  const auto antennas = detail::checked_antenna_grid(
      spec.antenna_grid.empty() ? kDefaultGrid : spec.antenna_grid);
  const auto apertures = detail::checked_aperture_grid(
      spec.aperture_grid.empty() ? std::vector<double>{4.0, 10.0}
                                 : spec.aperture_grid);
  const std::uint64_t trials = spec.trials ? spec.trials : 10000;
  const double rho = effective_snr(spec);
  if (spec.users < 1 || antennas.front() < spec.users) {
    throw std::domain_error("need N >= K >= 1 on the whole grid");
  }
  const TrialPlan plan{trials, spec.seed, spec.workers};

  FigureOutput out;
  for (const double d0 : apertures) {
    const std::string label = detail::aperture_label(d0);
    for (const int n : antennas) {
      const auto est = estimate_sum_rate_mrt(space_constrained(n, d0),
                                             spec.users, rho, plan);
      out.rows.push_back({static_cast<double>(n), label + "/montecarlo",
                          est.sum_rate, est.std_error, "montecarlo"});
    }
    for (const int n : antennas) {
      out.rows.push_back({static_cast<double>(n), label + "/jensen",
                          jensen_sum_rate_bound(n, spec.users, d0, rho),
                          std::nullopt, "exact"});
    }
  }
  if (spec.include_reference) {
    for (const int n : antennas) {
      const auto est = estimate_sum_rate_mrt(half_wavelength_reference(n),
                                             spec.users, rho, plan);
      out.rows.push_back({static_cast<double>(n), "reference/montecarlo",
                          est.sum_rate, est.std_error, "montecarlo"});
    }
    for (const int n : antennas) {
      out.rows.push_back(
          {static_cast<double>(n), "reference/jensen",
           jensen_sum_rate_bound(n, spec.users, n / 2.0, rho), std::nullopt,
           "reference"});
    }
  }
  return out;
}

// Arbitrary grid over (N, d0, K, rho), emitting the requested estimator
// families for every grid point.
inline FigureOutput run_custom(const SweepSpec& spec) {
  if (spec.figure != Figure::kCustom) {
    throw std::domain_error("spec.figure must be custom");
  }
  const auto antennas = detail::checked_antenna_grid(
      spec.antenna_grid.empty() ? std::vector<int>{100} : spec.antenna_grid);
  const auto apertures = detail::checked_aperture_grid(spec.aperture_grid);
  if (apertures.empty() && !spec.include_reference) {
    throw std::domain_error(
        "custom sweep needs an aperture grid or the reference deployment");
  }
  if (spec.quantities.empty()) {
    throw std::domain_error("custom sweep needs at least one quantity");
  }
  const bool want_moments =
      std::find(spec.quantities.begin(), spec.quantities.end(),
                Quantity::kMoments) != spec.quantities.end();
  const bool want_rates =
      std::find(spec.quantities.begin(), spec.quantities.end(),
                Quantity::kRates) != spec.quantities.end();
  if (want_rates && (spec.users < 1 || antennas.front() < spec.users)) {
    throw std::domain_error("rate rows need N >= K >= 1 on the whole grid");
  }
  const std::uint64_t trials =
      spec.trials ? spec.trials : (want_rates ? 10000 : 100000);
  const double rho = want_rates ? effective_snr(spec) : 0.0;
  const TrialPlan plan{trials, spec.seed, spec.workers};

  struct GeometryChoice {
    bool reference;
    double aperture;  // meaningless when reference
    std::string label;
  };
  std::vector<GeometryChoice> choices;
  for (const double d0 : apertures) {
    choices.push_back({false, d0, detail::aperture_label(d0)});
  }
  if (spec.include_reference) {
    choices.push_back({true, 0.0, "reference"});
  }

  FigureOutput out;
  for (const auto& choice : choices) {
    const auto geometry_at = [&](int n) {
      return choice.reference ? half_wavelength_reference(n)
                              : space_constrained(n, choice.aperture);
    };
    const char* analytic_tag = choice.reference ? "reference" : "exact";
    if (want_moments) {
      std::vector<MomentEstimate> estimates;
      estimates.reserve(antennas.size());
      for (const int n : antennas) {
        estimates.push_back(estimate_inner_moments(geometry_at(n), plan));
      }
      for (std::size_t i = 0; i < antennas.size(); ++i) {
        out.rows.push_back({static_cast<double>(antennas[i]),
                            choice.label + "/mean/montecarlo",
                            estimates[i].mean_scaled.real(),
                            estimates[i].stderr_mean, "montecarlo"});
      }
      for (const int n : antennas) {
        const double value = choice.reference
                                 ? unlimited_reference_moments(n).mean_scaled
                                 : exact_mean_scaled(n, choice.aperture);
        out.rows.push_back({static_cast<double>(n),
                            choice.label + "/mean/exact", value, std::nullopt,
                            analytic_tag});
      }
      for (std::size_t i = 0; i < antennas.size(); ++i) {
        out.rows.push_back({static_cast<double>(antennas[i]),
                            choice.label + "/var/montecarlo",
                            estimates[i].variance_scaled,
                            variance_std_error(estimates[i]), "montecarlo"});
      }
      for (const int n : antennas) {
        const double value =
            choice.reference ? unlimited_reference_moments(n).variance_scaled
                             : exact_variance_scaled(n, choice.aperture);
        out.rows.push_back({static_cast<double>(n),
                            choice.label + "/var/exact", value, std::nullopt,
                            analytic_tag});
      }
      if (!choice.reference) {
        for (const int n : antennas) {
          if (2.0 * choice.aperture > n) {
            continue;
          }
          try {
            const auto eps =
                spec.epsilon_terms > 0
                    ? epsilon_correction(n, choice.aperture,
                                         spec.epsilon_terms)
                    : epsilon_correction(n, choice.aperture);
            const double value =
                asymptotic_variance_scaled(n, choice.aperture, eps);
            out.rows.push_back({static_cast<double>(n),
                                choice.label + "/var/asymptotic", value,
                                std::nullopt, "asymptotic"});
          } catch (const std::domain_error&) {
            continue;
          }
        }
      }
    }
    if (want_rates) {
      for (const int n : antennas) {
        const auto est =
            estimate_sum_rate_mrt(geometry_at(n), spec.users, rho, plan);
        out.rows.push_back({static_cast<double>(n),
                            choice.label + "/rate/montecarlo", est.sum_rate,
                            est.std_error, "montecarlo"});
      }
      for (const int n : antennas) {
        const double d0 = choice.reference ? n / 2.0 : choice.aperture;
        out.rows.push_back({static_cast<double>(n),
                            choice.label + "/rate/jensen",
                            jensen_sum_rate_bound(n, spec.users, d0, rho),
                            std::nullopt, analytic_tag});
      }
    }
  }
  return out;
}

inline FigureOutput run_sweep(const SweepSpec& spec) {
  switch (spec.figure) {
    case Figure::kFig1:
      return run_fig1(spec);
    case Figure::kFig2a:
    case Figure::kFig2b:
      return run_fig2(spec);
    case Figure::kFig3:
      return run_fig3(spec);
    case Figure::kCustom:
      return run_custom(spec);
  }
  throw std::domain_error("unknown figure");
}

// CSV schema: header `x,series,value,stderr,provenance`, 12 significant
// digits, stderr blank on analytic rows. Byte-identical for a fixed
// (spec, seed) regardless of worker count.
inline void write_csv(const FigureOutput& out, std::ostream& os) {
  os << "x,series,value,stderr,provenance\n";
  for (const auto& row : out.rows) {
    os << detail::format_value(row.x) << ',' << row.series << ','
       << detail::format_value(row.value) << ',';
    if (row.std_error) {
      os << detail::format_value(*row.std_error);
    }
    os << ',' << row.provenance << '\n';
  }
}

inline void write_csv(const FigureOutput& out, const std::string& path) {
  std::ofstream file(path);
  if (!file) {
    throw io_error("cannot open " + path + " for writing");
  }
  write_csv(out, file);
  file.flush();
  if (!file) {
    throw io_error("failed while writing " + path);
  }
}

namespace detail {

inline const char* series_color(std::size_t index) {
  static const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                         "#ff7f0e", "#9467bd", "#8c564b",
                                         "#17becf", "#7f7f7f", "#bcbd22",
                                         "#e377c2"};
  return kPalette[index % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

}  // namespace detail

// Minimal self-contained SVG line plot of the same rows; no plotting
// dependency. One polyline plus point markers per series, log-x optional.
inline void write_svg(const FigureOutput& out, const std::string& path,
                      bool log_x = false, const std::string& title = "") {
  struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
  };
  std::vector<Series> series;
  for (const auto& row : out.rows) {
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.name == row.series; });
    if (it == series.end()) {
      series.push_back({row.series, {}});
      it = series.end() - 1;
    }
    it->points.emplace_back(row.x, row.value);
  }
  if (series.empty()) {
    throw io_error("no rows to plot");
  }

  const auto tx = [log_x](double x) { return log_x ? std::log10(x) : x; };
  double x_lo = tx(series[0].points[0].first), x_hi = x_lo;
  double y_lo = series[0].points[0].second, y_hi = y_lo;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_lo = std::min(x_lo, tx(x));
      x_hi = std::max(x_hi, tx(x));
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (x_hi == x_lo) {
    x_hi = x_lo + 1.0;
  }
  const double y_pad = (y_hi == y_lo) ? 1.0 : 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  constexpr double kWidth = 760.0, kHeight = 520.0;
  constexpr double kLeft = 80.0, kRight = 20.0, kTop = 40.0, kBottom = 60.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) {
    return kLeft + (tx(x) - x_lo) / (x_hi - x_lo) * plot_w;
  };
  const auto py = [&](double y) {
    return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h;
  };

  std::ofstream file(path);
  if (!file) {
    throw io_error("cannot open " + path + " for writing");
  }
  file << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
       << kHeight << "\">\n";
  file << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    file << "<text x=\"" << kWidth / 2
         << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"16\">"
         << title << "</text>\n";
  }
  file << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
       << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = x_lo + (x_hi - x_lo) * i / kTicks;
    const double x_value = log_x ? std::pow(10.0, fx) : fx;
    const double sx = kLeft + plot_w * i / kTicks;
    file << "<line x1=\"" << sx << "\" y1=\"" << kTop + plot_h << "\" x2=\""
         << sx << "\" y2=\"" << kTop + plot_h + 6 << "\" stroke=\"black\"/>\n";
    file << "<text x=\"" << sx << "\" y=\"" << kTop + plot_h + 22
         << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"12\">"
         << detail::format_compact(x_value) << "</text>\n";
    const double fy = y_lo + (y_hi - y_lo) * i / kTicks;
    const double sy = kTop + plot_h - plot_h * i / kTicks;
    file << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << sy << "\" x2=\""
         << kLeft << "\" y2=\"" << sy << "\" stroke=\"black\"/>\n";
    file << "<text x=\"" << kLeft - 10 << "\" y=\"" << sy + 4
         << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
            "font-size=\"12\">"
         << detail::format_compact(fy) << "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = detail::series_color(s);
    if (series[s].points.size() > 1) {
      file << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : series[s].points) {
        file << px(x) << ',' << py(y) << ' ';
      }
      file << "\"/>\n";
    }
    for (const auto& [x, y] : series[s].points) {
      file << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
           << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 14 + 16 * static_cast<double>(s);
    file << "<line x1=\"" << kLeft + plot_w - 150 << "\" y1=\"" << ly
         << "\" x2=\"" << kLeft + plot_w - 130 << "\" y2=\"" << ly
         << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    file << "<text x=\"" << kLeft + plot_w - 125 << "\" y=\"" << ly + 4
         << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].name
         << "</text>\n";
  }
  file << "</svg>\n";
  file.flush();
  if (!file) {
    throw io_error("failed while writing " + path);
  }
}

}  // namespace scmimo

#endif  // SCMIMO_EXPERIMENTS_HPP

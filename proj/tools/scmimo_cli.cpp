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
// Experiment driver. Exit codes: 0 success, 2 invalid parameters,
// 3 I/O failure, 4 internal invariant violation.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scmimo/scmimo.hpp"

namespace {

// Grid syntax: either a comma list ("16,64,256") or a range
// "lo..hi:count[:log|lin]" (lin is the default).
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  const auto range_sep = text.find("..");
  if (range_sep != std::string::npos) {
    const std::string lo_str = text.substr(0, range_sep);
    std::string rest = text.substr(range_sep + 2);
    bool log_spaced = false;
    auto colon = rest.rfind(":");
    if (colon != std::string::npos &&
        (rest.substr(colon + 1) == "log" || rest.substr(colon + 1) == "lin")) {
      log_spaced = rest.substr(colon + 1) == "log";
      rest = rest.substr(0, colon);
    }
    colon = rest.find(':');
    if (colon == std::string::npos) {
      throw std::domain_error("range grid needs lo..hi:count");
    }
    const double lo = std::stod(lo_str);
    const double hi = std::stod(rest.substr(0, colon));
    const int count = std::stoi(rest.substr(colon + 1));
    if (count < 2 || !(hi > lo)) {
      throw std::domain_error("range grid needs hi > lo and count >= 2");
    }
    if (log_spaced && !(lo > 0.0)) {
      throw std::domain_error("log-spaced grid needs lo > 0");
    }
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      grid.push_back(log_spaced ? lo * std::pow(hi / lo, f)
                                : lo + f * (hi - lo));
    }
    return grid;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) {
      comma = text.size();
    }
    grid.push_back(std::stod(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (grid.empty()) {
    throw std::domain_error("empty grid");
  }
  return grid;
}

std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> grid;
  for (const double v : parse_grid(text)) {
    const int n = static_cast<int>(std::lround(v));
    if (grid.empty() || n > grid.back()) {
      grid.push_back(n);
    }
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "scmimo: moments of steering-channel inner products and MRT sum rates "
      "for space-constrained uniform linear arrays"};
  app.set_config("--config", "",
                 "Read options from a key=value config file (command-line "
                 "flags take precedence)");

  std::string figure;
  app.add_option("--figure", figure,
                 "Sweep to run: fig1 (mean vs N), fig2a (mean vs d0), "
                 "fig2b (variance vs d0), fig3 (sum rate vs N), custom")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2a", "fig2b", "fig3", "custom"}));
  std::string n_grid;
  app.add_option("--n-grid", n_grid,
                 "Antenna counts: comma list or lo..hi:count[:log|lin]");
  std::string d0_grid;
  app.add_option("--d0-grid", d0_grid,
                 "Apertures in wavelengths: comma list or range");
  int users = 10;
  app.add_option("--users", users, "Number of single-antenna users K");
  double rho_db = 10.0;
  app.add_option("--rho-db", rho_db, "Transmit SNR in dB");
  double loss_db = 30.0;
  app.add_option("--loss-db", loss_db, "Shadowing/propagation losses in dB");
  std::uint64_t trials = 0;
  app.add_option("--trials", trials,
                 "Monte Carlo trials per grid point (0 = figure default)");
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Random seed");
  unsigned workers = 1;
  app.add_option("--workers", workers, "Worker thread hint");
  int epsilon_terms = 0;
  app.add_option("--epsilon-terms", epsilon_terms,
                 "Series terms in the asymptotic-variance correction "
                 "(0 = default N-1)");
  std::string out_path;
  app.add_option("--out", out_path, "CSV output path (default <figure>.csv)");
  std::string svg_path;
  app.add_option("--svg", svg_path, "Optional SVG plot path");
  bool reference = false;
  app.add_flag("--reference", reference,
               "Include the half-wavelength reference deployment in custom "
               "sweeps (figures always include it)");
  std::string quantity = "both";
  app.add_option("--quantity", quantity,
                 "Custom sweeps: moments, rates, or both")
      ->check(CLI::IsMember({"moments", "rates", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    scmimo::SweepSpec spec;
    if (figure == "fig1") {
      spec.figure = scmimo::Figure::kFig1;
    } else if (figure == "fig2a") {
      spec.figure = scmimo::Figure::kFig2a;
    } else if (figure == "fig2b") {
      spec.figure = scmimo::Figure::kFig2b;
    } else if (figure == "fig3") {
      spec.figure = scmimo::Figure::kFig3;
    } else {
      spec.figure = scmimo::Figure::kCustom;
    }
    if (!n_grid.empty()) {
      spec.antenna_grid = parse_int_grid(n_grid);
    }
    if (!d0_grid.empty()) {
      spec.aperture_grid = parse_grid(d0_grid);
    }
    spec.include_reference =
        spec.figure == scmimo::Figure::kCustom ? reference : true;
    spec.users = users;
    spec.rho_db = rho_db;
    spec.loss_db = loss_db;
    spec.trials = trials;
    spec.seed = seed;
    spec.workers = workers;
    spec.epsilon_terms = epsilon_terms;
    if (quantity == "moments") {
      spec.quantities = {scmimo::Quantity::kMoments};
    } else if (quantity == "rates") {
      spec.quantities = {scmimo::Quantity::kRates};
    }

    const auto start = std::chrono::steady_clock::now();
    const scmimo::FigureOutput output = scmimo::run_sweep(spec);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    if (out_path.empty()) {
      out_path = figure + ".csv";
    }
    scmimo::write_csv(output, out_path);
    if (!svg_path.empty()) {
      const bool log_x = spec.figure == scmimo::Figure::kFig1 ||
                         spec.figure == scmimo::Figure::kFig3;
      scmimo::write_svg(output, svg_path, log_x, figure);
    }
    std::printf("%zu rows -> %s%s%s  (%.2f s)\n", output.rows.size(),
                out_path.c_str(), svg_path.empty() ? "" : " and ",
                svg_path.c_str(), elapsed);
    return 0;
  } catch (const scmimo::io_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 3;
  } catch (const scmimo::internal_error& e) {
    std::fprintf(stderr, "internal invariant violation: %s\n", e.what());
    return 4;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}

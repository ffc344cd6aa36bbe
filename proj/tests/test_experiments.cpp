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

#include <catch2/catch.hpp>
#include <map>
#include <sstream>

#include "scmimo/experiments.hpp"

using namespace scmimo;

namespace {

const FigureRow* find_row(const FigureOutput& out, const std::string& series,
                          double x) {
  for (const auto& row : out.rows) {
    if (row.series == series && row.x == x) {
      return &row;
    }
  }
  return nullptr;
}

void check_output_wellformed(const FigureOutput& out) {
  std::map<std::string, double> last_x;
  for (const auto& row : out.rows) {
    // every Monte Carlo row carries a standard error, analytic rows do not
    if (row.provenance == "montecarlo") {
      REQUIRE(row.std_error.has_value());
    } else {
      REQUIRE(!row.std_error.has_value());
      REQUIRE((row.provenance == "exact" || row.provenance == "asymptotic" ||
               row.provenance == "reference"));
    }
    // x strictly increasing within a series
    const auto it = last_x.find(row.series);
    if (it != last_x.end()) {
      REQUIRE(row.x > it->second);
    }
    last_x[row.series] = row.x;
  }
}

}  // namespace

TEST_CASE("fig1 rows", "[experiments]") {
  SweepSpec spec;
  spec.figure = Figure::kFig1;
  spec.antenna_grid = {16, 64, 256};
  spec.aperture_grid = {4.0};
  spec.trials = 20000;
  spec.seed = 21;
  spec.workers = 2;
  const auto out = run_fig1(spec);
  check_output_wellformed(out);

  for (const int n : spec.antenna_grid) {
    const auto* asym = find_row(out, "d0=4/asymptotic", n);
    REQUIRE(asym != nullptr);
    CHECK(asym->value == 0.0625 + 1.0 / (2.0 * n));

    const auto* ref = find_row(out, "reference/exact", n);
    REQUIRE(ref != nullptr);
    CHECK(ref->value == Approx(1.0 / n).margin(1e-15));
    CHECK(ref->provenance == "reference");

    const auto* exact = find_row(out, "d0=4/exact", n);
    const auto* mc = find_row(out, "d0=4/montecarlo", n);
    REQUIRE(exact != nullptr);
    REQUIRE(mc != nullptr);
    CHECK(std::abs(mc->value - exact->value) <= 4.0 * *mc->std_error);
  }

  SECTION("asymptotic rows are dropped outside their validity window") {
    SweepSpec narrow = spec;
    narrow.antenna_grid = {10, 16, 64};
    narrow.aperture_grid = {10.0};
    narrow.trials = 500;
    const auto rows = run_fig1(narrow);
    CHECK(find_row(rows, "d0=10/asymptotic", 10) == nullptr);
    CHECK(find_row(rows, "d0=10/asymptotic", 16) == nullptr);
    CHECK(find_row(rows, "d0=10/asymptotic", 64) != nullptr);
    CHECK(find_row(rows, "d0=10/exact", 10) != nullptr);
  }

  CHECK_THROWS_AS(run_fig2(spec), std::domain_error);
}

TEST_CASE("fig2 rows", "[experiments]") {
  SweepSpec spec;
  spec.figure = Figure::kFig2b;
  spec.aperture_grid = {2.0, 4.0, 6.0, 10.0};
  spec.trials = 20000;
  spec.seed = 33;
  spec.workers = 2;
  const auto out = run_fig2(spec);
  check_output_wellformed(out);

  SECTION("reference variance line at N = 200") {
    for (const double d0 : spec.aperture_grid) {
      const auto* ref = find_row(out, "reference", d0);
      REQUIRE(ref != nullptr);
      CHECK(ref->value == Approx(0.004975).margin(1e-15));
    }
  }

  SECTION("asymptotic variance tracks the exact one at moderate apertures") {
    for (const double d0 : {4.0, 6.0, 10.0}) {
      const auto* asym = find_row(out, "asymptotic", d0);
      const auto* exact = find_row(out, "exact", d0);
      REQUIRE(asym != nullptr);
      REQUIRE(exact != nullptr);
      CHECK(std::abs(asym->value - exact->value) / exact->value < 0.05);
    }
  }

  SECTION("monte carlo variance within 4 standard errors of exact") {
    for (const double d0 : spec.aperture_grid) {
      const auto* mc = find_row(out, "montecarlo", d0);
      const auto* exact = find_row(out, "exact", d0);
      REQUIRE(mc != nullptr);
      REQUIRE(exact != nullptr);
      CHECK(std::abs(mc->value - exact->value) <= 4.0 * *mc->std_error);
    }
  }

  SECTION("mean panel: constrained-vs-reference gap grows as d0 shrinks") {
    SweepSpec mean_spec = spec;
    mean_spec.figure = Figure::kFig2a;
    mean_spec.trials = 2000;
    const auto mean_out = run_fig2(mean_spec);
    check_output_wellformed(mean_out);
    double prev_gap = 1e9;
    for (const double d0 : mean_spec.aperture_grid) {
      const auto* exact = find_row(mean_out, "exact", d0);
      const auto* ref = find_row(mean_out, "reference", d0);
      REQUIRE(exact != nullptr);
      REQUIRE(ref != nullptr);
      const double gap = exact->value - ref->value;
      CHECK(gap > 0.0);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("fig3 rows", "[experiments]") {
  SweepSpec spec;
  spec.figure = Figure::kFig3;
  spec.antenna_grid = {32, 64, 128, 256};
  spec.aperture_grid = {4.0, 10.0};
  spec.users = 10;
  spec.trials = 3000;
  spec.seed = 5;
  spec.workers = 2;
  const auto out = run_fig3(spec);
  check_output_wellformed(out);

  SECTION("reference-mode sum rate keeps climbing") {
    double prev = 0.0;
    for (const int n : spec.antenna_grid) {
      const auto* row = find_row(out, "reference/montecarlo", n);
      REQUIRE(row != nullptr);
      CHECK(row->value > prev);
      prev = row->value;
    }
  }

  SECTION("jensen bound below the estimate everywhere") {
    for (const auto& row : out.rows) {
      if (row.series.ends_with("/jensen")) {
        const std::string mc_series =
            row.series.substr(0, row.series.size() - 6) + "montecarlo";
        const auto* mc = find_row(out, mc_series, row.x);
        REQUIRE(mc != nullptr);
        CHECK(row.value <= mc->value + 4.0 * *mc->std_error);
      }
    }
  }

  SECTION("wider aperture reaches a higher rate") {
    const auto* wide = find_row(out, "d0=10/montecarlo", 256);
    const auto* narrow = find_row(out, "d0=4/montecarlo", 256);
    REQUIRE(wide != nullptr);
    REQUIRE(narrow != nullptr);
    CHECK(wide->value > narrow->value);
  }

  SECTION("grids starting below K are rejected") {
    SweepSpec bad = spec;
    bad.antenna_grid = {5, 32};
    CHECK_THROWS_AS(run_fig3(bad), std::domain_error);
  }
}

TEST_CASE("custom sweeps", "[experiments]") {
  SECTION("single-point rate matches the direct library call") {
    SweepSpec spec;
    spec.figure = Figure::kCustom;
    spec.antenna_grid = {1};
    spec.include_reference = true;
    spec.users = 1;
    spec.rho_db = 0.0;
    spec.loss_db = 0.0;  // effective SNR 1
    spec.trials = 50;
    spec.quantities = {Quantity::kRates};
    const auto out = run_custom(spec);
    check_output_wellformed(out);

    const auto* mc = find_row(out, "reference/rate/montecarlo", 1);
    const auto* jensen = find_row(out, "reference/rate/jensen", 1);
    REQUIRE(mc != nullptr);
    REQUIRE(jensen != nullptr);
    CHECK(mc->value == Approx(1.0).margin(1e-12));  // log2(1 + 1*1)
    CHECK(jensen->value == Approx(1.0).margin(1e-12));

    const auto direct = estimate_sum_rate_mrt(half_wavelength_reference(1), 1,
                                              1.0, {50, spec.seed, 1});
    CHECK(mc->value == direct.sum_rate);
  }

  SECTION("moment grid matches the direct library calls") {
    SweepSpec spec;
    spec.figure = Figure::kCustom;
    spec.antenna_grid = {32};
    spec.aperture_grid = {4.0};
    spec.include_reference = false;
    spec.trials = 1000;
    spec.seed = 17;
    spec.quantities = {Quantity::kMoments};
    const auto out = run_custom(spec);
    check_output_wellformed(out);

    const auto direct =
        estimate_inner_moments(space_constrained(32, 4.0), {1000, 17, 1});
    const auto* mean = find_row(out, "d0=4/mean/montecarlo", 32);
    const auto* var = find_row(out, "d0=4/var/montecarlo", 32);
    const auto* exact = find_row(out, "d0=4/mean/exact", 32);
    REQUIRE(mean != nullptr);
    REQUIRE(var != nullptr);
    REQUIRE(exact != nullptr);
    CHECK(mean->value == direct.mean_scaled.real());
    CHECK(var->value == direct.variance_scaled);
    CHECK(exact->value == exact_mean_scaled(32, 4.0));
  }

  SECTION("rate rows below K antennas are rejected") {
    SweepSpec spec;
    spec.figure = Figure::kCustom;
    spec.antenna_grid = {4, 64};
    spec.aperture_grid = {4.0};
    spec.users = 10;
    spec.quantities = {Quantity::kRates};
    CHECK_THROWS_AS(run_custom(spec), std::domain_error);
    spec.quantities = {Quantity::kMoments};  // moments-only grid is fine
    spec.trials = 100;
    CHECK_NOTHROW(run_custom(spec));
  }

  SECTION("needs a geometry") {
    SweepSpec spec;
    spec.figure = Figure::kCustom;
    spec.antenna_grid = {16};
    spec.include_reference = false;
    CHECK_THROWS_AS(run_custom(spec), std::domain_error);
  }
}

TEST_CASE("csv output", "[experiments]") {
  SweepSpec spec;
  spec.figure = Figure::kCustom;
  spec.antenna_grid = {16, 64};
  spec.aperture_grid = {2.0};
  spec.include_reference = false;
  spec.trials = 500;
  spec.seed = 9;
  spec.quantities = {Quantity::kMoments};

  SECTION("schema") {
    std::ostringstream os;
    write_csv(run_custom(spec), os);
    const std::string text = os.str();
    REQUIRE(text.rfind("x,series,value,stderr,provenance\n", 0) == 0);
    // analytic rows leave the stderr field empty, Monte Carlo rows never do
    CHECK(text.find(",,exact\n") != std::string::npos);
    CHECK(text.find(",,montecarlo\n") == std::string::npos);
    std::size_t lines = 0;
    for (const char c : text) {
      lines += c == '\n';
    }
    REQUIRE(lines == run_custom(spec).rows.size() + 1);
  }

  SECTION("byte-identical across worker counts and reruns") {
    std::ostringstream a;
    std::ostringstream b;
    SweepSpec wide = spec;
    wide.workers = 4;
    write_csv(run_custom(spec), a);
    write_csv(run_custom(wide), b);
    REQUIRE(a.str() == b.str());
  }

  SECTION("effective snr from dB inputs") {
    SweepSpec s;
    s.rho_db = 10.0;
    s.loss_db = 30.0;
    CHECK(effective_snr(s) == Approx(0.01).epsilon(1e-14));
  }
}

TEST_CASE("svg output", "[experiments]") {
  SweepSpec spec;
  spec.figure = Figure::kFig1;
  spec.antenna_grid = {16, 64, 256};
  spec.aperture_grid = {4.0};
  spec.trials = 500;
  const auto out = run_fig1(spec);
  const std::string path = "fig1_test.svg";
  write_svg(out, path, true, "fig1");

  std::ifstream file(path);
  REQUIRE(file.good());
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();
  CHECK(text.rfind("<svg", 0) == 0);
  CHECK(text.find("<polyline") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
  // one legend entry per series
  CHECK(text.find("d0=4/montecarlo") != std::string::npos);
  CHECK(text.find("reference/exact") != std::string::npos);
}

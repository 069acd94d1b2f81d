// Copyright 2026 The speckleq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "speckleq/ensemble.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "speckleq/errors.hpp"

namespace speckleq {
namespace {

using cx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
// averaged_qvp for the opposite-phase squeezed pair (r = 0.15) at
// tau = 1/300, C1 = 1, C2 = 0; frozen from an independent evaluation.
constexpr double kSqueezedPairQvpBar = 1.0006046048808677;

ProductInput single_fock(int n) {
  ProductInput input(1);
  input.set(0, ModeState::fock(n));
  return input;
}

ProductInput distributed_photons(int n) {
  ProductInput input(n);
  for (int i = 0; i < n; ++i) input.set(i, ModeState::fock(1));
  return input;
}

ProductInput squeezed_pair() {
  ProductInput input(2);
  input.set(0, ModeState::squeezed_vacuum(0.15, 0.0));
  input.set(1, ModeState::squeezed_vacuum(0.15, kPi));
  return input;
}

const std::array<std::pair<double, double>, 5> kWeightPairs = {{
    {1.0, 0.0},
    {1.0, 0.5},
    {1.0, 1.0},
    {0.7, 0.3},
    {2.0, 0.4},
}};

std::vector<ProductInput> mixed_corpus() {
  std::vector<ProductInput> corpus;
  corpus.push_back(single_fock(1));
  corpus.push_back(single_fock(2));
  corpus.push_back(single_fock(4));
  corpus.push_back(distributed_photons(2));
  corpus.push_back(distributed_photons(3));
  corpus.push_back(squeezed_pair());
  {
    ProductInput input(2);
    input.set(0, ModeState::thermal(1.3)).set(1, ModeState::fock(1));
    corpus.push_back(input);
  }
  {
    ProductInput input(2);
    input.set(0, ModeState::coherent(cx(0.7, -0.2)));
    input.set(1, ModeState::coherent(cx(-0.1, 0.9)));
    corpus.push_back(input);
  }
  {
    ProductInput input(3);
    input.set(0, ModeState::coherent(cx(0.5, 0.5)));
    input.set(1, ModeState::squeezed_vacuum(0.3, 1.2));
    input.set(2, ModeState::thermal(0.6));
    corpus.push_back(input);
  }
  {
    ProductInput input(3);
    input.set(0, ModeState::fock(2)).set(2, ModeState::thermal(2.0));
    corpus.push_back(input);
  }
  {
    ProductInput input(4);
    input.set(0, ModeState::fock(1));
    input.set(1, ModeState::coherent(cx(0.4, 0.0)));
    input.set(2, ModeState::squeezed_vacuum(0.2, 4.0));
    input.set(3, ModeState::thermal(0.8));
    corpus.push_back(input);
  }
  {
    ProductInput input(2);
    input.set(0, ModeState::squeezed_vacuum(0.15, 0.0));
    input.set(1, ModeState::squeezed_vacuum(0.15, 0.0));
    corpus.push_back(input);
  }
  return corpus;
}

TEST_CASE("single-port inputs are blind to the contraction weights") {
  for (const auto& [c1, c2] : kWeightPairs) {
    CHECK(averaged_c2(single_fock(2), c1, c2) == doctest::Approx(-0.5).epsilon(1e-14));
    for (int n = 2; n <= 6; ++n) {
      CHECK(averaged_c2(single_fock(n), c1, c2) ==
            doctest::Approx(-1.0 / n).epsilon(1e-13));
    }
    // Single thermal port: bunching survives averaging, again weight-free.
    ProductInput thermal(1);
    thermal.set(0, ModeState::thermal(1.7));
    CHECK(averaged_c2(thermal, c1, c2) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("distributed photons feel the interference weight") {
  const ProductInput pair = distributed_photons(2);
  CHECK(averaged_c2(pair, 1.0, 0.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(averaged_c2(pair, 1.0, 1.0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(std::abs(averaged_c2(pair, 1.0, 1.0) - averaged_c2(pair, 1.0, 0.0)) > 0.1);

  // At C2 = 0 the indistinguishable-port structure is invisible:
  // |n> and n distributed single photons coincide.
  for (int n = 2; n <= 3; ++n) {
    CHECK(averaged_c2(distributed_photons(n), 1.0, 0.0) ==
          doctest::Approx(averaged_c2(single_fock(n), 1.0, 0.0)).epsilon(1e-14));
  }
}

TEST_CASE("full-interference limit for n distributed photons") {
  for (int n = 2; n <= 10; ++n) {
    const double expected = (n - 3.0) / (n + 1.0);
    CHECK(averaged_c2(distributed_photons(n), 1.0, 1.0) ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(averaged_c2(distributed_photons(n), 0.7, 0.7) ==
          doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(std::abs(averaged_c2(distributed_photons(3), 1.0, 1.0)) < 1e-14);
}

TEST_CASE("coherent input averages to zero correlation") {
  ProductInput input(2);
  input.set(0, ModeState::coherent(cx(0.8, 0.3)));
  input.set(1, ModeState::coherent(cx(-0.2, 0.4)));
  // C1 route alone: Poissonian light stays uncorrelated.
  CHECK(std::abs(averaged_c2(input, 1.0, 0.0)) < 1e-14);
}

TEST_CASE("degenerate denominator raises") {
  ProductInput input(1);
  input.set(0, ModeState::fock(1));
  // C1 = 0 with a single photon leaves nothing in the denominator.
  CHECK_THROWS_AS((void)averaged_c2(input, 0.0, 0.0), UndefinedCorrelationError);
  CHECK_THROWS_AS((void)averaged_c2(ProductInput(2), 1.0, 0.0), UndefinedCorrelationError);
}

TEST_CASE("contraction diagram bookkeeping for two distributed photons") {
  const DiagramBreakdown b =
      averaged_coincidence_contraction(distributed_photons(2), 1.0, 0.5, 0.1);
  CHECK(b.same_port_intensity == doctest::Approx(0.0));
  CHECK(b.cross_port_intensity == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(b.cross_port_interference == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(b.total == doctest::Approx(0.03).epsilon(1e-14));
}

TEST_CASE("contraction engine reassembles the closed form") {
  const double tau = 0.013;
  for (const ProductInput& input : mixed_corpus()) {
    CAPTURE(input.token());
    for (const auto& [c1, c2] : kWeightPairs) {
      CAPTURE(c1);
      CAPTURE(c2);
      const DiagramBreakdown numerator =
          averaged_coincidence_contraction(input, c1, c2, tau);
      const double denominator = averaged_intensity_product(input, c1, c2, tau);
      REQUIRE(denominator > 0.0);
      const double reassembled = numerator.total / denominator - 1.0;
      CHECK(std::abs(reassembled - averaged_c2(input, c1, c2)) <= 1e-10);
    }
  }
}

TEST_CASE("averaged witness for the squeezed pair at the preset point") {
  const double value = averaged_qvp(squeezed_pair(), 1.0 / 300.0, 1.0, 0.0);
  CHECK(value == doctest::Approx(kSqueezedPairQvpBar).epsilon(1e-12));
  CHECK(std::abs(value - 1.000604) <= 1e-6);
}

TEST_CASE("averaged witness never drops below one for zero-mean inputs") {
  std::vector<ProductInput> inputs;
  inputs.push_back(squeezed_pair());
  inputs.push_back(distributed_photons(2));
  {
    ProductInput thermal(2);
    thermal.set(0, ModeState::thermal(1.5));
    inputs.push_back(thermal);
  }
  for (const ProductInput& input : inputs) {
    for (const double tau : {1e-4, 1.0 / 300.0, 0.01, 0.1}) {
      for (const double c1 : {0.5, 1.0, 2.0}) {
        for (const double frac : {0.0, 0.5, 1.0}) {
          CHECK(averaged_qvp(input, tau, c1, frac * c1) >= 1.0 - 1e-12);
        }
      }
    }
  }
}

TEST_CASE("averaged witness approaches one from above as tau vanishes") {
  const ProductInput input = squeezed_pair();
  double previous = averaged_qvp(input, 1e-2, 1.0, 0.0);
  for (const double tau : {1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
    const double value = averaged_qvp(input, tau, 1.0, 0.0);
    CHECK(value >= 1.0);
    CHECK(value < previous);
    previous = value;
  }
  CHECK(previous == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sweep evaluates the model at every grid point") {
  const CorrelationModel model = CorrelationModel::analytic(50);
  const std::vector<double> s_values = {2.0, 5.0, 22.2, 49.0, 100.0};
  const ProductInput input = distributed_photons(2);
  const std::vector<EnsembleCurvePoint> points = sweep(input, model, 50, s_values);
  REQUIRE(points.size() == s_values.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const EnsembleCurvePoint& p = points[i];
    const CorrelationValues v = model.at(s_values[i]);
    CHECK(p.s == s_values[i]);
    CHECK(p.c1 == v.c1);
    CHECK(p.c2 == v.c2);
    CHECK(p.g == v.g);
    CHECK(p.tau == doctest::Approx(v.g / 2500.0).epsilon(1e-15));
    CHECK(p.cbar == doctest::Approx(averaged_c2(input, v.c1, v.c2)).epsilon(1e-14));
    CHECK(p.log10_qvp_bar ==
          doctest::Approx(std::log10(averaged_qvp(input, p.tau, v.c1, v.c2))).epsilon(1e-13));
  }
}

TEST_CASE("sweep curves: constants and signs") {
  const CorrelationModel model = CorrelationModel::analytic(50);
  std::vector<double> s_values;
  for (int i = 0; i <= 20; ++i) s_values.push_back(2.0 * std::pow(50.0, i / 20.0));

  for (const EnsembleCurvePoint& p : sweep(single_fock(2), model, 50, s_values)) {
    CHECK(p.cbar == doctest::Approx(-0.5).epsilon(1e-13));
  }
  for (const EnsembleCurvePoint& p : sweep(single_fock(3), model, 50, s_values)) {
    CHECK(p.cbar == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
  }
  for (const EnsembleCurvePoint& p : sweep(squeezed_pair(), model, 50, s_values)) {
    CHECK(p.log10_qvp_bar >= 0.0);
  }
}

TEST_CASE("sweep validates the domain up front") {
  const CorrelationModel model =
      CorrelationModel::tabulated({{1.0, 1.0, 0.0, 10.0}, {5.0, 1.0, 0.3, 2.0}});
  const std::vector<double> s_values = {0.5, 2.0, 7.0};
  CHECK_THROWS_WITH_AS((void)sweep(distributed_photons(2), model, 50, s_values),
                       doctest::Contains("0.5"), std::domain_error);
}

TEST_CASE("sweep csv layout") {
  const CorrelationModel model = CorrelationModel::analytic(10);
  const std::vector<double> s_values = {3.0, 4.0};
  const auto points = sweep(distributed_photons(2), model, 10, s_values);
  std::ostringstream out;
  const std::vector<std::string> comments = {"input: fock:1@0,fock:1@1"};
  write_sweep_csv(out, points, comments);
  const std::string text = out.str();
  CHECK(text.find("# input: fock:1@0,fock:1@1\n") == 0);
  CHECK(text.find("s,C1,C2,g,tau,cbar,log10_qvp_bar\n") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);  // comment + header + 2 rows
}

TEST_CASE("monte carlo estimate matches the closed form for two photons") {
  const ProductInput input = distributed_photons(2);
  DiffusiveSamplerSpec sampler;
  sampler.inputs = 30;
  sampler.tau = 1.0 / 90.0;
  const McResult result = monte_carlo_average(input, sampler, McStatistic::c2, 4000, 11, 2);
  CHECK(result.realizations == 4000);
  CHECK(result.degenerate == 0);
  CHECK(result.closed_form == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(result.std_error > 0.0);
  CHECK(std::abs(result.z_score) <= 5.0);
  CHECK(result.z_score == doctest::Approx((result.mean - result.closed_form) /
                                          result.std_error).epsilon(1e-12));
}

TEST_CASE("monte carlo witness statistic matches its closed form") {
  const ProductInput input = squeezed_pair();
  DiffusiveSamplerSpec sampler;
  sampler.inputs = 40;
  sampler.tau = 1.0 / 160.0;
  const McResult result = monte_carlo_average(input, sampler, McStatistic::qvp, 4000, 19, 2);
  CHECK(result.closed_form ==
        doctest::Approx(averaged_qvp(input, sampler.tau, 1.0, 0.0)).epsilon(1e-14));
  CHECK(std::abs(result.z_score) <= 5.0);
}

TEST_CASE("monte carlo is byte-stable across worker counts") {
  const ProductInput input = distributed_photons(2);
  DiffusiveSamplerSpec sampler;
  sampler.inputs = 20;
  sampler.tau = 0.01;
  const McResult base = monte_carlo_average(input, sampler, McStatistic::c2, 500, 3, 1);
  for (const int workers : {2, 4, 8}) {
    const McResult other = monte_carlo_average(input, sampler, McStatistic::c2, 500, 3, workers);
    CHECK(other.mean == base.mean);
    CHECK(other.std_error == base.std_error);
    CHECK(other.degenerate == base.degenerate);
  }
  const McResult reseeded = monte_carlo_average(input, sampler, McStatistic::c2, 500, 4, 1);
  CHECK(reseeded.mean != base.mean);
}

TEST_CASE("all-dark input degenerates every realization") {
  DiffusiveSamplerSpec sampler;
  sampler.inputs = 5;
  sampler.tau = 0.01;
  CHECK_THROWS_AS(
      (void)monte_carlo_average(ProductInput(5), sampler, McStatistic::c2, 10, 1, 1),
      DegenerateEnsembleError);
}

TEST_CASE("monte carlo argument validation") {
  const ProductInput input = distributed_photons(2);
  DiffusiveSamplerSpec sampler;
  sampler.inputs = 4;
  sampler.tau = 0.1;
  CHECK_THROWS_AS((void)monte_carlo_average(input, sampler, McStatistic::c2, 1, 1, 1),
                  std::invalid_argument);
  sampler.tau = 0.0;
  CHECK_THROWS_AS((void)monte_carlo_average(input, sampler, McStatistic::c2, 10, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("statistic names") {
  CHECK(mc_statistic_name(McStatistic::c2) == "c2");
  CHECK(mc_statistic_name(McStatistic::qvp) == "qvp");
}

}  // namespace
}  // namespace speckleq

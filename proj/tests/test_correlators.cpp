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

#include "speckleq/correlators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <sstream>

#include "doctest.h"
#include "speckleq/errors.hpp"
#include "speckleq/network.hpp"

namespace speckleq {
namespace {

using cx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kExpMinus03 = 0.7408182206817179;  // e^{-0.3}
constexpr double kExpMinus06 = 0.5488116360940264;  // e^{-0.6}

TransmissionMatrix hom_splitter() {
  Eigen::MatrixXcd m(2, 2);
  const double inv = 1.0 / std::sqrt(2.0);
  m << inv, inv, inv, -inv;
  return {m, 0.5, "manual", 0};
}

TransmissionMatrix witness_splitter() {
  Eigen::MatrixXcd m(2, 2);
  const double inv = 1.0 / std::sqrt(2.0);
  m << inv, inv, -inv, inv;
  return {m, 0.5, "manual", 0};
}

ProductInput two_photons() {
  ProductInput input(2);
  input.set(0, ModeState::fock(1)).set(1, ModeState::fock(1));
  return input;
}

ProductInput squeezed_pair() {
  ProductInput input(2);
  input.set(0, ModeState::squeezed_vacuum(0.15, 0.0));
  input.set(1, ModeState::squeezed_vacuum(0.15, kPi));
  return input;
}

TEST_CASE("two photons interfere to zero coincidence on a balanced splitter") {
  const TransmissionMatrix t = hom_splitter();
  const ProductInput input = two_photons();
  CHECK(mean_photon(t, input, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean_photon(t, input, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(coincidence(t, input, 0, 1)) < 1e-12);
  CHECK(photon_correlation(t, input, 0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("two photons in one port anticorrelate at -1/2") {
  const TransmissionMatrix t = hom_splitter();
  ProductInput input(2);
  input.set(0, ModeState::fock(2));
  CHECK(photon_correlation(t, input, 0, 1) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("coherent light shows no correlation") {
  const TransmissionMatrix t = sample_diffusive(3, 3, 0.2, 17);
  ProductInput input(3);
  input.set(0, ModeState::coherent(cx(0.8, 0.1)));
  input.set(2, ModeState::coherent(cx(-0.3, 0.5)));
  CHECK(std::abs(photon_correlation(t, input, 0, 1)) < 1e-12);
  CHECK(std::abs(photon_correlation(t, input, 2, 1)) < 1e-12);
}

TEST_CASE("single thermal port bunches at +1") {
  const TransmissionMatrix t = sample_diffusive(3, 2, 0.2, 5);
  ProductInput input(2);
  input.set(1, ModeState::thermal(1.7));
  CHECK(photon_correlation(t, input, 0, 2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dark output makes the normalized correlation undefined") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0;
  const TransmissionMatrix t{m, 0.5, "manual", 0};
  const ProductInput input = two_photons();
  CHECK_THROWS_WITH_AS((void)photon_correlation(t, input, 0, 1), doctest::Contains("output 1"),
                       UndefinedCorrelationError);
  CHECK_THROWS_AS((void)coincidence(t, input, 1, 1), std::invalid_argument);
}

TEST_CASE("opposite-phase squeezed pair hits the witness value") {
  const TransmissionMatrix t = witness_splitter();
  const ProductInput input = squeezed_pair();
  const QuadratureVariances v = quadrature_variances(t, input, 0, 1);
  CHECK(v.x_minus == doctest::Approx(kExpMinus03).epsilon(1e-12));
  CHECK(v.y_plus == doctest::Approx(kExpMinus03).epsilon(1e-12));
  CHECK(qvp(t, input, 0, 1) == doctest::Approx(kExpMinus06).epsilon(1e-9));
}

TEST_CASE("dark outputs sit at the quantum noise limit") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 3);
  const TransmissionMatrix t{m, 0.1, "manual", 0};
  ProductInput input(3);
  input.set(0, ModeState::squeezed_vacuum(0.4, 1.0));
  const QuadratureVariances v = quadrature_variances(t, input, 0, 1);
  CHECK(v.x_minus == 1.0);
  CHECK(v.y_plus == 1.0);
  CHECK(qvp(t, input, 0, 1) == 1.0);
}

TEST_CASE("propagated second moments match direct sums") {
  const TransmissionMatrix t = sample_diffusive(4, 3, 0.3, 9);
  ProductInput input(3);
  input.set(0, ModeState::squeezed_vacuum(0.2, 0.4));
  input.set(1, ModeState::coherent(cx(0.6, -0.1)));
  input.set(2, ModeState::thermal(0.9));

  const SecondMoments moments = propagate_second_moments(t, input);
  REQUIRE(moments.a.rows() == 4);
  REQUIRE(moments.b.rows() == 4);

  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      cx expected_a(0.0, 0.0);
      cx expected_b(0.0, 0.0);
      for (int i = 0; i < 3; ++i) {
        const ModeState& st = input.state(i);
        const cx mean = mean_amplitude(st);
        const cx nu = normal_moment(st, 1, 1) - std::conj(mean) * mean;
        const cx mm = normal_moment(st, 0, 2) - mean * mean;
        expected_a += std::conj(t.t(a, i)) * t.t(b, i) * nu;
        expected_b += t.t(a, i) * t.t(b, i) * mm;
      }
      CHECK(std::abs(moments.a(a, b) - expected_a) < 1e-13);
      CHECK(std::abs(moments.b(a, b) - expected_b) < 1e-13);
    }
  }
  // Hermitian A, symmetric B.
  CHECK((moments.a - moments.a.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((moments.b - moments.b.transpose()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("covariance of pure vacuum is the shot-noise identity") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 2);
  const TransmissionMatrix t{m, 0.1, "manual", 0};
  const SecondMoments moments = propagate_second_moments(t, ProductInput(2));
  const Eigen::MatrixXd sigma = covariance_matrix(moments);
  CHECK((sigma - 0.5 * Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single squeezed channel covariance") {
  Eigen::MatrixXcd m(1, 1);
  m << 1.0;
  const TransmissionMatrix t{m, 1.0, "manual", 0};
  ProductInput input(1);
  input.set(0, ModeState::squeezed_vacuum(0.15, 0.0));
  const Eigen::MatrixXd sigma = covariance_matrix(propagate_second_moments(t, input));
  // X quadrature squeezed to e^{-2r}/2, Y stretched to e^{+2r}/2.
  CHECK(sigma(0, 0) == doctest::Approx(0.5 * kExpMinus03).epsilon(1e-12));
  CHECK(sigma(1, 1) == doctest::Approx(0.5 / kExpMinus03).epsilon(1e-12));
  CHECK(std::abs(sigma(0, 1)) < 1e-15);
}

TEST_CASE("covariance stays positive semidefinite for mixed inputs") {
  const TransmissionMatrix t = sample_diffusive(5, 4, 0.25, 31);
  ProductInput input(4);
  input.set(0, ModeState::squeezed_vacuum(0.5, 2.1));
  input.set(1, ModeState::thermal(1.2));
  input.set(2, ModeState::coherent(cx(1.0, -0.7)));
  input.set(3, ModeState::fock(2));
  const Eigen::MatrixXd sigma = covariance_matrix(propagate_second_moments(t, input));
  CHECK((sigma - sigma.transpose()).cwiseAbs().maxCoeff() < 1e-13);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma);
  CHECK(solver.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("speckle map values agree with direct per-pair calls") {
  const TransmissionMatrix t = sample_diffusive(6, 6, 0.2, 2);
  const ProductInput input = two_photons();
  const int reference = 4;
  const ObservableGrid grid = speckle_map(t, input, GridKind::photon_correlation, reference, 2, 3);

  CHECK(grid.rows() == 2);
  CHECK(grid.cols() == 3);
  CHECK(grid.reference_mode == reference);
  CHECK(grid.sampler == "diffusive");
  CHECK(grid.input_token == input.token());
  CHECK(std::isnan(grid.value_at_mode(reference)));
  for (int mode = 0; mode < 6; ++mode) {
    if (mode == reference) continue;
    CHECK(grid.value_at_mode(mode) ==
          doctest::Approx(photon_correlation(t, input, mode, reference)).epsilon(1e-13));
  }
}

TEST_CASE("log10 map takes the log of the witness product") {
  const TransmissionMatrix t = sample_diffusive(4, 2, 0.3, 12);
  const ProductInput input = squeezed_pair();
  const ObservableGrid grid = speckle_map(t, input, GridKind::log10_qvp, 1, 2, 2);
  for (int mode = 0; mode < 4; ++mode) {
    if (mode == 1) continue;
    CHECK(grid.value_at_mode(mode) ==
          doctest::Approx(std::log10(qvp(t, input, mode, 1))).epsilon(1e-13));
  }
}

TEST_CASE("speckle map is identical for any worker count") {
  const TransmissionMatrix t = sample_diffusive(12, 12, 0.15, 77);
  const ProductInput input = two_photons();
  std::string csv[3];
  int workers[3] = {1, 3, 8};
  for (int k = 0; k < 3; ++k) {
    const ObservableGrid grid =
        speckle_map(t, input, GridKind::photon_correlation, 5, 3, 4, workers[k]);
    std::ostringstream out;
    grid.write_csv(out);
    csv[k] = out.str();
  }
  CHECK(csv[0] == csv[1]);
  CHECK(csv[0] == csv[2]);
}

TEST_CASE("grid csv carries provenance and scan-ordered rows") {
  const TransmissionMatrix t = sample_diffusive(4, 4, 0.2, 3);
  const ProductInput input = two_photons();
  const ObservableGrid grid = speckle_map(t, input, GridKind::photon_correlation, 0, 2, 2);
  std::ostringstream out;
  grid.write_csv(out);
  const std::string text = out.str();
  CHECK(text.find("# kind: photon_correlation\n") != std::string::npos);
  CHECK(text.find("# sampler: diffusive\n") != std::string::npos);
  CHECK(text.find("# input: fock:1@0,fock:1@1\n") != std::string::npos);
  CHECK(text.find("kx,ky,value\n") != std::string::npos);
  CHECK(text.find("nan") != std::string::npos);  // reference cell
  // One data line per mode: "0,0,", "1,0,", "0,1,", "1,1,".
  CHECK(text.find("\n0,0,") != std::string::npos);
  CHECK(text.find("\n1,1,") != std::string::npos);
}

TEST_CASE("cells_below skips the reference cell") {
  const TransmissionMatrix t = sample_diffusive(4, 4, 0.2, 3);
  const ProductInput input = two_photons();
  const ObservableGrid grid = speckle_map(t, input, GridKind::photon_correlation, 0, 2, 2);
  int manual = 0;
  for (int mode = 1; mode < 4; ++mode) {
    if (grid.value_at_mode(mode) < 0.0) ++manual;
  }
  CHECK(grid.cells_below(0.0) == manual);
}

TEST_CASE("speckle map validates its geometry") {
  const TransmissionMatrix t = sample_diffusive(4, 4, 0.2, 3);
  const ProductInput input = two_photons();
  CHECK_THROWS_AS((void)speckle_map(t, input, GridKind::photon_correlation, 0, 3, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)speckle_map(t, input, GridKind::photon_correlation, 7, 2, 2),
                  std::out_of_range);
}

}  // namespace
}  // namespace speckleq

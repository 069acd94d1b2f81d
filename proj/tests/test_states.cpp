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

#include "speckleq/states.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "speckleq/errors.hpp"

namespace speckleq {
namespace {

using cx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Reference values for r = 0.15, phi = 0, frozen from an independent
// high-precision evaluation.
constexpr double kSqzMeanPhotons = 0.02266925706443024;      // sinh^2 r
constexpr double kSqzASquared = -0.1522601467235713;         // <a^2>
constexpr double kSqzQuartic = 0.0242109427119899;           // <a^dag^2 a^2>
constexpr double kSqzCubic = -0.010354873220233513;          // <a^dag a^3>
constexpr double kSqzFourth = 0.06954945684085038;           // <a^4>
constexpr double kSqzPhotonVariance = 0.046366304560566916;  // 2 sinh^2 cosh^2

TEST_CASE("vacuum moments") {
  const ModeState vac = ModeState::vacuum();
  CHECK(normal_moment(vac, 0, 0) == cx(1.0, 0.0));
  CHECK(normal_moment(vac, 1, 1) == cx(0.0, 0.0));
  CHECK(normal_moment(vac, 0, 3) == cx(0.0, 0.0));
  CHECK(normal_moment(vac, 7, 7) == cx(0.0, 0.0));
  CHECK(mean_amplitude(vac) == cx(0.0, 0.0));
  CHECK(photon_stats(vac).mean == 0.0);
  CHECK(photon_stats(vac).variance == 0.0);
}

TEST_CASE("fock moments are falling factorials") {
  const ModeState two = ModeState::fock(2);
  CHECK(normal_moment(two, 1, 1).real() == 2.0);
  CHECK(normal_moment(two, 2, 2).real() == 2.0);  // n(n-1)
  CHECK(normal_moment(two, 3, 3).real() == 0.0);
  CHECK(normal_moment(two, 1, 2) == cx(0.0, 0.0));  // p != q has no diagonal support
  CHECK(photon_stats(two).mean == 2.0);
  CHECK(photon_stats(two).variance == 0.0);

  const ModeState three = ModeState::fock(3);
  CHECK(normal_moment(three, 2, 2).real() == 6.0);
  CHECK(normal_moment(three, 3, 3).real() == 6.0);
  CHECK(normal_moment(three, 4, 4).real() == 0.0);
}

TEST_CASE("coherent moments factorize into amplitude powers") {
  const cx alpha(0.3, -0.4);
  const ModeState state = ModeState::coherent(alpha);
  CHECK(mean_amplitude(state) == alpha);
  CHECK(normal_moment(state, 0, 1) == alpha);
  CHECK(normal_moment(state, 1, 0) == std::conj(alpha));
  const cx expected = std::conj(alpha) * std::conj(alpha) * alpha;
  CHECK(std::abs(normal_moment(state, 2, 1) - expected) < 1e-15);
  CHECK(photon_stats(state).mean == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(photon_stats(state).variance == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("thermal moments carry factorial enhancement") {
  const ModeState state = ModeState::thermal(2.0);
  CHECK(normal_moment(state, 1, 1).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(normal_moment(state, 2, 2).real() == doctest::Approx(8.0).epsilon(1e-14));  // 2! nbar^2
  CHECK(normal_moment(state, 3, 3).real() == doctest::Approx(48.0).epsilon(1e-14));
  CHECK(normal_moment(state, 2, 1) == cx(0.0, 0.0));
  const PhotonStats stats = photon_stats(state);
  CHECK(stats.mean == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(stats.variance == doctest::Approx(6.0).epsilon(1e-14));  // nbar^2 + nbar
}

TEST_CASE("squeezed vacuum moments at r=0.15, phi=0") {
  const ModeState state = ModeState::squeezed_vacuum(0.15, 0.0);
  CHECK(normal_moment(state, 1, 1).real() ==
        doctest::Approx(kSqzMeanPhotons).epsilon(1e-14));
  CHECK(normal_moment(state, 0, 2).real() == doctest::Approx(kSqzASquared).epsilon(1e-14));
  CHECK(normal_moment(state, 0, 2).imag() == 0.0);
  CHECK(normal_moment(state, 2, 0).real() == doctest::Approx(kSqzASquared).epsilon(1e-14));
  CHECK(normal_moment(state, 2, 2).real() == doctest::Approx(kSqzQuartic).epsilon(1e-14));
  CHECK(normal_moment(state, 1, 3).real() == doctest::Approx(kSqzCubic).epsilon(1e-14));
  CHECK(normal_moment(state, 0, 4).real() == doctest::Approx(kSqzFourth).epsilon(1e-14));
  // Odd total order vanishes.
  CHECK(normal_moment(state, 0, 1) == cx(0.0, 0.0));
  CHECK(normal_moment(state, 2, 1) == cx(0.0, 0.0));
  CHECK(normal_moment(state, 0, 3) == cx(0.0, 0.0));
  CHECK(mean_amplitude(state) == cx(0.0, 0.0));

  const PhotonStats stats = photon_stats(state);
  CHECK(stats.mean == doctest::Approx(kSqzMeanPhotons).epsilon(1e-14));
  CHECK(stats.variance == doctest::Approx(kSqzPhotonVariance).epsilon(1e-14));
}

TEST_CASE("squeezed phase rotates the anomalous moment") {
  const ModeState flipped = ModeState::squeezed_vacuum(0.15, kPi);
  // <a^2> = -e^{i phi} sinh cosh picks up the sign flip; <n> does not.
  CHECK(normal_moment(flipped, 0, 2).real() ==
        doctest::Approx(-kSqzASquared).epsilon(1e-12));
  CHECK(std::abs(normal_moment(flipped, 0, 2).imag()) < 1e-15);
  CHECK(normal_moment(flipped, 1, 1).real() ==
        doctest::Approx(kSqzMeanPhotons).epsilon(1e-14));

  const ModeState quarter = ModeState::squeezed_vacuum(0.15, kPi / 2);
  CHECK(std::abs(normal_moment(quarter, 0, 2).real()) < 1e-15);
  // -e^{i pi/2} rotates the (negative) moment onto the negative imaginary axis.
  CHECK(normal_moment(quarter, 0, 2).imag() ==
        doctest::Approx(kSqzASquared).epsilon(1e-12));
}

TEST_CASE("squeezed vacuum beyond fourth order raises") {
  const ModeState state = ModeState::squeezed_vacuum(0.3, 1.0);
  // Odd total order vanishes by parity at any order; even orders above four throw.
  CHECK(normal_moment(state, 3, 2) == std::complex<double>{0.0, 0.0});
  CHECK_THROWS_AS((void)normal_moment(state, 3, 3), UnsupportedOrderError);
  CHECK_THROWS_AS((void)normal_moment(state, 0, 6), UnsupportedOrderError);
  CHECK_NOTHROW((void)normal_moment(state, 2, 2));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((void)ModeState::fock(-1), std::invalid_argument);
  CHECK_THROWS_AS((void)ModeState::thermal(-0.5), std::invalid_argument);
  CHECK_THROWS_AS((void)ModeState::squeezed_vacuum(-0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)normal_moment(ModeState::vacuum(), -1, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)normal_moment(ModeState::vacuum(), 0, -2), std::invalid_argument);
}

TEST_CASE("phase stored reduced to [0, 2pi)") {
  const ModeState state = ModeState::squeezed_vacuum(0.15, 2.0 * kPi + 1.0);
  const auto& sqz = std::get<SqueezedVacuum>(state.value());
  CHECK(sqz.phi == doctest::Approx(1.0).epsilon(1e-12));
  const ModeState negative = ModeState::squeezed_vacuum(0.15, -kPi / 2);
  const auto& sqz2 = std::get<SqueezedVacuum>(negative.value());
  CHECK(sqz2.phi == doctest::Approx(1.5 * kPi).epsilon(1e-12));
}

TEST_CASE("vacuum equivalence") {
  CHECK(ModeState::vacuum().is_vacuum_equivalent());
  CHECK(ModeState::fock(0).is_vacuum_equivalent());
  CHECK(ModeState::coherent(cx(0.0, 0.0)).is_vacuum_equivalent());
  CHECK(ModeState::squeezed_vacuum(0.0, 1.3).is_vacuum_equivalent());
  CHECK(ModeState::thermal(0.0).is_vacuum_equivalent());
  CHECK_FALSE(ModeState::fock(1).is_vacuum_equivalent());
  CHECK_FALSE(ModeState::squeezed_vacuum(0.15, 0.0).is_vacuum_equivalent());
}

TEST_CASE("state tokens") {
  CHECK(ModeState::vacuum().token() == "vac");
  CHECK(ModeState::fock(2).token() == "fock:2");
  CHECK(ModeState::squeezed_vacuum(0.15, 0.0).token() == "sqz:0.15:0");
  CHECK(ModeState::coherent(cx(0.3, -0.4)).token() == "coh:0.3:-0.4");
  CHECK(ModeState::thermal(1.7).token() == "thermal:1.7");
}

TEST_CASE("product input bookkeeping") {
  ProductInput input(5);
  input.set(3, ModeState::fock(1)).set(0, ModeState::coherent(cx(0.5, 0.0)));
  input.set(2, ModeState::fock(0));  // vacuum-equivalent, not occupied

  CHECK(input.total_ports() == 5);
  CHECK(input.occupied_ports() == std::vector<int>{0, 3});
  CHECK(std::get_if<Fock>(&input.state(3).value()) != nullptr);
  CHECK(std::get_if<Vacuum>(&input.state(1).value()) != nullptr);
  CHECK_THROWS_AS((void)input.state(5), std::out_of_range);
  CHECK_THROWS_AS((void)input.state(-1), std::out_of_range);
  CHECK_THROWS_AS((void)ProductInput(0), std::invalid_argument);
  CHECK_THROWS_AS((void)ProductInput(3).set(3, ModeState::fock(1)), std::out_of_range);
}

TEST_CASE("product input token") {
  ProductInput input(4);
  input.set(0, ModeState::fock(1)).set(1, ModeState::fock(1));
  CHECK(input.token() == "fock:1@0,fock:1@1");
  ProductInput empty(2);
  CHECK(empty.token() == "vac");  // fully dark input still names itself
}

TEST_CASE("joint moments factorize across ports") {
  const cx alpha(0.2, 0.6);
  ProductInput input(3);
  input.set(0, ModeState::coherent(alpha)).set(1, ModeState::fock(1));

  // <a^dag_0 a_0 a^dag_1 a_1> reorders per port into <n_0><n_1>.
  const std::array<int, 2> daggered{0, 1};
  const std::array<int, 2> plain{0, 1};
  const cx value = joint_normal_moment(input, daggered, plain);
  CHECK(value.real() == doctest::Approx(std::norm(alpha) * 1.0).epsilon(1e-14));
  CHECK(std::abs(value.imag()) < 1e-15);

  // Any ladder action on a vacuum port annihilates the moment.
  const std::array<int, 1> vac_plain{2};
  CHECK(joint_normal_moment(input, {}, vac_plain) == cx(0.0, 0.0));

  // Unbalanced order on a Fock port vanishes too.
  const std::array<int, 1> unbalanced{1};
  CHECK(joint_normal_moment(input, {}, unbalanced) == cx(0.0, 0.0));

  // Empty word is the norm.
  CHECK(joint_normal_moment(input, {}, {}) == cx(1.0, 0.0));
}

}  // namespace
}  // namespace speckleq

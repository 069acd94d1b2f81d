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

#ifndef SPECKLEQ_STATES_HPP
#define SPECKLEQ_STATES_HPP

#include <complex>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "speckleq/errors.hpp"

namespace speckleq {

struct Vacuum {};

struct Fock {
  int n;
};

/// Squeezed vacuum exp[(zeta* a^2 - zeta a^dag^2)/2]|0> with zeta = r e^{i phi}.
struct SqueezedVacuum {
  double r;
  double phi;  // stored reduced to [0, 2*pi)
};

struct Coherent {
  std::complex<double> alpha;
};

struct Thermal {
  double nbar;
};

/// Single-mode input state, one of the five supported families.
/// Construction validates parameters; default construction yields vacuum.
class ModeState {
 public:
  using Value = std::variant<Vacuum, Fock, SqueezedVacuum, Coherent, Thermal>;

  ModeState() : value_(Vacuum{}) {}

  static ModeState vacuum();
  static ModeState fock(int n);
  static ModeState squeezed_vacuum(double r, double phi);
  static ModeState coherent(std::complex<double> alpha);
  static ModeState thermal(double nbar);

  const Value& value() const { return value_; }

  /// True when every moment of the state equals the vacuum moment
  /// (Fock(0), Coherent(0), SqueezedVacuum(0,.), Thermal(0), Vacuum).
  bool is_vacuum_equivalent() const;

  /// Compact token form, e.g. "fock:2", "sqz:0.15:0", "coh:0.3:-0.4",
  /// "thermal:1.7", "vac". Numbers use shortest round-trip formatting.
  std::string token() const;

 private:
  explicit ModeState(Value v) : value_(std::move(v)) {}
  Value value_;
};

/// Normally ordered moment <a^dag^p a^q>.
///
/// Closed forms for all families; orders with p + q <= 4 are always
/// supported. Fock, coherent, thermal and vacuum support arbitrary orders;
/// squeezed vacuum beyond fourth order raises UnsupportedOrderError.
std::complex<double> normal_moment(const ModeState& state, int p, int q);

/// <a>; zero for Fock, thermal, squeezed vacuum and vacuum.
std::complex<double> mean_amplitude(const ModeState& state);

struct PhotonStats {
  double mean;      // <n>
  double variance;  // <n^2> - <n>^2
};

/// Photon-number mean and variance from the normally ordered moments:
/// Var n = <a^dag^2 a^2> + <n> - <n>^2.
PhotonStats photon_stats(const ModeState& state);

/// Product of independent single-mode states over a fixed number of input
/// ports. Ports never set are vacuum. Port indices are 0-based.
class ProductInput {
 public:
  explicit ProductInput(int total_ports);

  ProductInput& set(int port, ModeState state);

  int total_ports() const { return total_ports_; }

  /// State at `port` (vacuum if unset). Throws std::out_of_range for
  /// indices outside [0, total_ports).
  const ModeState& state(int port) const;

  /// Ports carrying a state that is not vacuum-equivalent, ascending.
  /// Moment sums over these ports are exact: vacuum-equivalent ports
  /// contribute zero to every normally ordered moment.
  const std::vector<int>& occupied_ports() const { return occupied_; }

  /// Token form "state@port" joined with commas, e.g. "fock:1@0,fock:1@1".
  std::string token() const;

 private:
  int total_ports_;
  std::map<int, ModeState> set_states_;
  std::vector<int> occupied_;
};

/// Joint normally ordered moment over the product state:
/// < prod a^dag_{daggered[k]} prod a_{plain[k]} >, which factorizes into
/// per-port moments by independence.
std::complex<double> joint_normal_moment(const ProductInput& input,
                                         std::span<const int> daggered,
                                         std::span<const int> plain);

}  // namespace speckleq

#endif  // SPECKLEQ_STATES_HPP

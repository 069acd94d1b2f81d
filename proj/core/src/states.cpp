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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "speckleq/format.hpp"

namespace speckleq {

namespace {

constexpr int kMaxGenericOrder = 64;  // overflow guard for factorial-type products

double reduce_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double reduced = std::fmod(phi, two_pi);
  if (reduced < 0.0) reduced += two_pi;
  return reduced;
}

std::complex<double> int_pow(std::complex<double> base, int exponent) {
  std::complex<double> acc{1.0, 0.0};
  for (int k = 0; k < exponent; ++k) acc *= base;
  return acc;
}

double falling_factorial(int n, int p) {
  double acc = 1.0;
  for (int k = 0; k < p; ++k) acc *= static_cast<double>(n - k);
  return acc;
}

double factorial(int p) {
  double acc = 1.0;
  for (int k = 2; k <= p; ++k) acc *= static_cast<double>(k);
  return acc;
}

// <a^dag^p a^q> for squeezed vacuum, p + q <= 4. With s = sinh r,
// c = cosh r, E = e^{i phi}: odd total order vanishes; the even-order
// table is
//   (1,1) -> s^2                , (2,2) -> s^2 c^2 + 2 s^4
//   (0,2) -> -E s c             , (1,3) -> -3 E s^3 c
//   (0,4) -> 3 E^2 s^2 c^2
// with (p,q) and (q,p) related by complex conjugation.
std::complex<double> squeezed_moment(const SqueezedVacuum& sq, int p, int q) {
  if ((p + q) % 2 != 0) return {0.0, 0.0};
  if (p + q > 4) {
    throw UnsupportedOrderError("normal_moment: order (" + std::to_string(p) + "," +
                                std::to_string(q) +
                                ") is not implemented for squeezed vacuum");
  }
  const double s = std::sinh(sq.r);
  const double c = std::cosh(sq.r);
  const std::complex<double> e = std::polar(1.0, sq.phi);
  if (p == 0 && q == 0) return {1.0, 0.0};
  if (p == 1 && q == 1) return {s * s, 0.0};
  if (p == 0 && q == 2) return -e * s * c;
  if (p == 2 && q == 0) return -std::conj(e) * s * c;
  if (p == 2 && q == 2) return {s * s * c * c + 2.0 * s * s * s * s, 0.0};
  if (p == 1 && q == 3) return -3.0 * e * s * s * s * c;
  if (p == 3 && q == 1) return -3.0 * std::conj(e) * s * s * s * c;
  if (p == 0 && q == 4) return 3.0 * e * e * s * s * c * c;
  if (p == 4 && q == 0) return 3.0 * std::conj(e * e) * s * s * c * c;
  return {0.0, 0.0};  // unreachable: all even (p,q), p+q <= 4, enumerated above
}

}  // namespace

ModeState ModeState::vacuum() { return ModeState(Vacuum{}); }

ModeState ModeState::fock(int n) {
  if (n < 0) throw std::invalid_argument("ModeState::fock: n must be >= 0");
  return ModeState(Fock{n});
}

ModeState ModeState::squeezed_vacuum(double r, double phi) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("ModeState::squeezed_vacuum: r must be finite and >= 0");
  }
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("ModeState::squeezed_vacuum: phi must be finite");
  }
  return ModeState(SqueezedVacuum{r, reduce_phase(phi)});
}

ModeState ModeState::coherent(std::complex<double> alpha) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw std::invalid_argument("ModeState::coherent: alpha must be finite");
  }
  return ModeState(Coherent{alpha});
}

ModeState ModeState::thermal(double nbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument("ModeState::thermal: nbar must be finite and >= 0");
  }
  return ModeState(Thermal{nbar});
}

bool ModeState::is_vacuum_equivalent() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Vacuum>) return true;
        if constexpr (std::is_same_v<T, Fock>) return v.n == 0;
        if constexpr (std::is_same_v<T, SqueezedVacuum>) return v.r == 0.0;
        if constexpr (std::is_same_v<T, Coherent>) return v.alpha == std::complex<double>{0.0, 0.0};
        if constexpr (std::is_same_v<T, Thermal>) return v.nbar == 0.0;
      },
      value_);
}

std::string ModeState::token() const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Vacuum>) return "vac";
        if constexpr (std::is_same_v<T, Fock>) return "fock:" + std::to_string(v.n);
        if constexpr (std::is_same_v<T, SqueezedVacuum>)
          return "sqz:" + format_double(v.r) + ":" + format_double(v.phi);
        if constexpr (std::is_same_v<T, Coherent>)
          return "coh:" + format_double(v.alpha.real()) + ":" + format_double(v.alpha.imag());
        if constexpr (std::is_same_v<T, Thermal>) return "thermal:" + format_double(v.nbar);
      },
      value_);
}

std::complex<double> normal_moment(const ModeState& state, int p, int q) {
  if (p < 0 || q < 0) {
    throw std::invalid_argument("normal_moment: p and q must be >= 0");
  }
  if (p > kMaxGenericOrder || q > kMaxGenericOrder) {
    throw UnsupportedOrderError("normal_moment: order exceeds supported range");
  }
  return std::visit(
      [&](const auto& v) -> std::complex<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return (p == 0 && q == 0) ? std::complex<double>{1.0, 0.0}
                                    : std::complex<double>{0.0, 0.0};
        }
        if constexpr (std::is_same_v<T, Fock>) {
          if (p != q) return {0.0, 0.0};
          if (p > v.n) return {0.0, 0.0};
          return {falling_factorial(v.n, p), 0.0};
        }
        if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          return squeezed_moment(v, p, q);
        }
        if constexpr (std::is_same_v<T, Coherent>) {
          return int_pow(std::conj(v.alpha), p) * int_pow(v.alpha, q);
        }
        if constexpr (std::is_same_v<T, Thermal>) {
          if (p != q) return {0.0, 0.0};
          return {factorial(p) * std::pow(v.nbar, p), 0.0};
        }
      },
      state.value());
}

std::complex<double> mean_amplitude(const ModeState& state) {
  return normal_moment(state, 0, 1);
}

PhotonStats photon_stats(const ModeState& state) {
  const double mean = normal_moment(state, 1, 1).real();
  const double second = normal_moment(state, 2, 2).real();
  return {mean, second + mean - mean * mean};
}

ProductInput::ProductInput(int total_ports) : total_ports_(total_ports) {
  if (total_ports < 1) {
    throw std::invalid_argument("ProductInput: total_ports must be >= 1");
  }
}

ProductInput& ProductInput::set(int port, ModeState state) {
  if (port < 0 || port >= total_ports_) {
    throw std::out_of_range("ProductInput::set: port " + std::to_string(port) +
                            " outside [0, " + std::to_string(total_ports_) + ")");
  }
  set_states_[port] = std::move(state);
  occupied_.clear();
  for (const auto& [idx, st] : set_states_) {
    if (!st.is_vacuum_equivalent()) occupied_.push_back(idx);
  }
  return *this;
}

const ModeState& ProductInput::state(int port) const {
  if (port < 0 || port >= total_ports_) {
    throw std::out_of_range("ProductInput::state: port " + std::to_string(port) +
                            " outside [0, " + std::to_string(total_ports_) + ")");
  }
  static const ModeState vacuum_state{};
  auto it = set_states_.find(port);
  return it == set_states_.end() ? vacuum_state : it->second;
}

std::string ProductInput::token() const {
  if (set_states_.empty()) return "vac";
  std::ostringstream out;
  bool first = true;
  for (const auto& [idx, st] : set_states_) {
    if (!first) out << ",";
    out << st.token() << "@" << idx;
    first = false;
  }
  return out.str();
}

std::complex<double> joint_normal_moment(const ProductInput& input,
                                         std::span<const int> daggered,
                                         std::span<const int> plain) {
  // Per-port (p, q) exponent counts; independence factorizes the moment.
  std::map<int, std::pair<int, int>> counts;
  for (int idx : daggered) {
    if (idx < 0 || idx >= input.total_ports()) {
      throw std::out_of_range("joint_normal_moment: port index " + std::to_string(idx));
    }
    counts[idx].first += 1;
  }
  for (int idx : plain) {
    if (idx < 0 || idx >= input.total_ports()) {
      throw std::out_of_range("joint_normal_moment: port index " + std::to_string(idx));
    }
    counts[idx].second += 1;
  }
  std::complex<double> acc{1.0, 0.0};
  for (const auto& [idx, pq] : counts) {
    acc *= normal_moment(input.state(idx), pq.first, pq.second);
    if (acc == std::complex<double>{0.0, 0.0}) return acc;
  }
  return acc;
}

}  // namespace speckleq

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

#include "speckleq/fockoracle.hpp"

#include <cmath>
#include <stdexcept>

namespace speckleq::oracle {

namespace {

constexpr double kTailBound = 1e-12;
constexpr int kMaxCutoff = 256;
constexpr int kMaxModes = 3;
constexpr std::size_t kMaxWord = 8;

TruncatedState build_fock(int n, int cutoff) {
  TruncatedState out;
  out.cutoff = std::max(cutoff, n + 1);
  out.amplitudes.assign(static_cast<std::size_t>(out.cutoff), {0.0, 0.0});
  out.amplitudes[static_cast<std::size_t>(n)] = {1.0, 0.0};
  out.tail = 0.0;
  return out;
}

TruncatedState build_coherent(std::complex<double> alpha, int cutoff) {
  TruncatedState out;
  std::complex<double> coeff = std::exp(-0.5 * std::norm(alpha));  // c_0
  double norm_sum = 0.0;
  int n = 0;
  while (true) {
    out.amplitudes.push_back(coeff);
    norm_sum += std::norm(coeff);
    ++n;
    if (n >= cutoff && 1.0 - norm_sum <= kTailBound) break;
    if (n >= kMaxCutoff) {
      throw std::runtime_error("build_state: coherent tail bound unachievable at cutoff " +
                               std::to_string(kMaxCutoff));
    }
    coeff *= alpha / std::sqrt(static_cast<double>(n));  // c_{n} -> c_{n+1}
  }
  out.cutoff = static_cast<int>(out.amplitudes.size());
  out.tail = std::max(0.0, 1.0 - norm_sum);
  return out;
}

TruncatedState build_squeezed(const SqueezedVacuum& sq, int cutoff) {
  // Even-photon amplitudes c_{2m} = sqrt((2m)!)/(2^m m!) *
  // (-e^{i phi} tanh r)^m / sqrt(cosh r), generated by the stable ratio
  // c_{2(m+1)}/c_{2m} = -e^{i phi} tanh r * sqrt((2m+1)/(2m+2)).
  TruncatedState out;
  const std::complex<double> step =
      -std::polar(std::tanh(sq.r), sq.phi);
  std::complex<double> coeff = 1.0 / std::sqrt(std::cosh(sq.r));  // c_0
  double norm_sum = 0.0;
  int m = 0;
  while (true) {
    out.amplitudes.push_back(coeff);            // occupation 2m
    out.amplitudes.push_back({0.0, 0.0});       // occupation 2m+1
    norm_sum += std::norm(coeff);
    const int filled = 2 * (m + 1);
    if (filled >= cutoff && 1.0 - norm_sum <= kTailBound) break;
    if (filled >= kMaxCutoff) {
      throw std::runtime_error("build_state: squeezed tail bound unachievable at cutoff " +
                               std::to_string(kMaxCutoff));
    }
    coeff *= step * std::sqrt((2.0 * m + 1.0) / (2.0 * m + 2.0));
    ++m;
  }
  out.cutoff = static_cast<int>(out.amplitudes.size());
  out.tail = std::max(0.0, 1.0 - norm_sum);
  return out;
}

TruncatedState build_thermal(double nbar, int cutoff) {
  TruncatedState out;
  if (nbar == 0.0) {
    out.weights.assign(static_cast<std::size_t>(std::max(cutoff, 2)), 0.0);
    out.weights[0] = 1.0;
    out.cutoff = static_cast<int>(out.weights.size());
    out.tail = 0.0;
    return out;
  }
  // Geometric weights p_n = nbar^n / (1+nbar)^{n+1}.
  const double ratio = nbar / (1.0 + nbar);
  double weight = 1.0 / (1.0 + nbar);  // p_0
  double norm_sum = 0.0;
  int n = 0;
  while (true) {
    out.weights.push_back(weight);
    norm_sum += weight;
    ++n;
    if (n >= cutoff && 1.0 - norm_sum <= kTailBound) break;
    if (n >= kMaxCutoff) {
      throw std::runtime_error("build_state: thermal tail bound unachievable at cutoff " +
                               std::to_string(kMaxCutoff));
    }
    weight *= ratio;
  }
  out.cutoff = static_cast<int>(out.weights.size());
  out.tail = std::max(0.0, 1.0 - norm_sum);
  return out;
}

// Joint tensor over modes with per-mode working dimensions. Row-major:
// stride of the last mode is 1.
struct JointTensor {
  std::vector<int> dims;
  std::vector<std::size_t> strides;
  std::vector<std::complex<double>> data;

  explicit JointTensor(std::vector<int> dims_in) : dims(std::move(dims_in)) {
    strides.assign(dims.size(), 1);
    std::size_t total = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
      strides[k] = total;
      total *= static_cast<std::size_t>(dims[k]);
    }
    data.assign(total, {0.0, 0.0});
  }
};

void apply_letter(const JointTensor& in, JointTensor& out, const OpLetter& letter) {
  const std::size_t stride = in.strides[static_cast<std::size_t>(letter.mode)];
  const int dim = in.dims[static_cast<std::size_t>(letter.mode)];
  std::fill(out.data.begin(), out.data.end(), std::complex<double>{0.0, 0.0});
  for (std::size_t idx = 0; idx < in.data.size(); ++idx) {
    const std::complex<double>& amp = in.data[idx];
    if (amp == std::complex<double>{0.0, 0.0}) continue;
    const int n = static_cast<int>((idx / stride) % static_cast<std::size_t>(dim));
    if (letter.dagger) {
      if (n + 1 >= dim) {
        throw std::runtime_error("oracle_expectation: creation operator exits truncation");
      }
      out.data[idx + stride] += std::sqrt(static_cast<double>(n + 1)) * amp;
    } else if (n >= 1) {
      out.data[idx - stride] += std::sqrt(static_cast<double>(n)) * amp;
    }
  }
}

std::complex<double> pure_expectation(const std::vector<const std::vector<std::complex<double>>*>& vectors,
                                      std::span<const OpLetter> word) {
  const std::size_t m = vectors.size();
  std::vector<int> daggers_per_mode(m, 0);
  for (const OpLetter& letter : word) {
    if (letter.dagger) ++daggers_per_mode[static_cast<std::size_t>(letter.mode)];
  }
  std::vector<int> dims(m);
  for (std::size_t k = 0; k < m; ++k) {
    dims[k] = static_cast<int>(vectors[k]->size()) + daggers_per_mode[k];
  }
  JointTensor psi(dims);
  // Product-state tensor: iterate the flat index in row-major order.
  for (std::size_t idx = 0; idx < psi.data.size(); ++idx) {
    std::complex<double> amp{1.0, 0.0};
    for (std::size_t k = 0; k < m; ++k) {
      const int n = static_cast<int>((idx / psi.strides[k]) % static_cast<std::size_t>(dims[k]));
      if (n < static_cast<int>(vectors[k]->size())) {
        amp *= (*vectors[k])[static_cast<std::size_t>(n)];
      } else {
        amp = {0.0, 0.0};
        break;
      }
    }
    psi.data[idx] = amp;
  }
  JointTensor current = psi;
  JointTensor scratch(dims);
  for (std::size_t k = word.size(); k-- > 0;) {
    apply_letter(current, scratch, word[k]);
    std::swap(current.data, scratch.data);
  }
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t idx = 0; idx < psi.data.size(); ++idx) {
    acc += std::conj(psi.data[idx]) * current.data[idx];
  }
  return acc;
}

std::complex<double> mixture_expectation(std::span<const TruncatedState> states,
                                         std::span<const OpLetter> word, std::size_t mode,
                                         double weight,
                                         std::vector<std::vector<std::complex<double>>>& basis_scratch,
                                         std::vector<const std::vector<std::complex<double>>*>& vectors) {
  if (mode == states.size()) {
    return weight * pure_expectation(vectors, word);
  }
  const TruncatedState& state = states[mode];
  if (!state.is_mixture()) {
    vectors[mode] = &state.amplitudes;
    return mixture_expectation(states, word, mode + 1, weight, basis_scratch, vectors);
  }
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t level = 0; level < state.weights.size(); ++level) {
    const double w = state.weights[level];
    if (w == 0.0) continue;
    auto& basis = basis_scratch[mode];
    basis.assign(level + 1, {0.0, 0.0});
    basis[level] = {1.0, 0.0};
    vectors[mode] = &basis;
    acc += mixture_expectation(states, word, mode + 1, weight * w, basis_scratch, vectors);
  }
  return acc;
}

}  // namespace

TruncatedState build_state(const ModeState& state, int cutoff) {
  if (cutoff < 2) throw std::invalid_argument("build_state: cutoff must be >= 2");
  if (cutoff > kMaxCutoff) {
    throw std::invalid_argument("build_state: cutoff exceeds maximum " +
                                std::to_string(kMaxCutoff));
  }
  return std::visit(
      [&](const auto& v) -> TruncatedState {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Vacuum>) return build_fock(0, cutoff);
        if constexpr (std::is_same_v<T, Fock>) return build_fock(v.n, cutoff);
        if constexpr (std::is_same_v<T, Coherent>) return build_coherent(v.alpha, cutoff);
        if constexpr (std::is_same_v<T, SqueezedVacuum>) return build_squeezed(v, cutoff);
        if constexpr (std::is_same_v<T, Thermal>) return build_thermal(v.nbar, cutoff);
      },
      state.value());
}

std::complex<double> oracle_expectation(std::span<const TruncatedState> states,
                                        std::span<const OpLetter> word) {
  if (states.empty() || states.size() > kMaxModes) {
    throw std::invalid_argument("oracle_expectation: supports 1..3 modes");
  }
  if (word.size() > kMaxWord) {
    throw std::invalid_argument("oracle_expectation: word too long");
  }
  for (const OpLetter& letter : word) {
    if (letter.mode < 0 || letter.mode >= static_cast<int>(states.size())) {
      throw std::out_of_range("oracle_expectation: letter mode out of range");
    }
  }
  std::vector<std::vector<std::complex<double>>> basis_scratch(states.size());
  std::vector<const std::vector<std::complex<double>>*> vectors(states.size(), nullptr);
  return mixture_expectation(states, word, 0, 1.0, basis_scratch, vectors);
}

OutputStatistics oracle_output_statistics(const TransmissionMatrix& t, const ProductInput& input,
                                          int alpha, int beta, int cutoff) {
  if (alpha < 0 || alpha >= t.outputs() || beta < 0 || beta >= t.outputs() || alpha == beta) {
    throw std::invalid_argument("oracle_output_statistics: bad output pair");
  }
  if (input.total_ports() > t.inputs()) {
    throw std::invalid_argument("oracle_output_statistics: input wider than t");
  }
  const std::vector<int>& occ = input.occupied_ports();
  if (occ.size() > kMaxModes) {
    throw std::invalid_argument("oracle_output_statistics: more than 3 occupied ports");
  }
  std::vector<TruncatedState> states;
  states.reserve(occ.size());
  for (int port : occ) states.push_back(build_state(input.state(port), cutoff));
  const int m = static_cast<int>(occ.size());

  auto expect = [&](std::span<const OpLetter> word) {
    return oracle_expectation(states, word);
  };
  auto t_alpha = [&](int local_i) { return t.t(alpha, occ[static_cast<std::size_t>(local_i)]); };
  auto t_beta = [&](int local_i) { return t.t(beta, occ[static_cast<std::size_t>(local_i)]); };

  OutputStatistics out{0.0, 0.0, 0.0, 0.0, 0.0};
  if (m == 0) {
    out.var_x_minus = 1.0;
    out.var_y_plus = 1.0;
    return out;
  }

  std::complex<double> mean_a{}, mean_b{};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const OpLetter word[] = {{i, true}, {j, false}};
      const std::complex<double> moment = expect(word);
      mean_a += std::conj(t_alpha(i)) * t_alpha(j) * moment;
      mean_b += std::conj(t_beta(i)) * t_beta(j) * moment;
    }
  }
  out.mean_alpha = mean_a.real();
  out.mean_beta = mean_b.real();

  std::complex<double> coin{};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          const OpLetter word[] = {{i, true}, {j, true}, {k, false}, {l, false}};
          coin += std::conj(t_alpha(i)) * std::conj(t_beta(j)) * t_beta(k) * t_alpha(l) *
                  expect(word);
        }
      }
    }
  }
  out.coincidence = coin.real();

  // c = a_alpha - a_beta and w = a_alpha + a_beta over occupied ports.
  // Var((c + c^dag)/sqrt2) = 1 + <c^dag c> + Re<c c> - 2 (Re<c>)^2, the 1
  // being the full unitary's [c, c^dag] = 2 vacuum completion; similarly
  // Var(i(w^dag - w)/sqrt2) = 1 + <w^dag w> - Re<w w> - 2 (Im<w>)^2.
  std::complex<double> cdc{}, cc{}, c1{}, wdw{}, ww{}, w1{};
  for (int i = 0; i < m; ++i) {
    const std::complex<double> u_i = t_alpha(i) - t_beta(i);
    const std::complex<double> w_i = t_alpha(i) + t_beta(i);
    const OpLetter word1[] = {{i, false}};
    const std::complex<double> amp = expect(word1);
    c1 += u_i * amp;
    w1 += w_i * amp;
    for (int j = 0; j < m; ++j) {
      const std::complex<double> u_j = t_alpha(j) - t_beta(j);
      const std::complex<double> w_j = t_alpha(j) + t_beta(j);
      const OpLetter word_nd[] = {{i, true}, {j, false}};
      const OpLetter word_aa[] = {{i, false}, {j, false}};
      const std::complex<double> nd = expect(word_nd);
      const std::complex<double> aa = expect(word_aa);
      cdc += std::conj(u_i) * u_j * nd;
      cc += u_i * u_j * aa;
      wdw += std::conj(w_i) * w_j * nd;
      ww += w_i * w_j * aa;
    }
  }
  const double re_c = c1.real();
  const double im_w = w1.imag();
  out.var_x_minus = 1.0 + cdc.real() + cc.real() - 2.0 * re_c * re_c;
  out.var_y_plus = 1.0 + wdw.real() - ww.real() - 2.0 * im_w * im_w;
  return out;
}

}  // namespace speckleq::oracle

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

#ifndef SPECKLEQ_FOCKORACLE_HPP
#define SPECKLEQ_FOCKORACLE_HPP

#include <complex>
#include <span>
#include <vector>

#include "speckleq/network.hpp"
#include "speckleq/states.hpp"

// Independent brute-force verifier. Everything here works by explicit
// ladder-operator action on truncated Fock-space tensors, with no shared
// code path with the closed-form moment tables it certifies. Small systems
// only (<= 3 modes); correctness over speed throughout.
namespace speckleq::oracle {

/// Single-mode state in a truncated number basis. Pure states carry
/// amplitudes over occupations 0..cutoff-1; thermal states carry diagonal
/// mixture weights instead. tail is the probability mass lost to
/// truncation (norm lies in [1 - tail, 1]; never renormalized).
struct TruncatedState {
  std::vector<std::complex<double>> amplitudes;
  std::vector<double> weights;
  int cutoff = 0;
  double tail = 0.0;

  bool is_mixture() const { return !weights.empty(); }
};

/// Builds the truncated representation, raising the cutoff beyond the
/// request if needed to push the truncation tail below 1e-12 (error if
/// that is unachievable at the hard maximum of 256).
TruncatedState build_state(const ModeState& state, int cutoff);

/// One ladder operator in an operator word: a_mode or a^dag_mode.
struct OpLetter {
  int mode;
  bool dagger;
};

/// <psi| word |psi> evaluated by applying the letters right-to-left on the
/// joint product tensor of the given modes (thermal mixtures expand into
/// weighted sums over number states). Creation operators get index
/// headroom instead of silent truncation; overflowing it raises.
std::complex<double> oracle_expectation(std::span<const TruncatedState> states,
                                        std::span<const OpLetter> word);

struct OutputStatistics {
  double mean_alpha;
  double mean_beta;
  double coincidence;
  double var_x_minus;  // Var(X_alpha - X_beta)
  double var_y_plus;   // Var(Y_alpha + Y_beta)
};

/// Expands the output operators a_out = sum_i t_oi a_i into input-mode
/// words and evaluates every term with oracle_expectation. Quadrature
/// variances add the explicit vacuum-completion constant 1 (the full
/// unitary's commutator [c, c^dag] = 2 over all channels, occupied or
/// not). Accepts <= 3 occupied ports.
OutputStatistics oracle_output_statistics(const TransmissionMatrix& t, const ProductInput& input,
                                          int alpha, int beta, int cutoff = 20);

}  // namespace speckleq::oracle

#endif  // SPECKLEQ_FOCKORACLE_HPP

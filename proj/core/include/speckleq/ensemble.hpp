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

#ifndef SPECKLEQ_ENSEMBLE_HPP
#define SPECKLEQ_ENSEMBLE_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "speckleq/network.hpp"
#include "speckleq/states.hpp"

namespace speckleq {

/// Ensemble-averaged coincidence split by surviving contraction pattern.
/// same_port_intensity collects the single-port ladder terms (weight
/// C1+C2); cross_port_intensity the distinct-port intensity terms (weight
/// C1); cross_port_interference the distinct-port quantum-interference
/// terms (weight C2).
struct DiagramBreakdown {
  double same_port_intensity;
  double cross_port_intensity;
  double cross_port_interference;
  double total;
};

/// Averaged <n_a n_b> for alpha != beta: contracts the quadruple sum of
/// fourth transmission moments with mean tau^2 (C1 d_il d_jk + C2 d_ik d_jl)
/// and the input moments <a^dag_i a^dag_j a_k a_l>.
DiagramBreakdown averaged_coincidence_contraction(const ProductInput& input, double c1, double c2,
                                                  double tau);

/// Averaged <n_a><n_b> for alpha != beta, from the same contraction rules
/// applied to each factor's second moments:
/// tau^2 [C1 (sum_i <n_i>)^2 + C2 sum_ij <a^dag_i a_j><a^dag_j a_i>].
/// Evaluated through joint_normal_moment, independently of the closed form
/// in averaged_c2, so the two routes cross-check each other.
double averaged_intensity_product(const ProductInput& input, double c1, double c2, double tau);

/// Ensemble-averaged photon correlation (closed form):
///   (C1+C2) [S1^2 + sum_i (Var n_i - <n_i>)]
///   -------------------------------------------------------  -  1
///   C1 S1^2 + C2 [sum_i <n_i>^2 + 2 sum_{i<j} |<a_i><a_j>|^2]
/// with S1 = sum_i <n_i>. tau cancels in the ratio.
double averaged_c2(const ProductInput& input, double c1, double c2);

/// Ensemble-averaged entanglement witness (closed form):
///   1 + 4 tau sum_i nu_i + 4 tau^2 [C1 (sum_i nu_i)^2 + C2 sum_i nu_i^2]
/// with nu_i = <n_i> - |<a_i>|^2 the centered photon excess. The C2 double
/// sum has no off-diagonal part for product inputs (<a^dag_i a_j>
/// factorizes into the mean amplitudes it is centered on).
double averaged_qvp(const ProductInput& input, double tau, double c1, double c2);

struct EnsembleCurvePoint {
  double s;
  double c1;
  double c2;
  double g;
  double tau;  // g / N^2
  double cbar;
  double log10_qvp_bar;
};

/// Closed-form curves over an s grid: per point, query the model, set
/// tau = g/N^2, evaluate averaged_c2 and log10(averaged_qvp). All s values
/// are validated against the model domain up front; the error names every
/// offending s.
std::vector<EnsembleCurvePoint> sweep(const ProductInput& input, const CorrelationModel& model,
                                      int n_modes, std::span<const double> s_values);

/// CSV with header "s,C1,C2,g,tau,cbar,log10_qvp_bar", one row per point,
/// preceded by "# key: value" comment lines (may be empty).
void write_sweep_csv(std::ostream& out, std::span<const EnsembleCurvePoint> points,
                     std::span<const std::string> comments);

enum class McStatistic {
  c2,
  qvp,
};

std::string mc_statistic_name(McStatistic statistic);

/// Diffusive sampler parameters for the MC harness. The statistic reads
/// output rows 0 and 1 only, so outputs = 2 samples exactly the block the
/// estimator consumes; i.i.d. entries make any larger block equivalent.
struct DiffusiveSamplerSpec {
  int outputs = 2;
  int inputs = 0;
  double tau = 0.0;
};

struct McResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t realizations = 0;
  std::int64_t degenerate = 0;
  std::uint64_t seed = 0;
  double closed_form = 0.0;  // matching (C1,C2)=(1,0) prediction
  double z_score = 0.0;      // (mean - closed_form) / std_error; 0 when both agree exactly
};

/// Monte Carlo average of the chosen statistic over fresh diffusive
/// realizations at the fixed output pair (0, 1), with per-realization RNG
/// substreams derived from master_seed.
///
/// The c2 statistic is a ratio of ensemble averages, so the estimator
/// averages coincidence and intensity product separately and divides once;
/// its standard error comes from the delta method for the ratio.
/// Degenerate realizations (an output with no light) are counted and
/// excluded from numerator and denominator symmetrically.
///
/// Results are identical for any worker count: realization r writes only
/// slot r, and reductions are ordered pairwise sums.
McResult monte_carlo_average(const ProductInput& input, const DiffusiveSamplerSpec& sampler,
                             McStatistic statistic, std::int64_t realizations,
                             std::uint64_t master_seed, int workers = 1);

}  // namespace speckleq

#endif  // SPECKLEQ_ENSEMBLE_HPP

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

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "speckleq/correlators.hpp"
#include "speckleq/errors.hpp"
#include "speckleq/format.hpp"
#include "speckleq/rng.hpp"

namespace speckleq {

namespace {

constexpr double kZeroIntensity = 1e-300;

void check_weights(double c1, double c2, const char* who) {
  if (!std::isfinite(c1) || !std::isfinite(c2)) {
    throw std::invalid_argument(std::string(who) + ": C1 and C2 must be finite");
  }
}

double sum_mean_photons(const ProductInput& input) {
  double acc = 0.0;
  for (int port : input.occupied_ports()) {
    acc += normal_moment(input.state(port), 1, 1).real();
  }
  return acc;
}

}  // namespace

DiagramBreakdown averaged_coincidence_contraction(const ProductInput& input, double c1, double c2,
                                                  double tau) {
  check_weights(c1, c2, "averaged_coincidence_contraction");
  if (c1 < 0.0 || c2 < 0.0) {
    throw std::invalid_argument("averaged_coincidence_contraction: C1 and C2 must be >= 0");
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("averaged_coincidence_contraction: tau must be finite and >= 0");
  }
  const std::vector<int>& occ = input.occupied_ports();
  // Same-port (i=j) terms: both delta patterns collapse onto the ladder
  // moment <a^dag^2 a^2>_i, so the weight is C1+C2.
  double same = 0.0;
  for (int i : occ) {
    const int dag[] = {i, i};
    const int pl[] = {i, i};
    same += joint_normal_moment(input, dag, pl).real();
  }
  // Distinct-port terms: the (i=l, j=k) pattern carries C1, the
  // (i=k, j=l) pattern carries C2. The plain operators commute, so both
  // read the same input moment; only the bookkeeping differs.
  double cross_intensity_moment = 0.0;
  double cross_interference_moment = 0.0;
  for (int i : occ) {
    for (int j : occ) {
      if (i == j) continue;
      const int dag[] = {i, j};
      const int pl_c1[] = {j, i};
      const int pl_c2[] = {i, j};
      cross_intensity_moment += joint_normal_moment(input, dag, pl_c1).real();
      cross_interference_moment += joint_normal_moment(input, dag, pl_c2).real();
    }
  }
  const double tau2 = tau * tau;
  DiagramBreakdown out;
  out.same_port_intensity = tau2 * (c1 + c2) * same;
  out.cross_port_intensity = tau2 * c1 * cross_intensity_moment;
  out.cross_port_interference = tau2 * c2 * cross_interference_moment;
  out.total = out.same_port_intensity + out.cross_port_intensity + out.cross_port_interference;
  return out;
}

double averaged_intensity_product(const ProductInput& input, double c1, double c2, double tau) {
  check_weights(c1, c2, "averaged_intensity_product");
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("averaged_intensity_product: tau must be finite and >= 0");
  }
  const std::vector<int>& occ = input.occupied_ports();
  // First-moment contraction mean[t*_ai t_aj] = tau d_ij applied to the
  // product of two intensities: C1 pairs each factor with itself (S1^2),
  // C2 swaps the pairings (sum_ij <a^dag_i a_j><a^dag_j a_i>).
  std::complex<double> s1{0.0, 0.0};
  std::complex<double> swapped{0.0, 0.0};
  for (int i : occ) {
    const int dag[] = {i};
    const int pl[] = {i};
    s1 += joint_normal_moment(input, dag, pl);
  }
  for (int i : occ) {
    for (int j : occ) {
      const int dag_ij[] = {i};
      const int pl_ij[] = {j};
      const int dag_ji[] = {j};
      const int pl_ji[] = {i};
      swapped += joint_normal_moment(input, dag_ij, pl_ij) *
                 joint_normal_moment(input, dag_ji, pl_ji);
    }
  }
  return tau * tau * (c1 * s1.real() * s1.real() + c2 * swapped.real());
}

double averaged_c2(const ProductInput& input, double c1, double c2) {
  check_weights(c1, c2, "averaged_c2");
  double s1 = 0.0;
  double excess = 0.0;        // sum_i (Var n_i - <n_i>)
  double mean_sq = 0.0;       // sum_i <n_i>^2
  double amp_cross = 0.0;     // 2 sum_{i<j} |<a_i><a_j>|^2
  const std::vector<int>& occ = input.occupied_ports();
  std::vector<double> amp_norms;
  amp_norms.reserve(occ.size());
  for (int port : occ) {
    const ModeState& state = input.state(port);
    const PhotonStats stats = photon_stats(state);
    s1 += stats.mean;
    excess += stats.variance - stats.mean;
    mean_sq += stats.mean * stats.mean;
    amp_norms.push_back(std::norm(mean_amplitude(state)));
  }
  for (std::size_t i = 0; i < amp_norms.size(); ++i) {
    for (std::size_t j = i + 1; j < amp_norms.size(); ++j) {
      amp_cross += 2.0 * amp_norms[i] * amp_norms[j];
    }
  }
  const double numerator = (c1 + c2) * (s1 * s1 + excess);
  const double denominator = c1 * s1 * s1 + c2 * (mean_sq + amp_cross);
  if (!(denominator > 0.0)) {
    throw UndefinedCorrelationError(
        "averaged_c2: nonpositive mean intensity product (no photons, or C1=C2=0)");
  }
  return numerator / denominator - 1.0;
}

double averaged_qvp(const ProductInput& input, double tau, double c1, double c2) {
  check_weights(c1, c2, "averaged_qvp");
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("averaged_qvp: tau must be finite and > 0");
  }
  // nu_i = <n_i> - |<a_i>|^2. The C2 double sum over centered <a^dag_i a_j>
  // has no off-diagonal part for product inputs, leaving sum_i nu_i^2.
  double nu_total = 0.0;
  double nu_sq = 0.0;
  for (int port : input.occupied_ports()) {
    const ModeState& state = input.state(port);
    const double nu =
        normal_moment(state, 1, 1).real() - std::norm(mean_amplitude(state));
    nu_total += nu;
    nu_sq += nu * nu;
  }
  return 1.0 + 4.0 * tau * nu_total + 4.0 * tau * tau * (c1 * nu_total * nu_total + c2 * nu_sq);
}

std::vector<EnsembleCurvePoint> sweep(const ProductInput& input, const CorrelationModel& model,
                                      int n_modes, std::span<const double> s_values) {
  if (n_modes < 1) throw std::invalid_argument("sweep: n_modes must be >= 1");
  std::string bad;
  for (double s : s_values) {
    try {
      model.at(s);
    } catch (const std::domain_error&) {
      if (!bad.empty()) bad += ", ";
      bad += format_double(s);
    }
  }
  if (!bad.empty()) {
    throw std::domain_error("sweep: s values outside model domain: " + bad);
  }
  std::vector<EnsembleCurvePoint> points;
  points.reserve(s_values.size());
  const double n_sq = static_cast<double>(n_modes) * static_cast<double>(n_modes);
  for (double s : s_values) {
    const CorrelationValues cv = model.at(s);
    EnsembleCurvePoint point;
    point.s = s;
    point.c1 = cv.c1;
    point.c2 = cv.c2;
    point.g = cv.g;
    point.tau = cv.g / n_sq;
    point.cbar = averaged_c2(input, cv.c1, cv.c2);
    point.log10_qvp_bar = std::log10(averaged_qvp(input, point.tau, cv.c1, cv.c2));
    points.push_back(point);
  }
  return points;
}

void write_sweep_csv(std::ostream& out, std::span<const EnsembleCurvePoint> points,
                     std::span<const std::string> comments) {
  for (const std::string& line : comments) {
    out << "# " << line << "\n";
  }
  out << "s,C1,C2,g,tau,cbar,log10_qvp_bar\n";
  for (const EnsembleCurvePoint& p : points) {
    out << format_double(p.s) << "," << format_double(p.c1) << "," << format_double(p.c2) << ","
        << format_double(p.g) << "," << format_double(p.tau) << "," << format_double(p.cbar)
        << "," << format_double(p.log10_qvp_bar) << "\n";
  }
}

std::string mc_statistic_name(McStatistic statistic) {
  switch (statistic) {
    case McStatistic::c2:
      return "c2";
    case McStatistic::qvp:
      return "qvp";
  }
  throw std::invalid_argument("mc_statistic_name: unknown statistic");
}

McResult monte_carlo_average(const ProductInput& input, const DiffusiveSamplerSpec& sampler,
                             McStatistic statistic, std::int64_t realizations,
                             std::uint64_t master_seed, int workers) {
  if (realizations < 2) {
    throw std::invalid_argument("monte_carlo_average: need at least 2 realizations");
  }
  if (sampler.outputs < 2) {
    throw std::invalid_argument("monte_carlo_average: sampler needs >= 2 outputs for pair (0,1)");
  }
  if (sampler.inputs < input.total_ports()) {
    throw std::invalid_argument("monte_carlo_average: sampler has fewer inputs than the state");
  }
  const std::size_t n = static_cast<std::size_t>(realizations);
  std::vector<double> num(n, 0.0);
  std::vector<double> den(n, 0.0);
  std::vector<unsigned char> degenerate(n, 0);

  parallel_for(n, workers, [&](std::size_t r) {
    const TransmissionMatrix t = sample_diffusive(sampler.outputs, sampler.inputs, sampler.tau,
                                                  mix_seed(master_seed, r));
    if (statistic == McStatistic::c2) {
      const double mean_a = mean_photon(t, input, 0);
      const double mean_b = mean_photon(t, input, 1);
      if (mean_a < kZeroIntensity || mean_b < kZeroIntensity) {
        degenerate[r] = 1;
        return;
      }
      num[r] = coincidence(t, input, 0, 1);
      den[r] = mean_a * mean_b;
    } else {
      num[r] = qvp(t, input, 0, 1);
    }
  });

  // Sequential compaction over realization index keeps the reduction
  // independent of the worker partitioning.
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(n);
  ys.reserve(n);
  std::int64_t n_degenerate = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (degenerate[r]) {
      ++n_degenerate;
      continue;
    }
    xs.push_back(num[r]);
    if (statistic == McStatistic::c2) ys.push_back(den[r]);
  }
  if (xs.empty()) {
    throw DegenerateEnsembleError(
        "monte_carlo_average: all " + std::to_string(realizations) +
        " realizations degenerate (no light at outputs 0/1); input \"" + input.token() + "\"");
  }
  const double n_valid = static_cast<double>(xs.size());

  McResult result;
  result.realizations = realizations;
  result.degenerate = n_degenerate;
  result.seed = master_seed;

  if (statistic == McStatistic::c2) {
    const double mean_x = pairwise_sum(xs) / n_valid;
    const double mean_y = pairwise_sum(ys) / n_valid;
    const double ratio = mean_x / mean_y;
    result.mean = ratio - 1.0;
    // Delta method for the ratio: Var(X/Y) ~ Var(x - ratio*y) / (n Ybar^2),
    // evaluated on per-realization residuals so it is nonnegative by
    // construction.
    std::vector<double> residual_sq(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double e = (xs[k] - mean_x) - ratio * (ys[k] - mean_y);
      residual_sq[k] = e * e;
    }
    const double var_resid = pairwise_sum(residual_sq) / (n_valid - 1.0);
    result.std_error = std::sqrt(var_resid / n_valid) / std::abs(mean_y);
    result.closed_form = averaged_c2(input, 1.0, 0.0);
  } else {
    const double mean = pairwise_sum(xs) / n_valid;
    result.mean = mean;
    std::vector<double> dev_sq(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double d = xs[k] - mean;
      dev_sq[k] = d * d;
    }
    const double var = pairwise_sum(dev_sq) / (n_valid - 1.0);
    result.std_error = std::sqrt(var / n_valid);
    result.closed_form = averaged_qvp(input, sampler.tau, 1.0, 0.0);
  }

  const double diff = result.mean - result.closed_form;
  if (result.std_error > 0.0) {
    result.z_score = diff / result.std_error;
  } else {
    result.z_score = diff == 0.0 ? 0.0 : std::copysign(
        std::numeric_limits<double>::infinity(), diff);
  }
  return result;
}

}  // namespace speckleq

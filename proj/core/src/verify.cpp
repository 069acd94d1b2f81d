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

#include "speckleq/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <sstream>

#include "speckleq/correlators.hpp"
#include "speckleq/ensemble.hpp"
#include "speckleq/fockoracle.hpp"
#include "speckleq/format.hpp"
#include "speckleq/network.hpp"
#include "speckleq/rng.hpp"
#include "speckleq/states.hpp"

namespace speckleq {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<ModeState> variant_corpus() {
  return {
      ModeState::vacuum(),
      ModeState::fock(0),
      ModeState::fock(1),
      ModeState::fock(2),
      ModeState::fock(3),
      ModeState::coherent({0.5, 0.0}),
      ModeState::coherent({0.3, -0.4}),
      ModeState::squeezed_vacuum(0.15, 0.0),
      ModeState::squeezed_vacuum(0.15, kPi),
      ModeState::squeezed_vacuum(1.0, 2.3),
      ModeState::thermal(0.7),
      ModeState::thermal(2.0),
  };
}

std::vector<ProductInput> input_corpus() {
  std::vector<ProductInput> corpus;
  corpus.push_back(ProductInput(4).set(0, ModeState::fock(2)));
  corpus.push_back(ProductInput(2).set(0, ModeState::fock(1)).set(1, ModeState::fock(1)));
  corpus.push_back(ProductInput(2).set(0, ModeState::fock(3)));
  corpus.push_back(ProductInput(3)
                       .set(0, ModeState::fock(1))
                       .set(1, ModeState::fock(1))
                       .set(2, ModeState::fock(1)));
  corpus.push_back(ProductInput(4)
                       .set(0, ModeState::squeezed_vacuum(0.15, 0.0))
                       .set(1, ModeState::squeezed_vacuum(0.15, kPi)));
  corpus.push_back(ProductInput(2)
                       .set(0, ModeState::coherent({0.3, 0.4}))
                       .set(1, ModeState::coherent({-0.2, 0.1})));
  corpus.push_back(ProductInput(3)
                       .set(0, ModeState::thermal(1.7))
                       .set(1, ModeState::thermal(0.4)));
  corpus.push_back(ProductInput(5)
                       .set(0, ModeState::fock(2))
                       .set(2, ModeState::thermal(0.8))
                       .set(4, ModeState::coherent({0.5, 0.0})));
  corpus.push_back(ProductInput(4)
                       .set(1, ModeState::squeezed_vacuum(0.3, 1.0))
                       .set(3, ModeState::fock(1)));
  corpus.push_back(ProductInput(3)
                       .set(0, ModeState::coherent({1.2, 0.0}))
                       .set(1, ModeState::squeezed_vacuum(0.1, 2.0))
                       .set(2, ModeState::thermal(0.2)));
  corpus.push_back(ProductInput(2).set(0, ModeState::fock(4)).set(1, ModeState::fock(1)));
  corpus.push_back(ProductInput(16).set(7, ModeState::fock(1)));
  return corpus;
}

std::complex<double> oracle_single_moment(const ModeState& state, int p, int q) {
  // Quartic words weight the truncation tail by ~n^2, so the 1e-12 mass floor
  // alone is not enough headroom for r = 1 squeezing; over-converge instead.
  const oracle::TruncatedState trunc = oracle::build_state(state, 192);
  std::vector<oracle::OpLetter> word;
  for (int k = 0; k < p; ++k) word.push_back({0, true});
  for (int k = 0; k < q; ++k) word.push_back({0, false});
  const oracle::TruncatedState states[] = {trunc};
  return oracle::oracle_expectation(states, word);
}

VerifyCheck check_moments_vs_oracle(const VerifyOptions& options) {
  double worst = 0.0;
  std::string worst_at;
  for (const ModeState& state : variant_corpus()) {
    for (int p = 0; p <= 4; ++p) {
      for (int q = 0; p + q <= 4 && q <= 4; ++q) {
        const std::complex<double> impl =
            normal_moment(state, p, q) + std::complex<double>{options.moment_bias, 0.0};
        const std::complex<double> orac = oracle_single_moment(state, p, q);
        const double err = std::abs(impl - orac) / std::max(1.0, std::abs(orac));
        if (err > worst) {
          worst = err;
          worst_at = state.token() + " (p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
        }
      }
    }
  }
  const bool passed = worst < 1e-10;
  return {"moments-vs-oracle", passed,
          "max rel err " + format_double(worst) + (worst_at.empty() ? "" : " at " + worst_at)};
}

VerifyCheck check_correlators_vs_oracle(const VerifyOptions& options) {
  struct Case {
    TransmissionMatrix t;
    ProductInput input;
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  TransmissionMatrix hom;
  hom.t.resize(2, 2);
  hom.t << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
  hom.tau = 0.5;
  hom.sampler = "fixed";
  TransmissionMatrix witness;
  witness.t.resize(2, 2);
  witness.t << inv_sqrt2, inv_sqrt2, -inv_sqrt2, inv_sqrt2;
  witness.tau = 0.5;
  witness.sampler = "fixed";

  std::vector<Case> cases;
  cases.push_back({hom, ProductInput(2).set(0, ModeState::fock(1)).set(1, ModeState::fock(1))});
  cases.push_back({witness, ProductInput(2)
                                .set(0, ModeState::squeezed_vacuum(0.15, 0.0))
                                .set(1, ModeState::squeezed_vacuum(0.15, kPi))});
  cases.push_back({sample_unitary(3, mix_seed(options.seed, 101)),
                   ProductInput(3)
                       .set(0, ModeState::fock(1))
                       .set(1, ModeState::fock(1))
                       .set(2, ModeState::fock(1))});
  cases.push_back({sample_diffusive(3, 3, 0.4, mix_seed(options.seed, 102)),
                   ProductInput(3)
                       .set(0, ModeState::fock(2))
                       .set(1, ModeState::coherent({0.4, -0.3}))
                       .set(2, ModeState::thermal(0.6))});
  cases.push_back({sample_unitary(2, mix_seed(options.seed, 103)),
                   ProductInput(2)
                       .set(0, ModeState::squeezed_vacuum(0.25, 1.2))
                       .set(1, ModeState::coherent({0.2, 0.3}))});

  double worst = 0.0;
  std::string worst_at;
  int case_idx = 0;
  for (const Case& c : cases) {
    const oracle::OutputStatistics stats = oracle::oracle_output_statistics(c.t, c.input, 0, 1);
    const QuadratureVariances vars = quadrature_variances(c.t, c.input, 0, 1);
    const double impl[] = {mean_photon(c.t, c.input, 0), mean_photon(c.t, c.input, 1),
                           coincidence(c.t, c.input, 0, 1), vars.x_minus, vars.y_plus};
    const double orac[] = {stats.mean_alpha, stats.mean_beta, stats.coincidence,
                           stats.var_x_minus, stats.var_y_plus};
    const char* names[] = {"mean_alpha", "mean_beta", "coincidence", "var_x_minus", "var_y_plus"};
    for (int k = 0; k < 5; ++k) {
      const double err = std::abs(impl[k] - orac[k]) / std::max(1.0, std::abs(orac[k]));
      if (err > worst) {
        worst = err;
        worst_at = std::string(names[k]) + " in case " + std::to_string(case_idx);
      }
    }
    ++case_idx;
  }
  const bool passed = worst < 1e-8;
  return {"correlators-vs-oracle", passed,
          "max rel err " + format_double(worst) + (worst_at.empty() ? "" : " at " + worst_at)};
}

VerifyCheck check_closed_form_vs_contraction() {
  const double weight_grid[][2] = {{1.0, 0.0}, {1.0, 0.5}, {1.0, 1.0}, {0.7, 0.3}, {2.0, 0.4}};
  const double tau = 0.013;
  double worst = 0.0;
  std::string worst_at;
  int input_idx = 0;
  for (const ProductInput& input : input_corpus()) {
    for (const auto& w : weight_grid) {
      const double closed = averaged_c2(input, w[0], w[1]);
      const DiagramBreakdown parts = averaged_coincidence_contraction(input, w[0], w[1], tau);
      const double denom = averaged_intensity_product(input, w[0], w[1], tau);
      const double reassembled = parts.total / denom - 1.0;
      const double err = std::abs(closed - reassembled);
      if (err > worst) {
        worst = err;
        worst_at = "input " + std::to_string(input_idx) + " C1=" + format_double(w[0]) +
                   " C2=" + format_double(w[1]);
      }
    }
    ++input_idx;
  }
  const bool passed = worst < 1e-10;
  return {"closed-form-vs-contraction", passed,
          "max abs err " + format_double(worst) + " at " + worst_at};
}

VerifyCheck check_mc_vs_closed_form(const VerifyOptions& options) {
  const ProductInput fock_pair =
      ProductInput(2).set(0, ModeState::fock(1)).set(1, ModeState::fock(1));
  const McResult c2_result =
      monte_carlo_average(fock_pair, {2, 2, 1.0 / 300.0}, McStatistic::c2,
                          options.mc_realizations, options.seed);
  const ProductInput squeezed_pair = ProductInput(2)
                                         .set(0, ModeState::squeezed_vacuum(0.15, 0.0))
                                         .set(1, ModeState::squeezed_vacuum(0.15, kPi));
  const McResult qvp_result =
      monte_carlo_average(squeezed_pair, {2, 2, 1.0 / 300.0}, McStatistic::qvp,
                          options.mc_realizations, options.seed + 1);
  const double worst_z = std::max(std::abs(c2_result.z_score), std::abs(qvp_result.z_score));
  const bool passed = worst_z <= 5.0;
  return {"mc-vs-closed-form", passed,
          "z(c2) = " + format_double(c2_result.z_score) +
              ", z(qvp) = " + format_double(qvp_result.z_score) + " at n = " +
              std::to_string(options.mc_realizations)};
}

VerifyCheck check_covariance_physicality(const VerifyOptions& options) {
  double worst = 0.0;
  int case_idx = 0;
  std::string worst_at;
  for (const ProductInput& input : input_corpus()) {
    const TransmissionMatrix t =
        sample_diffusive(4, input.total_ports(), 0.08, mix_seed(options.seed, 200 + case_idx));
    const SecondMoments moments = propagate_second_moments(t, input);
    const Eigen::MatrixXd cov = covariance_matrix(moments);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (-min_eig > worst) {
      worst = -min_eig;
      worst_at = "input " + std::to_string(case_idx);
    }
    ++case_idx;
  }
  const bool passed = worst < 1e-10;
  return {"covariance-physicality", passed,
          "max negative eigenvalue " + format_double(worst) +
              (worst_at.empty() ? "" : " at " + worst_at)};
}

VerifyCheck check_sampler_moments(const VerifyOptions& options) {
  const double tau = 1.0 / 300.0;
  const TransmissionMatrix t = sample_diffusive(60, 60, tau, mix_seed(options.seed, 300));
  const std::size_t n = static_cast<std::size_t>(t.t.size());
  std::vector<double> i1(n), i2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double intensity = std::norm(t.t.data()[k]);
    i1[k] = intensity;
    i2[k] = intensity * intensity;
  }
  auto zscore = [&](std::span<const double> values, double expected) {
    const double count = static_cast<double>(values.size());
    const double mean = pairwise_sum(values) / count;
    std::vector<double> dev(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double d = values[k] - mean;
      dev[k] = d * d;
    }
    const double se = std::sqrt(pairwise_sum(dev) / (count - 1.0) / count);
    return (mean - expected) / se;
  };
  const double z_mean = zscore(i1, tau);
  const double z_fourth = zscore(i2, 2.0 * tau * tau);
  const bool passed = std::abs(z_mean) <= 5.0 && std::abs(z_fourth) <= 5.0;
  return {"sampler-moments", passed,
          "z(mean |t|^2) = " + format_double(z_mean) +
              ", z(|t|^4) = " + format_double(z_fourth)};
}

}  // namespace

std::vector<VerifyCheck> run_verification(const VerifyOptions& options) {
  std::vector<VerifyCheck> checks;
  checks.push_back(check_moments_vs_oracle(options));
  checks.push_back(check_correlators_vs_oracle(options));
  checks.push_back(check_closed_form_vs_contraction());
  checks.push_back(check_mc_vs_closed_form(options));
  checks.push_back(check_covariance_physicality(options));
  checks.push_back(check_sampler_moments(options));
  return checks;
}

bool all_passed(const std::vector<VerifyCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.passed; });
}

}  // namespace speckleq

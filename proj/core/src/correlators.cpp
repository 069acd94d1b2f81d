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

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "speckleq/format.hpp"
#include "speckleq/rng.hpp"

namespace speckleq {

namespace {

// Nonzero only when both output modes see some light; exponential
// intensities are almost surely positive, so this catches true zeros.
constexpr double kZeroIntensity = 1e-300;

void check_output_index(const TransmissionMatrix& t, int alpha, const char* who) {
  if (alpha < 0 || alpha >= t.outputs()) {
    throw std::out_of_range(std::string(who) + ": output index " + std::to_string(alpha) +
                            " outside [0, " + std::to_string(t.outputs()) + ")");
  }
}

void check_input_width(const TransmissionMatrix& t, const ProductInput& input, const char* who) {
  if (input.total_ports() > t.inputs()) {
    throw std::invalid_argument(std::string(who) + ": input has " +
                                std::to_string(input.total_ports()) + " ports but t has only " +
                                std::to_string(t.inputs()) + " columns");
  }
}

struct PortMoments {
  std::vector<int> ports;
  std::vector<double> nu;                   // <n_i> - |<a_i>|^2
  std::vector<std::complex<double>> m;      // <a_i^2> - <a_i>^2
  std::vector<std::complex<double>> amp;    // <a_i>
};

PortMoments centered_port_moments(const ProductInput& input) {
  PortMoments out;
  for (int port : input.occupied_ports()) {
    const ModeState& state = input.state(port);
    const std::complex<double> amp = mean_amplitude(state);
    const double mean = normal_moment(state, 1, 1).real();
    const std::complex<double> second = normal_moment(state, 0, 2);
    out.ports.push_back(port);
    out.nu.push_back(mean - std::norm(amp));
    out.m.push_back(second - amp * amp);
    out.amp.push_back(amp);
  }
  return out;
}

}  // namespace

double mean_photon(const TransmissionMatrix& t, const ProductInput& input, int alpha) {
  check_output_index(t, alpha, "mean_photon");
  check_input_width(t, input, "mean_photon");
  const std::vector<int>& occ = input.occupied_ports();
  std::complex<double> acc{0.0, 0.0};
  for (int i : occ) {
    for (int j : occ) {
      const int dag[] = {i};
      const int pl[] = {j};
      acc += std::conj(t.t(alpha, i)) * t.t(alpha, j) * joint_normal_moment(input, dag, pl);
    }
  }
  return acc.real();
}

double coincidence(const TransmissionMatrix& t, const ProductInput& input, int alpha, int beta) {
  check_output_index(t, alpha, "coincidence");
  check_output_index(t, beta, "coincidence");
  check_input_width(t, input, "coincidence");
  if (alpha == beta) {
    throw std::invalid_argument(
        "coincidence: alpha == beta (same-mode autocorrelation not supported)");
  }
  const std::vector<int>& occ = input.occupied_ports();
  std::complex<double> acc{0.0, 0.0};
  for (int i : occ) {
    for (int j : occ) {
      for (int k : occ) {
        for (int l : occ) {
          const int dag[] = {i, j};
          const int pl[] = {k, l};
          const std::complex<double> moment = joint_normal_moment(input, dag, pl);
          if (moment == std::complex<double>{0.0, 0.0}) continue;
          acc += std::conj(t.t(alpha, i)) * std::conj(t.t(beta, j)) * t.t(beta, k) *
                 t.t(alpha, l) * moment;
        }
      }
    }
  }
  return acc.real();
}

double photon_correlation(const TransmissionMatrix& t, const ProductInput& input, int alpha,
                          int beta) {
  const double mean_a = mean_photon(t, input, alpha);
  const double mean_b = mean_photon(t, input, beta);
  if (mean_a < kZeroIntensity || mean_b < kZeroIntensity) {
    throw UndefinedCorrelationError("photon_correlation: no light at output " +
                                    std::to_string(mean_a < kZeroIntensity ? alpha : beta));
  }
  return coincidence(t, input, alpha, beta) / (mean_a * mean_b) - 1.0;
}

SecondMoments propagate_second_moments(const TransmissionMatrix& t, const ProductInput& input) {
  check_input_width(t, input, "propagate_second_moments");
  const PortMoments pm = centered_port_moments(input);
  const Eigen::Index m_out = t.outputs();
  const Eigen::Index k = static_cast<Eigen::Index>(pm.ports.size());
  SecondMoments out;
  if (k == 0) {
    out.a = Eigen::MatrixXcd::Zero(m_out, m_out);
    out.b = Eigen::MatrixXcd::Zero(m_out, m_out);
    out.mean = Eigen::VectorXcd::Zero(m_out);
    return out;
  }
  Eigen::MatrixXcd t_occ(m_out, k);
  for (Eigen::Index c = 0; c < k; ++c) t_occ.col(c) = t.t.col(pm.ports[c]);
  const Eigen::VectorXd nu = Eigen::Map<const Eigen::VectorXd>(pm.nu.data(), k);
  const Eigen::VectorXcd m_vec = Eigen::Map<const Eigen::VectorXcd>(pm.m.data(), k);
  const Eigen::VectorXcd amp = Eigen::Map<const Eigen::VectorXcd>(pm.amp.data(), k);
  out.a = t_occ.conjugate() * nu.asDiagonal() * t_occ.transpose();
  out.b = t_occ * m_vec.asDiagonal() * t_occ.transpose();
  out.mean = t_occ * amp;
  return out;
}

Eigen::MatrixXd covariance_matrix(const SecondMoments& moments) {
  const Eigen::Index m = moments.a.rows();
  const Eigen::MatrixXd re_a = moments.a.real();
  const Eigen::MatrixXd im_a = moments.a.imag();
  const Eigen::MatrixXd re_b = moments.b.real();
  const Eigen::MatrixXd im_b = moments.b.imag();
  const Eigen::MatrixXd half = 0.5 * Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd cov(2 * m, 2 * m);
  // Cov(X_a, X_b) = Re A + Re B + d_ab/2; Cov(Y_a, Y_b) = Re A - Re B + d_ab/2;
  // symmetrized Cov(X_a, Y_b) = Im A + Im B.
  cov.topLeftCorner(m, m) = half + re_a + re_b;
  cov.bottomRightCorner(m, m) = half + re_a - re_b;
  cov.topRightCorner(m, m) = im_a + im_b;
  cov.bottomLeftCorner(m, m) = cov.topRightCorner(m, m).transpose();
  return cov;
}

QuadratureVariances quadrature_variances(const TransmissionMatrix& t, const ProductInput& input,
                                         int alpha, int beta) {
  check_output_index(t, alpha, "quadrature_variances");
  check_output_index(t, beta, "quadrature_variances");
  check_input_width(t, input, "quadrature_variances");
  if (alpha == beta) {
    throw std::invalid_argument("quadrature_variances: alpha == beta");
  }
  // Pair-restricted second moments; identical to reading the (alpha, beta)
  // entries of propagate_second_moments but O(occupied) instead of O(M^2).
  const PortMoments pm = centered_port_moments(input);
  std::complex<double> a_aa{}, a_bb{}, a_ab{}, b_aa{}, b_bb{}, b_ab{};
  for (std::size_t idx = 0; idx < pm.ports.size(); ++idx) {
    const int i = pm.ports[idx];
    const std::complex<double> ta = t.t(alpha, i);
    const std::complex<double> tb = t.t(beta, i);
    a_aa += std::conj(ta) * ta * pm.nu[idx];
    a_bb += std::conj(tb) * tb * pm.nu[idx];
    a_ab += std::conj(ta) * tb * pm.nu[idx];
    b_aa += ta * ta * pm.m[idx];
    b_bb += tb * tb * pm.m[idx];
    b_ab += ta * tb * pm.m[idx];
  }
  const double a_sum = a_aa.real() + a_bb.real();
  QuadratureVariances out;
  out.x_minus = 1.0 + a_sum - 2.0 * a_ab.real() + (b_aa + b_bb - 2.0 * b_ab).real();
  out.y_plus = 1.0 + a_sum + 2.0 * a_ab.real() - (b_aa + b_bb + 2.0 * b_ab).real();
  return out;
}

double qvp(const TransmissionMatrix& t, const ProductInput& input, int alpha, int beta) {
  const QuadratureVariances v = quadrature_variances(t, input, alpha, beta);
  return v.x_minus * v.y_plus;
}

std::string grid_kind_name(GridKind kind) {
  switch (kind) {
    case GridKind::photon_correlation:
      return "photon_correlation";
    case GridKind::log10_qvp:
      return "log10_qvp";
  }
  throw std::invalid_argument("grid_kind_name: unknown kind");
}

double ObservableGrid::value_at_mode(int mode) const {
  const int c = cols();
  if (c == 0 || mode < 0 || mode >= rows() * c) {
    throw std::out_of_range("ObservableGrid::value_at_mode: index " + std::to_string(mode));
  }
  return values(mode / c, mode % c);
}

int ObservableGrid::cells_below(double threshold) const {
  int count = 0;
  for (int ky = 0; ky < rows(); ++ky) {
    for (int kx = 0; kx < cols(); ++kx) {
      const double v = values(ky, kx);
      if (!std::isnan(v) && v < threshold) ++count;
    }
  }
  return count;
}

void ObservableGrid::write_csv(std::ostream& out) const {
  out << "# kind: " << grid_kind_name(kind) << "\n";
  out << "# reference_mode: " << reference_mode << "\n";
  out << "# seed: " << seed << "\n";
  out << "# tau: " << format_double(tau) << "\n";
  out << "# sampler: " << sampler << "\n";
  out << "# input: " << input_token << "\n";
  out << "kx,ky,value\n";
  for (int mode = 0; mode < rows() * cols(); ++mode) {
    const int kx = mode % cols();
    const int ky = mode / cols();
    out << kx << "," << ky << "," << format_double(values(ky, kx)) << "\n";
  }
}

ObservableGrid speckle_map(const TransmissionMatrix& t, const ProductInput& input, GridKind kind,
                           int reference_mode, int rows, int cols, int workers) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("speckle_map: grid dimensions must be >= 1");
  }
  const int n_cells = rows * cols;
  if (t.outputs() < n_cells) {
    throw std::invalid_argument("speckle_map: grid needs " + std::to_string(n_cells) +
                                " output modes but t has " + std::to_string(t.outputs()));
  }
  if (reference_mode < 0 || reference_mode >= n_cells) {
    throw std::out_of_range("speckle_map: reference_mode " + std::to_string(reference_mode) +
                            " outside [0, " + std::to_string(n_cells) + ")");
  }
  ObservableGrid grid;
  grid.values.setConstant(rows, cols, std::numeric_limits<double>::quiet_NaN());
  grid.kind = kind;
  grid.reference_mode = reference_mode;
  grid.seed = t.seed;
  grid.tau = t.tau;
  grid.sampler = t.sampler;
  grid.input_token = input.token();

  std::vector<double> cell_values(static_cast<std::size_t>(n_cells), 0.0);
  parallel_for(static_cast<std::size_t>(n_cells), workers, [&](std::size_t idx) {
    const int beta = static_cast<int>(idx);
    if (beta == reference_mode) return;
    if (kind == GridKind::photon_correlation) {
      cell_values[idx] = photon_correlation(t, input, reference_mode, beta);
    } else {
      cell_values[idx] = std::log10(qvp(t, input, reference_mode, beta));
    }
  });
  for (int mode = 0; mode < n_cells; ++mode) {
    if (mode == reference_mode) continue;
    grid.values(mode / cols, mode % cols) = cell_values[static_cast<std::size_t>(mode)];
  }
  return grid;
}

}  // namespace speckleq

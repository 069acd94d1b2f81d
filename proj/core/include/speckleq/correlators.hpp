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

#ifndef SPECKLEQ_CORRELATORS_HPP
#define SPECKLEQ_CORRELATORS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "speckleq/network.hpp"
#include "speckleq/states.hpp"

namespace speckleq {

/// Mean photon number <n_alpha> = sum_ij t*_ai t_aj <a^dag_i a_j>.
double mean_photon(const TransmissionMatrix& t, const ProductInput& input, int alpha);

/// Two-channel coincidence <a^dag_a a^dag_b a_b a_a> for alpha != beta,
/// via the quadruple sum over occupied input ports.
double coincidence(const TransmissionMatrix& t, const ProductInput& input, int alpha, int beta);

/// C_ab = coincidence / (<n_a><n_b>) - 1. Raises UndefinedCorrelationError
/// when either output carries no light.
double photon_correlation(const TransmissionMatrix& t, const ProductInput& input, int alpha,
                          int beta);

/// Centered second moments of the output mode operators.
/// A is Hermitian with nonnegative diagonal, B symmetric.
struct SecondMoments {
  Eigen::MatrixXcd a;     // A_ab = <a^dag_a a_b> - <a^dag_a><a_b>
  Eigen::MatrixXcd b;     // B_ab = <a_a a_b> - <a_a><a_b>
  Eigen::VectorXcd mean;  // <a_a>
};

/// Propagates the per-port centered moments through t. Unoccupied ports
/// drop out here; their vacuum shows up only as the constant term in qvp.
SecondMoments propagate_second_moments(const TransmissionMatrix& t, const ProductInput& input);

/// Real 2M x 2M covariance matrix in (X_1..X_M, Y_1..Y_M) ordering with
/// vacuum variance 1/2 on the diagonal. Physical states make this positive
/// semidefinite, which the test suite checks to -1e-10.
Eigen::MatrixXd covariance_matrix(const SecondMoments& moments);

struct QuadratureVariances {
  double x_minus;  // Var(X_a - X_b)
  double y_plus;   // Var(Y_a + Y_b)
};

/// The two variances entering the witness. The leading 1 in each is the
/// vacuum completion: the two modes' intrinsic 1/2 + 1/2 vacuum variances,
/// which also absorbs every unoccupied port of the full unitary.
QuadratureVariances quadrature_variances(const TransmissionMatrix& t, const ProductInput& input,
                                         int alpha, int beta);

/// Entanglement witness epsilon_ab = Var(X_a - X_b) * Var(Y_a + Y_b);
/// values below 1 witness inseparability of the output pair.
double qvp(const TransmissionMatrix& t, const ProductInput& input, int alpha, int beta);

enum class GridKind {
  photon_correlation,
  log10_qvp,
};

std::string grid_kind_name(GridKind kind);

/// Scalar observable over output modes arranged on a (kx, ky) grid, with
/// the provenance needed to reproduce it. Output index maps row-major:
/// index = ky * cols + kx. The reference cell holds NaN.
struct ObservableGrid {
  Eigen::MatrixXd values;  // rows = ky, cols = kx
  GridKind kind = GridKind::photon_correlation;
  int reference_mode = 0;
  std::uint64_t seed = 0;
  double tau = 0.0;
  std::string sampler;
  std::string input_token;

  int rows() const { return static_cast<int>(values.rows()); }
  int cols() const { return static_cast<int>(values.cols()); }
  double value_at_mode(int mode) const;
  /// Cells strictly below `threshold` (the reference NaN never counts).
  int cells_below(double threshold) const;

  /// CSV with header "kx,ky,value" in output-index scan order, preceded by
  /// "# key: value" provenance comments.
  void write_csv(std::ostream& out) const;
};

/// Fixed-alpha slice of the observable against every other output mode.
/// Requires t.outputs() >= rows*cols; cells evaluate independently, so the
/// result is identical for any worker count.
ObservableGrid speckle_map(const TransmissionMatrix& t, const ProductInput& input, GridKind kind,
                           int reference_mode, int rows, int cols, int workers = 1);

}  // namespace speckleq

#endif  // SPECKLEQ_CORRELATORS_HPP

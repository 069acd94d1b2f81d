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

#ifndef SPECKLEQ_NETWORK_HPP
#define SPECKLEQ_NETWORK_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace speckleq {

/// One realization of the linear network t, rows indexing output ports and
/// columns input ports, with the mean single-channel transmission tau it
/// was sampled at and the provenance needed to reproduce it.
struct TransmissionMatrix {
  Eigen::MatrixXcd t;
  double tau = 0.0;
  std::string sampler;  // "diffusive" or "unitary"
  std::uint64_t seed = 0;

  Eigen::Index outputs() const { return t.rows(); }
  Eigen::Index inputs() const { return t.cols(); }
};

/// Deep-multiple-scattering sampler: entries are i.i.d. with |t|^2
/// exponentially distributed (mean tau) and phase uniform on [0, 2*pi).
/// Identical seeds give identical matrices.
TransmissionMatrix sample_diffusive(int outputs, int inputs, double tau, std::uint64_t seed);

/// Haar-random n x n unitary (complex Ginibre matrix, QR decomposition,
/// R-diagonal phases absorbed into Q). tau is recorded as 1/n, the mean
/// squared modulus of any entry. Identical seeds give identical matrices.
TransmissionMatrix sample_unitary(int n, std::uint64_t seed);

/// Ensemble inputs at one disorder strength s = L / l_t.
struct CorrelationValues {
  double c1;
  double c2;
  double g;
};

/// Map s -> (C1, C2, g). Either the built-in analytic family
///   g(s) = N / (1 + s),  C1 = 1,  C2 = min(C1, (2 / (3 g)) max(0, 1 - 2/s))
/// or a table loaded from CSV ("s,C1,C2,g" header, strictly increasing s,
/// at least two rows) interpolated linearly with no extrapolation.
class CorrelationModel {
 public:
  struct Row {
    double s, c1, c2, g;
  };

  static CorrelationModel analytic(int n_modes);
  static CorrelationModel tabulated(std::vector<Row> rows);
  static CorrelationModel load_csv(std::istream& in);
  static CorrelationModel load_csv_file(const std::string& path);

  /// Values at s. Analytic domain is s > 0; tabulated domain is
  /// [s_front, s_back]. Outside either: std::domain_error.
  CorrelationValues at(double s) const;

  bool is_analytic() const { return rows_.empty(); }
  int n_modes() const { return n_modes_; }
  const std::vector<Row>& rows() const { return rows_; }

 private:
  CorrelationModel() = default;
  int n_modes_ = 0;          // analytic only
  std::vector<Row> rows_;    // tabulated only
};

/// Convenience free-function form of CorrelationModel::at.
CorrelationValues correlation_values(const CorrelationModel& model, double s);

}  // namespace speckleq

#endif  // SPECKLEQ_NETWORK_HPP

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

#include "speckleq/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "speckleq/rng.hpp"

namespace speckleq {

TransmissionMatrix sample_diffusive(int outputs, int inputs, double tau, std::uint64_t seed) {
  if (outputs < 1 || inputs < 1) {
    throw std::invalid_argument("sample_diffusive: dimensions must be >= 1");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("sample_diffusive: tau must be finite and > 0");
  }
  TransmissionMatrix out;
  out.t.resize(outputs, inputs);
  out.tau = tau;
  out.sampler = "diffusive";
  out.seed = seed;
  auto rng = std::mt19937_64(seed);
  for (int r = 0; r < outputs; ++r) {
    for (int c = 0; c < inputs; ++c) {
      const double intensity = tau * exponential1(rng);
      const double phase = 2.0 * std::numbers::pi * uniform01(rng);
      out.t(r, c) = std::polar(std::sqrt(intensity), phase);
    }
  }
  return out;
}

TransmissionMatrix sample_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_unitary: n must be >= 1");
  auto rng = std::mt19937_64(seed);
  Eigen::MatrixXcd ginibre(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      ginibre(r, c) = standard_complex_gaussian(rng);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
  // Haar measure needs the R diagonal normalized to positive reals;
  // absorb each diagonal phase into the matching column of Q.
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r_mat(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  TransmissionMatrix out;
  out.t = std::move(q);
  out.tau = 1.0 / static_cast<double>(n);
  out.sampler = "unitary";
  out.seed = seed;
  return out;
}

CorrelationModel CorrelationModel::analytic(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("CorrelationModel::analytic: n_modes must be >= 1");
  CorrelationModel model;
  model.n_modes_ = n_modes;
  return model;
}

CorrelationModel CorrelationModel::tabulated(std::vector<Row> rows) {
  if (rows.size() < 2) {
    throw std::invalid_argument("CorrelationModel::tabulated: need at least two rows");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    if (!std::isfinite(row.s) || !std::isfinite(row.c1) || !std::isfinite(row.c2) ||
        !std::isfinite(row.g)) {
      throw std::invalid_argument("CorrelationModel::tabulated: non-finite value in row " +
                                  std::to_string(i + 1));
    }
    if (!(row.c1 > 0.0) || !(row.g > 0.0)) {
      throw std::invalid_argument("CorrelationModel::tabulated: C1 and g must be > 0 (row " +
                                  std::to_string(i + 1) + ")");
    }
    if (row.c2 < 0.0) {
      throw std::invalid_argument("CorrelationModel::tabulated: C2 must be >= 0 (row " +
                                  std::to_string(i + 1) + ")");
    }
    if (i > 0 && !(row.s > rows[i - 1].s)) {
      throw std::invalid_argument("CorrelationModel::tabulated: s must be strictly increasing (row " +
                                  std::to_string(i + 1) + ")");
    }
  }
  CorrelationModel model;
  model.rows_ = std::move(rows);
  return model;
}

CorrelationModel CorrelationModel::load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("correlation table: empty input");
  }
  auto strip = [](std::string text) {
    const auto begin = text.find_first_not_of(" \t\r");
    const auto end = text.find_last_not_of(" \t\r");
    return begin == std::string::npos ? std::string{} : text.substr(begin, end - begin + 1);
  };
  if (strip(line) != "s,C1,C2,g") {
    throw std::invalid_argument("correlation table: line 1: expected header \"s,C1,C2,g\"");
  }
  std::vector<Row> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = strip(line);
    if (text.empty()) continue;
    std::istringstream fields(text);
    Row row{};
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(fields >> row.s >> c1 >> row.c1 >> c2 >> row.c2 >> c3 >> row.g) || c1 != ',' ||
        c2 != ',' || c3 != ',' || (fields >> std::ws, !fields.eof())) {
      throw std::invalid_argument("correlation table: line " + std::to_string(line_no) +
                                  ": expected \"s,C1,C2,g\" numeric row, got \"" + text + "\"");
    }
    const std::string where = "correlation table: line " + std::to_string(line_no) + ": ";
    if (!std::isfinite(row.s) || !std::isfinite(row.c1) || !std::isfinite(row.c2) ||
        !std::isfinite(row.g)) {
      throw std::invalid_argument(where + "non-finite value");
    }
    if (!(row.c1 > 0.0) || !(row.g > 0.0)) {
      throw std::invalid_argument(where + "C1 and g must be > 0");
    }
    if (row.c2 < 0.0) {
      throw std::invalid_argument(where + "C2 must be >= 0");
    }
    if (!rows.empty() && !(row.s > rows.back().s)) {
      throw std::invalid_argument(where + "s must be strictly increasing");
    }
    rows.push_back(row);
  }
  try {
    return tabulated(std::move(rows));
  } catch (const std::invalid_argument& err) {
    throw std::invalid_argument("correlation table: " + std::string(err.what()));
  }
}

CorrelationModel CorrelationModel::load_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("correlation table: cannot open \"" + path + "\"");
  }
  return load_csv(in);
}

CorrelationValues CorrelationModel::at(double s) const {
  if (!std::isfinite(s)) throw std::domain_error("correlation_values: s must be finite");
  if (is_analytic()) {
    if (!(s > 0.0)) {
      throw std::domain_error("correlation_values: analytic model requires s > 0, got s=" +
                              std::to_string(s));
    }
    const double g = static_cast<double>(n_modes_) / (1.0 + s);
    const double c1 = 1.0;
    const double c2 = std::min(c1, (2.0 / (3.0 * g)) * std::max(0.0, 1.0 - 2.0 / s));
    return {c1, c2, g};
  }
  if (s < rows_.front().s || s > rows_.back().s) {
    throw std::domain_error("correlation_values: s=" + std::to_string(s) +
                            " outside tabulated range [" + std::to_string(rows_.front().s) + ", " +
                            std::to_string(rows_.back().s) + "]");
  }
  auto upper = std::lower_bound(rows_.begin(), rows_.end(), s,
                                [](const Row& row, double v) { return row.s < v; });
  if (upper->s == s) return {upper->c1, upper->c2, upper->g};
  const Row& hi = *upper;
  const Row& lo = *(upper - 1);
  const double w = (s - lo.s) / (hi.s - lo.s);
  return {lo.c1 + w * (hi.c1 - lo.c1), lo.c2 + w * (hi.c2 - lo.c2), lo.g + w * (hi.g - lo.g)};
}

CorrelationValues correlation_values(const CorrelationModel& model, double s) {
  return model.at(s);
}

}  // namespace speckleq

// Copyright 2026 The riplab Authors.
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

#include "riplab/instruments.hpp"

#include <cmath>
#include <string>

#include "riplab/errors.hpp"

namespace riplab {
namespace {

constexpr double kVectorNormTol = 1e-10;
constexpr double kMatrixNormTol = 1e-9;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw InvalidParameter("alpha must be in (0, 0.5)");
  }
}

// c with c^2 * sum_{j<=count} j^{-2 alpha} = target.
double power_law_constant(int count, double alpha, double target) {
  double sum = 0.0;
  for (int j = count; j >= 1; --j) sum += std::pow(static_cast<double>(j), -2.0 * alpha);
  return std::sqrt(target / sum);
}

}  // namespace

std::string to_string(InstrumentKind kind) {
  switch (kind) {
    case InstrumentKind::kFlat: return "flat";
    case InstrumentKind::kDecayingWindow: return "decaying";
    case InstrumentKind::kScaledIdentityMatrix: return "scaled-identity";
    case InstrumentKind::kSchattenDecayMatrix: return "schatten-decay";
    case InstrumentKind::kCustom: return "custom";
  }
  return "custom";
}

InstrumentKind instrument_kind_from_string(const std::string& name) {
  if (name == "flat") return InstrumentKind::kFlat;
  if (name == "decaying") return InstrumentKind::kDecayingWindow;
  if (name == "scaled-identity") return InstrumentKind::kScaledIdentityMatrix;
  if (name == "schatten-decay") return InstrumentKind::kSchattenDecayMatrix;
  if (name == "custom") return InstrumentKind::kCustom;
  throw InvalidParameter("unknown instrument kind '" + name + "'");
}

Instrument::Instrument(InstrumentKind kind, InstrumentParams params, ComplexVector entries)
    : kind_(kind), params_(params), payload_(std::move(entries)) {
  if (vector().size() < 1) throw InvalidParameter("instrument must have length >= 1");
  if (!vector().allFinite()) throw InvalidParameter("instrument entries must be finite");
}

Instrument::Instrument(InstrumentKind kind, InstrumentParams params, ComplexMatrix entries)
    : kind_(kind), params_(params), payload_(std::move(entries)) {
  const auto& m = matrix();
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw InvalidParameter("matrix instrument must be square with n >= 1");
  }
  if (!m.allFinite()) throw InvalidParameter("instrument entries must be finite");
}

const ComplexVector& Instrument::vector() const {
  if (is_matrix()) throw InvalidParameter("instrument is a matrix");
  return std::get<ComplexVector>(payload_);
}

const ComplexMatrix& Instrument::matrix() const {
  if (!is_matrix()) throw InvalidParameter("instrument is a vector");
  return std::get<ComplexMatrix>(payload_);
}

Eigen::Index Instrument::dimension() const {
  return is_matrix() ? matrix().rows() : vector().size();
}

Eigen::Index Instrument::ambient_dimension() const {
  const auto d = dimension();
  return is_matrix() ? d * d : d;
}

ComplexVector Instrument::flattened() const {
  return is_matrix() ? flatten_row_major(matrix()) : vector();
}

double Instrument::norm(NormIndex q) const {
  return is_matrix() ? schatten_norm(matrix(), q) : lq_norm(vector(), q);
}

ComplexVector flatten_row_major(const ComplexMatrix& a) {
  ComplexVector v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) v[i * a.cols() + j] = a(i, j);
  }
  return v;
}

ComplexMatrix unflatten_row_major(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw InvalidParameter("unflatten: size mismatch");
  ComplexMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = v[i * cols + j];
  }
  return a;
}

Instrument make_flat(int n) {
  if (n < 1) throw InvalidParameter("N must be >= 1");
  return Instrument(InstrumentKind::kFlat, {}, ComplexVector(ComplexVector::Ones(n)));
}

Instrument make_decaying_window(int n, int window_length, double alpha) {
  check_alpha(alpha);
  if (n < 1) throw InvalidParameter("N must be >= 1");
  if (window_length < 1 || window_length > n) {
    throw InvalidParameter("window length must satisfy 1 <= Neta <= N");
  }
  const double c = power_law_constant(window_length, alpha, static_cast<double>(n));
  ComplexVector eta = ComplexVector::Zero(n);
  for (int j = 1; j <= window_length; ++j) {
    eta[j - 1] = c * std::pow(static_cast<double>(j), -alpha);
  }
  InstrumentParams params;
  params.alpha = alpha;
  params.window_length = window_length;
  return Instrument(InstrumentKind::kDecayingWindow, params, std::move(eta));
}

Instrument make_scaled_identity_matrix(int n) {
  if (n < 1) throw InvalidParameter("n must be >= 1");
  ComplexMatrix eta = ComplexMatrix::Identity(n, n) * std::sqrt(static_cast<double>(n));
  return Instrument(InstrumentKind::kScaledIdentityMatrix, {}, std::move(eta));
}

Instrument make_schatten_decay_matrix(int n, double alpha, SeededRng& rng) {
  check_alpha(alpha);
  if (n < 1) throw InvalidParameter("n must be >= 1");
  InstrumentParams params;
  params.alpha = alpha;
  params.seed = rng.seed();
  params.stream = rng.stream();
  const double c = power_law_constant(n, alpha, static_cast<double>(n) * n);
  RealVector s(n);
  for (int j = 1; j <= n; ++j) s[j - 1] = c * std::pow(static_cast<double>(j), -alpha);
  const ComplexMatrix u = haar_unitary(n, rng);
  const ComplexMatrix v = haar_unitary(n, rng);
  ComplexMatrix eta = u * s.cast<Complex>().asDiagonal() * v.adjoint();
  return Instrument(InstrumentKind::kSchattenDecayMatrix, params, std::move(eta));
}

Instrument make_custom(ComplexVector entries, bool rescale) {
  const auto n = entries.size();
  if (n < 1) throw InvalidParameter("instrument must have length >= 1");
  const double target = std::sqrt(static_cast<double>(n));
  const double norm = entries.norm();
  if (rescale) {
    if (norm == 0.0) throw InvalidParameter("cannot rescale a zero instrument");
    entries *= target / norm;
  } else if (std::abs(norm - target) > kVectorNormTol * target) {
    throw InvalidParameter("custom vector instrument must satisfy ||eta||_2 = sqrt(N)");
  }
  return Instrument(InstrumentKind::kCustom, {}, std::move(entries));
}

Instrument make_custom(ComplexMatrix entries, bool rescale) {
  const auto n = entries.rows();
  if (n < 1 || entries.cols() != n) throw InvalidParameter("matrix instrument must be square");
  const double target = static_cast<double>(n);
  const double norm = entries.norm();  // Frobenius = S_2
  if (rescale) {
    if (norm == 0.0) throw InvalidParameter("cannot rescale a zero instrument");
    entries *= target / norm;
  } else if (std::abs(norm - target) > kMatrixNormTol * target) {
    throw InvalidParameter("custom matrix instrument must satisfy ||eta||_{S_2} = n");
  }
  return Instrument(InstrumentKind::kCustom, {}, std::move(entries));
}

}  // namespace riplab

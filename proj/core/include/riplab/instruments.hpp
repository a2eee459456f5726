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

#ifndef RIPLAB_INSTRUMENTS_HPP_
#define RIPLAB_INSTRUMENTS_HPP_

#include <cstdint>
#include <string>
#include <variant>

#include "riplab/numerics.hpp"

namespace riplab {

enum class InstrumentKind {
  kFlat,
  kDecayingWindow,
  kScaledIdentityMatrix,
  kSchattenDecayMatrix,
  kCustom,
};

std::string to_string(InstrumentKind kind);
InstrumentKind instrument_kind_from_string(const std::string& name);

// Construction parameters, kept so an instrument can be described and rebuilt.
struct InstrumentParams {
  double alpha = 0.0;
  int window_length = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// The generator whose group orbit produces every measurement functional.
// Vector instruments have ||eta||_2 = sqrt(N); matrix instruments have
// ||eta||_{S_2} = n.
class Instrument {
 public:
  Instrument(InstrumentKind kind, InstrumentParams params, ComplexVector entries);
  Instrument(InstrumentKind kind, InstrumentParams params, ComplexMatrix entries);

  InstrumentKind kind() const { return kind_; }
  const InstrumentParams& params() const { return params_; }

  bool is_matrix() const { return std::holds_alternative<ComplexMatrix>(payload_); }
  // Requires !is_matrix().
  const ComplexVector& vector() const;
  // Requires is_matrix().
  const ComplexMatrix& matrix() const;

  // N for vectors, n for n x n matrices.
  Eigen::Index dimension() const;
  // Length of the space the instrument acts on: N, or n^2 for matrices.
  Eigen::Index ambient_dimension() const;
  // Entries as one vector; matrices are flattened row-major.
  ComplexVector flattened() const;

  // ||eta||_q for vectors, ||eta||_{S_q} for matrices.
  double norm(NormIndex q) const;

 private:
  InstrumentKind kind_;
  InstrumentParams params_;
  std::variant<ComplexVector, ComplexMatrix> payload_;
};

ComplexVector flatten_row_major(const ComplexMatrix& a);
ComplexMatrix unflatten_row_major(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

// All-ones vector of length n.
Instrument make_flat(int n);

// Entries c * j^{-alpha} for j = 1..window_length stored at indices
// 0..window_length-1 in descending order, zero elsewhere, with c chosen so
// that ||eta||_2 = sqrt(n). Requires 0 < alpha < 1/2 and 1 <= window_length <= n.
Instrument make_decaying_window(int n, int window_length, double alpha);

// sqrt(n) * Id_n.
Instrument make_scaled_identity_matrix(int n);

// U diag(c j^{-alpha}) V^* with Haar-random U, V drawn from rng and
// ||eta||_{S_2} = n.
Instrument make_schatten_decay_matrix(int n, double alpha, SeededRng& rng);

// Wraps a user payload. With rescale the entries are scaled to the required
// normalization; otherwise a mis-normalized payload is rejected.
Instrument make_custom(ComplexVector entries, bool rescale = false);
Instrument make_custom(ComplexMatrix entries, bool rescale = false);

}  // namespace riplab

#endif  // RIPLAB_INSTRUMENTS_HPP_

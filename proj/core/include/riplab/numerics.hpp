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

#ifndef RIPLAB_NUMERICS_HPP_
#define RIPLAB_NUMERICS_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace riplab {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

// Exponent of an l_q or Schatten norm. Infinity is an explicit tag, never a
// large finite number.
class NormIndex {
 public:
  constexpr NormIndex(double q) : q_(q), infinite_(false) {}  // NOLINT implicit

  static constexpr NormIndex infinity() { return NormIndex(); }

  constexpr bool is_infinite() const { return infinite_; }
  // Finite exponent; +inf for the tagged case.
  constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : q_;
  }
  // 1/q, zero for q = inf.
  constexpr double reciprocal() const { return infinite_ ? 0.0 : 1.0 / q_; }

  friend constexpr bool operator==(NormIndex a, NormIndex b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.q_ == b.q_);
  }

 private:
  constexpr NormIndex() : q_(0.0), infinite_(true) {}

  double q_;
  bool infinite_;
};

// (sum |x_j|^q)^{1/q}, or max |x_j| for q = inf. Throws InvalidParameter for q < 1.
double lq_norm(const Eigen::Ref<const ComplexVector>& x, NormIndex q);

// l_q norm of a nonnegative sequence (singular values, moduli).
double lq_norm_of_moduli(const Eigen::Ref<const RealVector>& moduli, NormIndex q);

// Singular values in non-increasing order.
RealVector singular_values(const ComplexMatrix& a);

// l_q norm of the singular-value sequence.
double schatten_norm(const ComplexMatrix& a, NormIndex q);

// Largest singular value.
double operator_norm(const ComplexMatrix& a);

// Smallest and largest eigenvalue of a Hermitian matrix (lower triangle read).
std::pair<double, double> extreme_eigenvalues(const ComplexMatrix& hermitian);

// max |eigenvalue| of a Hermitian matrix; equals operator_norm but cheaper.
double hermitian_operator_norm(const ComplexMatrix& hermitian);

// <u, v> = sum conj(u_j) v_j.
inline Complex inner(const ComplexVector& u, const ComplexVector& v) { return u.dot(v); }

// Deterministic random stream. Identical (seed, stream) pairs give identical
// draws on every host: the engine is mt19937_64 (fully specified by the
// standard) and all distributions are implemented here rather than taken from
// <random>, whose distribution algorithms are implementation-defined.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Independent stream derived from the same seed, e.g. one per trial.
  SeededRng substream(std::uint64_t stream) const { return SeededRng(seed_, stream); }
  // Stream nested under this one: child(i) of stream 0 is stream i, deeper
  // levels hash the parent stream so siblings never overlap.
  SeededRng child(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on {0, ..., n-1}; n >= 1.
  std::uint64_t uniform_int(std::uint64_t n);
  // Standard normal (Box-Muller).
  double normal();
  // Circularly symmetric complex normal with E|z|^2 = 1.
  Complex complex_normal();
  // Uniform on {-1, +1}.
  int rademacher();
  // Uniform unimodular complex number.
  Complex unit_phase();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

// Uniformly random k-subset of {0..n-1}, sorted ascending.
std::vector<int> random_subset(int n, int k, SeededRng& rng);

ComplexVector complex_gaussian_vector(Eigen::Index n, SeededRng& rng);
ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, SeededRng& rng);

// Haar unitary: QR of a complex Gaussian matrix with the phases of diag(R)
// moved into Q.
ComplexMatrix haar_unitary(Eigen::Index n, SeededRng& rng);

// Worker count used by parallel_for. Defaults to hardware concurrency.
void set_thread_count(unsigned threads);
unsigned thread_count();

// Runs body(i) for i in [0, count). Work is split into contiguous blocks; the
// body must only write to index-owned state so results do not depend on the
// schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace riplab

#endif  // RIPLAB_NUMERICS_HPP_

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

#include "riplab/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "riplab/errors.hpp"

namespace riplab {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_exponent(NormIndex q) {
  if (!q.is_infinite() && !(q.value() >= 1.0)) {
    throw InvalidParameter("norm exponent q must satisfy q >= 1 (got " +
                           std::to_string(q.value()) + ")");
  }
}

std::atomic<unsigned> g_threads{0};

}  // namespace

double lq_norm_of_moduli(const Eigen::Ref<const RealVector>& moduli, NormIndex q) {
  check_exponent(q);
  if (moduli.size() == 0) return 0.0;
  const double scale = moduli.cwiseAbs().maxCoeff();
  if (q.is_infinite() || scale == 0.0) return scale;
  const double p = q.value();
  // Scale by the maximum so large exponents do not underflow.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < moduli.size(); ++i) {
    acc += std::pow(std::abs(moduli[i]) / scale, p);
  }
  return scale * std::pow(acc, 1.0 / p);
}

double lq_norm(const Eigen::Ref<const ComplexVector>& x, NormIndex q) {
  check_exponent(q);
  RealVector moduli = x.cwiseAbs();
  return lq_norm_of_moduli(moduli, q);
}

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues();
}

double schatten_norm(const ComplexMatrix& a, NormIndex q) {
  check_exponent(q);
  return lq_norm_of_moduli(singular_values(a), q);
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)[0];
}

std::pair<double, double> extreme_eigenvalues(const ComplexMatrix& hermitian) {
  if (hermitian.rows() != hermitian.cols()) {
    throw InvalidParameter("extreme_eigenvalues: matrix must be square");
  }
  if (hermitian.rows() == 1) {
    const double v = hermitian(0, 0).real();
    return {v, v};
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver failed to converge");
  }
  const auto& ev = es.eigenvalues();
  return {ev[0], ev[ev.size() - 1]};
}

double hermitian_operator_norm(const ComplexMatrix& hermitian) {
  auto [lo, hi] = extreme_eigenvalues(hermitian);
  return std::max(std::abs(lo), std::abs(hi));
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream),
      engine_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))) {}

SeededRng SeededRng::child(std::uint64_t index) const {
  if (stream_ == 0) return SeededRng(seed_, index);
  return SeededRng(seed_, splitmix64(stream_ ^ 0x9e3779b97f4a7c15ULL) + index);
}

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededRng::uniform_int(std::uint64_t n) {
  if (n == 0) throw InvalidParameter("uniform_int: empty range");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

double SeededRng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = radius * std::sin(2.0 * kPi * u2);
  has_cached_normal_ = true;
  return radius * std::cos(2.0 * kPi * u2);
}

Complex SeededRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::sqrt(0.5);
}

int SeededRng::rademacher() { return (engine_() >> 63) ? 1 : -1; }

Complex SeededRng::unit_phase() { return std::polar(1.0, 2.0 * kPi * uniform()); }

std::vector<int> random_subset(int n, int k, SeededRng& rng) {
  if (k < 0 || k > n) throw InvalidParameter("random_subset: need 0 <= k <= n");
  // Partial Fisher-Yates.
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

ComplexVector complex_gaussian_vector(Eigen::Index n, SeededRng& rng) {
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.complex_normal();
  return v;
}

ComplexMatrix complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, SeededRng& rng) {
  ComplexMatrix m(rows, cols);
  // Row-major fill order keeps the draw sequence independent of storage order.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  }
  return m;
}

ComplexMatrix haar_unitary(Eigen::Index n, SeededRng& rng) {
  ComplexMatrix z = complex_gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mod = std::abs(r(j, j));
    const Complex phase = mod > 0.0 ? r(j, j) / mod : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

void set_thread_count(unsigned threads) { g_threads.store(threads); }

unsigned thread_count() {
  const unsigned t = g_threads.load();
  if (t != 0) return t;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace riplab

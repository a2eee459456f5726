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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "riplab/errors.hpp"
#include "riplab/sparsity.hpp"

using namespace riplab;

namespace {

int nonzeros(const ComplexVector& x) {
  int c = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) c += x[i] != Complex(0.0);
  return c;
}

// Direct formula, no shared code with the library.
double f_direct(const ComplexVector& eta, int r, double q) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) acc += std::pow(std::abs(eta[i]), q);
  const double nrm2 = std::pow(acc, 2.0 / q);
  return q * q * q * std::pow(r, 1.0 - 2.0 / q) * nrm2;
}

}  // namespace

TEST_SUITE("sparsity") {
  TEST_CASE("sparsity level examples") {
    ComplexVector e1 = ComplexVector::Zero(8);
    e1[0] = 1.0;
    CHECK(sparsity_level(e1, 1.0) == doctest::Approx(1.0));
    ComplexVector flat = ComplexVector::Zero(8);
    flat.head(5).setConstant(Complex(0.0, 2.0));
    CHECK(sparsity_level(flat, 1.0) == doctest::Approx(5.0));
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 2) = 3.0;
    CHECK(sparsity_level(m, 1.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(sparsity_level(ComplexVector(ComplexVector::Zero(3)), 1.0), InvalidParameter);
  }

  TEST_CASE("s_max") {
    CHECK(s_max(1.0, 16) == doctest::Approx(16.0));
    CHECK(s_max(1.999999, 1000) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(s_max(4.0 / 3.0, 256) == doctest::Approx(16.0));
    // Brute force over flat vectors of every support size.
    double best = 0.0;
    for (int j = 1; j <= 256; ++j) best = std::max(best, std::pow(j, 2.0 / (4.0 / 3.0) - 1.0));
    CHECK(best == doctest::Approx(s_max(4.0 / 3.0, 256)));
    CHECK_THROWS_AS(s_max(2.0, 4), InvalidParameter);
    SeededRng rng(1);
    for (int i = 0; i < 20; ++i) {
      const ComplexVector x = complex_gaussian_vector(12, rng);
      CHECK(sparsity_level(x, 1.3) <= s_max(1.3, 12) + 1e-12);
    }
    CHECK(sparsity_level(ComplexVector(ComplexVector::Ones(12)), 1.3) == doctest::Approx(s_max(1.3, 12)));
  }

  TEST_CASE("model validation") {
    CHECK_THROWS_AS(check_model(Canonical{0}), InvalidParameter);
    CHECK_THROWS_AS(check_model(LqCap{2.0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(check_model(LqCap{0.5, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(check_model(LqCap{1.0, 0.5}), InvalidParameter);
    CHECK_THROWS_AS(check_model(LowRank{0}), InvalidParameter);
    CHECK_THROWS_AS(check_model(TensorRank{1, 0, 2}), InvalidParameter);
    CHECK(describe(Canonical{4}) == "canonical:k=4");
    CHECK(describe(LqCap{1.0, 2.0}).find(',') == std::string::npos);
  }

  TEST_CASE("canonical samples") {
    SeededRng rng(2);
    for (int k : {1, 3, 10}) {
      const ComplexVector x = sample_sparse(Canonical{k}, 10, rng);
      CHECK(nonzeros(x) == k);
      CHECK(std::abs(x.norm() - 1.0) < 1e-12);
      CHECK(sparsity_level(x, 1.0) <= k + 1e-12);
    }
    CHECK_THROWS_AS(sample_sparse(Canonical{11}, 10, rng), InvalidParameter);
  }

  TEST_CASE("lq-cap samples are extremal witnesses") {
    SeededRng rng(3);
    const ComplexVector x = sample_sparse(LqCap{1.0, 4.0}, 32, rng);
    CHECK(lq_norm(x, 1.0) <= 2.0 * x.norm() + 1e-12);
    CHECK(nonzeros(x) == 4);
    CHECK(lqcap_support_size(1.0, 4.5, 32) == 4);
    CHECK(lqcap_support_size(1.0, 100.0, 32) == 32);
    // q = 4/3: j^{1/2} <= s  =>  j <= s^2.
    CHECK(lqcap_support_size(4.0 / 3.0, 3.0, 64) == 9);
  }

  TEST_CASE("low-rank and tensor samples") {
    SeededRng rng(4);
    const ComplexVector x = sample_sparse(LowRank{2}, 25, rng);
    CHECK(std::abs(x.norm() - 1.0) < 1e-12);
    const RealVector s = singular_values(unflatten_row_major(x, 5, 5));
    CHECK(s[2] < 1e-10);
    CHECK(s[1] > 1e-6);
    const ComplexVector t = sample_sparse(TensorRank{1, 3, 2}, 9, rng);
    CHECK(singular_values(unflatten_row_major(t, 3, 3))[1] < 1e-10);
    CHECK_THROWS_AS(sample_sparse(LowRank{2}, 24, rng), InvalidParameter);
    CHECK_THROWS_AS(sample_sparse(TensorRank{1, 3, 3}, 9, rng), InvalidParameter);
  }

  TEST_CASE("projections land in the model") {
    SeededRng rng(5);
    const ComplexVector x = complex_gaussian_vector(16, rng);
    const ComplexVector c = project_to_model(Canonical{3}, x);
    CHECK(nonzeros(c) == 3);
    // Kept entries are the three largest.
    double kept_min = 1e300, dropped_max = 0.0;
    for (int i = 0; i < 16; ++i) {
      if (c[i] != Complex(0.0)) kept_min = std::min(kept_min, std::abs(x[i]));
      else dropped_max = std::max(dropped_max, std::abs(x[i]));
    }
    CHECK(kept_min >= dropped_max);

    const ComplexVector l = project_to_model(LqCap{1.0, 2.5}, x);
    CHECK(sparsity_level(l, 1.0) <= 2.5 + 1e-9);

    const ComplexVector m = complex_gaussian_vector(16, rng);
    const ComplexVector r = project_to_model(LowRank{1}, m);
    CHECK(singular_values(unflatten_row_major(r, 4, 4))[1] < 1e-10);
    // Truncated SVD is the best rank-1 approximation: error equals the tail.
    const RealVector sv = singular_values(unflatten_row_major(m, 4, 4));
    CHECK((m - r).norm() == doctest::Approx(sv.tail(3).norm()).epsilon(1e-10));
  }

  TEST_CASE("sparse pairs") {
    SeededRng rng(6);
    int close = 0;
    for (int i = 0; i < 200; ++i) {
      auto [x, y] = sample_sparse_pair(LqCap{1.0, 2.0}, 16, rng);
      CHECK(std::abs(x.norm() - 1.0) < 1e-12);
      CHECK(std::abs(y.norm() - 1.0) < 1e-12);
      CHECK(sparsity_level(y, 1.0) <= 2.0 + 1e-9);
      CHECK((x - y).norm() > 0.0);
      close += (x - y).norm() < 0.31;
    }
    CHECK(close > 50);
    CHECK_THROWS_AS(sample_sparse_pair(Canonical{2}, 8, rng, 0.0), InvalidParameter);
  }

  TEST_CASE("sp objective matches the direct formula") {
    const Instrument w = make_decaying_window(256, 64, 0.25);
    for (double q : {2.5, 4.0, 17.0}) {
      CHECK(sp_objective(w, 8, q) == doctest::Approx(f_direct(w.vector(), 8, q)).epsilon(1e-12));
    }
    // Infinity entry: cap^3 * r * max|eta|^2.
    const double peak = w.vector().cwiseAbs().maxCoeff();
    CHECK(sp_objective(w, 8, NormIndex::infinity()) == doctest::Approx(std::pow(128.0, 3) * 8 * peak * peak));
    CHECK_THROWS_AS(sp_objective(w, 8, 2.0), InvalidParameter);
    CHECK_THROWS_AS(sp_objective(w, 0, 3.0), InvalidParameter);
    // Matrix instruments use singular values.
    const Instrument id = make_scaled_identity_matrix(3);
    CHECK(sp_objective(id, 1, 4.0) == doctest::Approx(64.0 * std::pow(3.0, 1.0 + 2.0 / 4.0)));
  }

  TEST_CASE("grid") {
    const auto pts = sp_grid_points({});
    CHECK(pts.size() == 201);
    CHECK(pts.front() == doctest::Approx(2.001));
    CHECK(pts[199] == 128.0);
    CHECK(std::isinf(pts.back()));
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i] > pts[i - 1]);
    CHECK_THROWS_AS(sp_grid_points({2.0, 10.0, 5, true}), InvalidParameter);
    CHECK_THROWS_AS(sp_grid_points({3.0, 2.5, 5, true}), InvalidParameter);
  }

  TEST_CASE("optimizer returns the grid minimum with ties to the left") {
    const Instrument flat = make_flat(1024);
    const SpOptResult res = sp_eta_optimize(flat, 16);
    double best = std::numeric_limits<double>::infinity();
    for (double q : res.grid) {
      const double v = std::isinf(q) ? sp_objective(flat, 16, NormIndex::infinity()) : f_direct(flat.vector(), 16, q);
      best = std::min(best, v);
    }
    CHECK(res.value == doctest::Approx(best).epsilon(1e-12));
    for (double v : res.values) CHECK(std::isfinite(v));

    // A single-point grid is its own minimizer.
    const SpOptResult one = sp_eta_optimize(flat, 2, {5.0, 5.0, 1, false});
    CHECK(one.q_opt == 5.0);
  }

  TEST_CASE("flat r=1 curve is increasing for small N") {
    // Holds while N^{2/q'} decays slower than q'^3 grows, i.e. for N up to about 20.
    const SpOptResult res = sp_eta_optimize(make_flat(16), 1);
    // The capped infinity entry sits below f(q'_max) by N^{2/q'_max}; compare finite points only.
    for (std::size_t i = 1; i + 1 < res.values.size(); ++i) CHECK(res.values[i] > res.values[i - 1]);
    CHECK(res.q_opt == doctest::Approx(2.001));
  }
}

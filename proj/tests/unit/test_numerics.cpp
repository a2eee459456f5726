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

#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "riplab/errors.hpp"
#include "riplab/numerics.hpp"

using namespace riplab;

TEST_SUITE("numerics") {
  TEST_CASE("lq norms of a 3-4 vector") {
    ComplexVector x(2);
    x << Complex(0.0, 3.0), Complex(-4.0, 0.0);
    CHECK(lq_norm(x, 2.0) == doctest::Approx(5.0));
    CHECK(lq_norm(x, 1.0) == doctest::Approx(7.0));
    CHECK(lq_norm(x, NormIndex::infinity()) == doctest::Approx(4.0));
    CHECK(lq_norm(x, 3.0) == doctest::Approx(std::cbrt(27.0 + 64.0)));
  }

  TEST_CASE("large exponents do not underflow") {
    RealVector m = RealVector::Constant(10, 1e-200);
    CHECK(lq_norm_of_moduli(m, 400.0) == doctest::Approx(1e-200 * std::pow(10.0, 1.0 / 400.0)));
  }

  TEST_CASE("exponent below one is rejected") {
    ComplexVector x = ComplexVector::Ones(3);
    CHECK_THROWS_AS(lq_norm(x, 0.5), InvalidParameter);
  }

  TEST_CASE("NormIndex infinity") {
    const NormIndex inf = NormIndex::infinity();
    CHECK(inf.is_infinite());
    CHECK(inf.reciprocal() == 0.0);
    CHECK(std::isinf(inf.value()));
    CHECK(NormIndex(2.0).reciprocal() == 0.5);
    CHECK_FALSE(inf == NormIndex(2.0));
  }

  TEST_CASE("singular values and Schatten norms") {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = Complex(0.0, -2.0);
    const RealVector s = singular_values(a);
    CHECK(s[0] == doctest::Approx(3.0));
    CHECK(s[1] == doctest::Approx(2.0));
    CHECK(schatten_norm(a, 1.0) == doctest::Approx(5.0));
    CHECK(schatten_norm(a, 2.0) == doctest::Approx(std::sqrt(13.0)));
    CHECK(schatten_norm(a, NormIndex::infinity()) == doctest::Approx(3.0));
  }

  TEST_CASE("operator norm agrees with power iteration") {
    SeededRng rng(11);
    const ComplexMatrix a = complex_gaussian_matrix(7, 5, rng);
    const double oracle_top = std::sqrt(oracle::power_top_eigenvalue(a.adjoint() * a));
    CHECK(operator_norm(a) == doctest::Approx(oracle_top).epsilon(1e-9));
  }

  TEST_CASE("hermitian norm and extremes") {
    SeededRng rng(5);
    ComplexMatrix g = complex_gaussian_matrix(6, 6, rng);
    ComplexMatrix h = g + g.adjoint();
    const auto [lo, hi] = extreme_eigenvalues(h);
    CHECK(lo <= hi);
    CHECK(hermitian_operator_norm(h) == doctest::Approx(oracle::hermitian_norm(h)).epsilon(1e-8));
    CHECK(hermitian_operator_norm(h) == doctest::Approx(std::max(-lo, hi)));
    CHECK_THROWS_AS(extreme_eigenvalues(ComplexMatrix::Zero(2, 3)), InvalidParameter);
  }

  TEST_CASE("seeded streams are reproducible and distinct") {
    SeededRng a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }

  TEST_CASE("child streams") {
    SeededRng root(9);
    SeededRng viaChild = root.child(3);
    SeededRng direct(9, 3);
    CHECK(viaChild.next_u64() == direct.next_u64());
    // Grandchildren of different parents never coincide with the flat streams.
    SeededRng g1 = SeededRng(9, 1).child(0);
    SeededRng g2 = SeededRng(9, 2).child(0);
    const auto v1 = g1.next_u64();
    CHECK(v1 != g2.next_u64());
    CHECK(v1 != SeededRng(9, 0).next_u64());
  }

  TEST_CASE("distribution moments") {
    SeededRng rng(1234);
    const int n = 200000;
    double mean = 0.0, var = 0.0, cmod = 0.0, umean = 0.0;
    int rsum = 0;
    for (int i = 0; i < n; ++i) {
      const double z = rng.normal();
      mean += z;
      var += z * z;
      cmod += std::norm(rng.complex_normal());
      const double u = rng.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      umean += u;
      const int r = rng.rademacher();
      REQUIRE((r == 1 || r == -1));
      rsum += r;
      REQUIRE(std::abs(std::abs(rng.unit_phase()) - 1.0) < 1e-12);
    }
    CHECK(std::abs(mean / n) < 0.01);
    CHECK(std::abs(var / n - 1.0) < 0.02);
    CHECK(std::abs(cmod / n - 1.0) < 0.02);
    CHECK(std::abs(umean / n - 0.5) < 0.005);
    CHECK(std::abs(static_cast<double>(rsum) / n) < 0.01);
  }

  TEST_CASE("uniform_int covers its range") {
    SeededRng rng(3);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
      const auto v = rng.uniform_int(7);
      REQUIRE(v < 7);
      ++hits[v];
    }
    for (int h : hits) CHECK(h > 800);
    CHECK_THROWS_AS(rng.uniform_int(0), InvalidParameter);
  }

  TEST_CASE("random_subset") {
    SeededRng rng(8);
    const auto s = random_subset(10, 4, rng);
    CHECK(s.size() == 4);
    CHECK(std::set<int>(s.begin(), s.end()).size() == 4);
    CHECK(std::is_sorted(s.begin(), s.end()));
    for (int v : s) CHECK((v >= 0 && v < 10));
    CHECK(random_subset(5, 5, rng) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(random_subset(3, 4, rng), InvalidParameter);
  }

  TEST_CASE("haar unitary is unitary") {
    SeededRng rng(77);
    const ComplexMatrix u = haar_unitary(6, rng);
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(6, 6)).norm() < 1e-12);
  }

  TEST_CASE("parallel_for visits every index once for any thread count") {
    for (unsigned t : {1u, 3u, 8u}) {
      set_thread_count(t);
      std::vector<int> seen(101, 0);
      parallel_for(seen.size(), [&](std::size_t i) { seen[i] += 1; });
      for (int v : seen) CHECK(v == 1);
    }
    set_thread_count(0);
  }

  TEST_CASE("parallel_for propagates exceptions") {
    set_thread_count(2);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                      if (i == 7) throw NumericalError("boom");
                    }),
                    NumericalError);
    set_thread_count(0);
  }
}

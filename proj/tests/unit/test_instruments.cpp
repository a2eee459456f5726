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

#include "doctest.h"
#include "oracles.hpp"
#include "riplab/errors.hpp"
#include "riplab/instruments.hpp"

using namespace riplab;

TEST_SUITE("instruments") {
  TEST_CASE("flat vector") {
    const Instrument eta = make_flat(4);
    CHECK(eta.kind() == InstrumentKind::kFlat);
    CHECK_FALSE(eta.is_matrix());
    CHECK((eta.vector() - ComplexVector::Ones(4)).norm() == 0.0);
    CHECK(make_flat(1).vector().size() == 1);
    const Instrument big = make_flat(1024);
    for (double q : {2.5, 7.0, 64.0}) {
      CHECK(big.norm(q) == doctest::Approx(std::pow(1024.0, 1.0 / q)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(make_flat(0), InvalidParameter);
  }

  TEST_CASE("decaying window closed forms") {
    const Instrument one = make_decaying_window(4, 1, 0.25);
    CHECK(std::abs(one.vector()[0] - Complex(2.0)) < 1e-14);
    CHECK(one.vector().tail(3).norm() == 0.0);

    const Instrument two = make_decaying_window(4, 2, 0.25);
    const double c = 2.0 / std::sqrt(1.0 + std::pow(2.0, -0.5));
    CHECK(two.vector()[0].real() == doctest::Approx(c).epsilon(1e-13));
    CHECK(two.vector()[1].real() == doctest::Approx(c * std::pow(2.0, -0.25)).epsilon(1e-13));
    CHECK(std::abs(two.vector().squaredNorm() - 4.0) < 1e-12);

    // Independent summation of the normalization.
    const Instrument w = make_decaying_window(64, 16, 0.4);
    double sum = 0.0;
    for (int j = 1; j <= 16; ++j) sum += std::pow(j, -0.8);
    const double cc = std::sqrt(64.0 / sum);
    for (int j = 1; j <= 16; ++j) CHECK(w.vector()[j - 1].real() == doctest::Approx(cc * std::pow(j, -0.4)));
    CHECK(std::abs(w.vector().norm() - 8.0) < 1e-10);
    for (int j = 1; j < 64; ++j) CHECK(std::abs(w.vector()[j]) <= std::abs(w.vector()[j - 1]));
  }

  TEST_CASE("decaying window preconditions") {
    CHECK_THROWS_AS(make_decaying_window(8, 4, 0.7), InvalidParameter);
    CHECK_THROWS_AS(make_decaying_window(8, 4, 0.0), InvalidParameter);
    CHECK_THROWS_AS(make_decaying_window(8, 4, 0.5), InvalidParameter);
    CHECK_THROWS_AS(make_decaying_window(8, 9, 0.3), InvalidParameter);
    CHECK_THROWS_AS(make_decaying_window(8, 0, 0.3), InvalidParameter);
  }

  TEST_CASE("scaled identity matrix") {
    const Instrument eta = make_scaled_identity_matrix(2);
    CHECK(eta.is_matrix());
    CHECK(eta.dimension() == 2);
    CHECK(eta.ambient_dimension() == 4);
    CHECK(eta.norm(2.0) == doctest::Approx(2.0));
    const Instrument three = make_scaled_identity_matrix(3);
    CHECK(std::pow(three.norm(NormIndex::infinity()), 2) == doctest::Approx(3.0));
    CHECK(std::pow(make_scaled_identity_matrix(4).norm(2.0), 2) == doctest::Approx(16.0));
    for (double q : {3.0, 10.0}) {
      CHECK(std::pow(three.norm(q), 2) == doctest::Approx(std::pow(3.0, 1.0 + 2.0 / q)));
    }
  }

  TEST_CASE("schatten decay matrix") {
    SeededRng rng(4);
    const Instrument two = make_schatten_decay_matrix(2, 0.25, rng);
    const RealVector s = singular_values(two.matrix());
    const double c = std::sqrt(4.0 / (1.0 + std::pow(2.0, -0.5)));
    CHECK(s[0] == doctest::Approx(c).epsilon(1e-8));
    CHECK(s[1] == doctest::Approx(c * std::pow(2.0, -0.25)).epsilon(1e-8));

    const Instrument eight = make_schatten_decay_matrix(8, 0.4, rng);
    CHECK(std::abs(eight.norm(2.0) - 8.0) < 1e-9 * 8.0);
    const RealVector s8 = singular_values(eight.matrix());
    CHECK(s8[0] / s8[7] == doctest::Approx(std::pow(8.0, 0.4)).epsilon(1e-8));
    CHECK_THROWS_AS(make_schatten_decay_matrix(3, 0.6, rng), InvalidParameter);

    // Same seed, same matrix.
    SeededRng r1(99), r2(99);
    CHECK((make_schatten_decay_matrix(3, 0.2, r1).matrix() - make_schatten_decay_matrix(3, 0.2, r2).matrix()).norm() == 0.0);
  }

  TEST_CASE("custom instruments check or rescale the normalization") {
    ComplexVector v(3);
    v << 1.0, 2.0, 3.0;
    CHECK_THROWS_AS(make_custom(v), InvalidParameter);
    const Instrument r = make_custom(v, true);
    CHECK(r.vector().norm() == doctest::Approx(std::sqrt(3.0)));
    CHECK_THROWS_AS(make_custom(ComplexVector(ComplexVector::Zero(3)), true), InvalidParameter);
    ComplexMatrix m = ComplexMatrix::Identity(2, 2) * 5.0;
    CHECK(make_custom(m, true).norm(2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(make_custom(ComplexMatrix(ComplexMatrix::Zero(2, 3)), true), InvalidParameter);
  }

  TEST_CASE("row-major flattening round trip") {
    ComplexMatrix a(2, 3);
    a << 1, 2, 3, 4, 5, 6;
    const ComplexVector v = flatten_row_major(a);
    for (int i = 0; i < 6; ++i) CHECK(v[i].real() == i + 1);
    CHECK((unflatten_row_major(v, 2, 3) - a).norm() == 0.0);
  }

  TEST_CASE("kind names round trip") {
    for (auto k : {InstrumentKind::kFlat, InstrumentKind::kDecayingWindow, InstrumentKind::kScaledIdentityMatrix,
                   InstrumentKind::kSchattenDecayMatrix, InstrumentKind::kCustom}) {
      CHECK(instrument_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(instrument_kind_from_string("hann"), InvalidParameter);
  }

  TEST_CASE("vector accessor on a matrix throws") {
    CHECK_THROWS_AS(make_scaled_identity_matrix(2).vector(), InvalidParameter);
    CHECK_THROWS_AS(make_flat(2).matrix(), InvalidParameter);
  }
}

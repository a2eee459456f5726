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
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "riplab/errors.hpp"
#include "riplab/infdim.hpp"

using namespace riplab;

namespace {

FourierFunction random_poly(int bandwidth, int active, SeededRng& rng, bool dc_free) {
  FourierFunction f(bandwidth);
  for (int k = -active; k < active; ++k) f.set_coeff(k, rng.complex_normal());
  if (dc_free) f.set_coeff(0, 0.0);
  return f;
}

}  // namespace

TEST_SUITE("infdim") {
  TEST_CASE("evaluation and FFT samples agree with the direct sum") {
    SeededRng rng(1);
    const FourierFunction f = random_poly(16, 16, rng, false);
    const ComplexVector s = f.samples(64);
    for (int p = 0; p < 64; p += 7) {
      CHECK(std::abs(s[p] - oracle::trig_eval(f.coeffs(), 16, p / 64.0)) < 1e-11);
    }
    CHECK(std::abs(f.evaluate(0.3141) - oracle::trig_eval(f.coeffs(), 16, 0.3141)) < 1e-11);
    CHECK_THROWS_AS(f.samples(16), InvalidParameter);
  }

  TEST_CASE("band limits") {
    FourierFunction f(4);
    CHECK_THROWS_AS(f.set_coeff(4, 1.0), InvalidParameter);
    CHECK(f.coeff(100) == Complex(0.0));
    CHECK_THROWS_AS(FourierFunction(0), InvalidParameter);
    CHECK_THROWS_AS(f += FourierFunction(8), InvalidParameter);
  }

  TEST_CASE("shift group law and identity") {
    SeededRng rng(2);
    const FourierFunction f = random_poly(8, 8, rng, false);
    CHECK((shift(f, 0.0).coeffs() - f.coeffs()).norm() == 0.0);
    const FourierFunction ab = shift(shift(f, 0.7), 0.6);
    CHECK((ab.coeffs() - shift(f, 0.3).coeffs()).norm() < 1e-12);
    // tau_t f (x) = f(x - t).
    CHECK(std::abs(shift(f, 0.2).evaluate(0.5) - f.evaluate(0.3)) < 1e-11);
    for (const WeightSpec& w : std::vector<WeightSpec>{TruncatedWeight{4}, InverseSquareWeight{}}) {
      CHECK(weighted_seminorm(shift(f, 0.37), w) == doctest::Approx(weighted_seminorm(f, w)));
    }
  }

  TEST_CASE("normalized derivative") {
    const FourierFunction psi1 = FourierFunction::mode(8, 1);
    CHECK((differentiate(psi1, DerivativeDirection::kDerivative).coeffs() - psi1.coeffs()).norm() == 0.0);
    SeededRng rng(3);
    const FourierFunction g = random_poly(8, 8, rng, true);
    const FourierFunction back =
        differentiate(differentiate(g, DerivativeDirection::kDerivative), DerivativeDirection::kAntiderivative);
    CHECK((back.coeffs() - g.coeffs()).norm() < 1e-14);
    CHECK(weighted_seminorm(differentiate(g, DerivativeDirection::kDerivative), InverseSquareWeight{}) ==
          doctest::Approx(l2_norm_function(g)).epsilon(1e-12));
    CHECK_THROWS_AS(differentiate(random_poly(8, 8, rng, false), DerivativeDirection::kAntiderivative),
                    InvalidParameter);
  }

  TEST_CASE("weights") {
    CHECK(weighted_seminorm(FourierFunction::mode(32, 11), TruncatedWeight{8}) == 0.0);
    CHECK(weighted_seminorm(FourierFunction::mode(32, 0), TruncatedWeight{8}) == 1.0);
    CHECK(weighted_seminorm(FourierFunction::mode(32, 2), InverseSquareWeight{}) == doctest::Approx(0.5));
    CHECK(weight_at(TruncatedWeight{8}, -8) == 1.0);
    CHECK(weight_at(TruncatedWeight{8}, 8) == 0.0);
    CHECK(weight_at(CustomWeight{{1.0, 2.0, 3.0, 4.0}}, 1) == 4.0);
    CHECK_THROWS_AS(weighted_seminorm(FourierFunction::mode(4, 0), CustomWeight{{-1.0, 1.0}}), InvalidParameter);
  }

  TEST_CASE("function norms") {
    for (double q : {1.0, 2.0, 3.5}) CHECK(lq_norm_function(FourierFunction::mode(8, 3), q) == doctest::Approx(1.0));
    FourierFunction f = FourierFunction::mode(8, 0) + FourierFunction::mode(8, 1);
    CHECK(lq_norm_function(f, 2.0) == doctest::Approx(std::sqrt(2.0)));
    SeededRng rng(4);
    const FourierFunction g = random_poly(32, 32, rng, false);
    CHECK(std::pow(lq_norm_function(g, 2.0), 2) == doctest::Approx(g.coeffs().squaredNorm()).epsilon(1e-8));
    CHECK_THROWS_AS(lq_norm_function(g, 0.5), InvalidParameter);
  }

  TEST_CASE("bump constants against an independent quadrature") {
    for (double p : {1.0, 2.0, 3.0}) {
      const double direct = std::pow(oracle::simpson([p](double x) { return std::pow(bump(x), p); }, -0.5, 0.5, 100000), 1.0 / p);
      CHECK(bump_lp_norm(p) == doctest::Approx(direct).epsilon(1e-9));
    }
    CHECK(bump(0.0) == doctest::Approx(1.0));
    CHECK(bump(0.5) == 0.0);
    // Finite-difference check of the derivative.
    const double h = 1e-6;
    CHECK(bump_derivative(0.2) == doctest::Approx((bump(0.2 + h) - bump(0.2 - h)) / (2 * h)).epsilon(1e-6));
  }

  TEST_CASE("bump superposition identities") {
    BumpSuperposition b{16.0, {0.1, 0.6}, {Complex(1.0), Complex(0.0, -2.0)}};
    CHECK(b.support_measure() == doctest::Approx(2.0 / 16.0));
    const FourierFunction f = from_bumps(b, recommended_bandwidth(16.0));
    for (double p : {1.0, 2.0, 4.0}) CHECK(lq_norm_function(f, p) == doctest::Approx(b.lp_norm(p)).epsilon(1e-6));
    const KMembership km = k_rho_gamma_membership(f, 1e9, 1.0);
    CHECK(km.measured_rho_physical == doctest::Approx(b.derivative_ratio()).epsilon(1e-6));
    CHECK(km.measured_rho == doctest::Approx(b.derivative_ratio() / oracle::kTwoPi).epsilon(1e-6));
    // Pointwise: f(center) = T * amplitude.
    CHECK(std::abs(f.evaluate(0.6) - Complex(0.0, -32.0)) < 1e-8);
  }

  TEST_CASE("bump preconditions") {
    CHECK_THROWS_AS((BumpSuperposition{8.0, {0.1, 0.1}, {1.0, 1.0}}.validate()), InvalidParameter);
    CHECK_THROWS_AS((BumpSuperposition{8.0, {0.1, 0.2}, {1.0, 1.0}}.validate()), InvalidParameter);
    CHECK_THROWS_AS((BumpSuperposition{8.0, {0.02, 0.95}, {1.0, 1.0}}.validate()), InvalidParameter);
    CHECK_THROWS_AS((BumpSuperposition{0.5, {0.1}, {1.0}}.validate()), InvalidParameter);
    CHECK_THROWS_AS((BumpSuperposition{8.0, {0.1}, {1.0, 1.0}}.validate()), InvalidParameter);
    // Wrapping support across 0 is measured correctly.
    CHECK((BumpSuperposition{10.0, {0.02}, {1.0}}.support_measure()) == doctest::Approx(0.1));
  }

  TEST_CASE("membership") {
    const KMembership dc = k_rho_gamma_membership(FourierFunction::mode(16, 0), 1.0, 1.0);
    CHECK(dc.measured_rho == 0.0);
    CHECK(dc.measured_gamma == 1.0);
    CHECK(dc.member);
    const FourierFunction one = from_bumps(BumpSuperposition{16.0, {0.3}, {1.0}}, recommended_bandwidth(16.0));
    const KMembership km = k_rho_gamma_membership(one, 1e9, 1.0);
    CHECK(std::abs(km.measured_gamma - 1.0 / 16.0) < 0.003);
    CHECK_THROWS_AS(k_rho_gamma_membership(FourierFunction(4), 1.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(k_rho_gamma_membership(one, 1.0, 1.0, 0.0), InvalidParameter);
  }

  TEST_CASE("block instruments") {
    SeededRng rng(6);
    const BlockInstrument det = make_block_instrument(8, 4, BlockMode::kDeterministic, rng);
    CHECK(det.blocks == 4);
    const FourierFunction psi = FourierFunction::mode(32, -3);
    const ComplexVector one_hot = block_measure(psi, det, 0.0);
    CHECK(std::abs(one_hot[1] - Complex(1.0)) < 1e-15);
    CHECK(one_hot.norm() == doctest::Approx(1.0));
    // L = 1: the raw coefficient window.
    const BlockInstrument raw = make_block_instrument(4, 1, BlockMode::kDeterministic, rng);
    const FourierFunction f = random_poly(8, 8, rng, false);
    const ComplexVector w = block_measure(f, raw, 0.0);
    for (int k = -4; k < 4; ++k) CHECK(std::abs(w[k + 4] - f.coeff(k)) < 1e-15);
    const BlockInstrument rad = make_block_instrument(8, 4, BlockMode::kRademacher, rng);
    for (int s : rad.signs) CHECK((s == 1 || s == -1));
    CHECK_THROWS_AS(make_block_instrument(8, 3, BlockMode::kDeterministic, rng), InvalidParameter);
  }

  TEST_CASE("block energy averages to the truncated seminorm on a fine grid") {
    SeededRng rng(7);
    const int n = 16;
    const FourierFunction f = random_poly(64, 64, rng, false);
    for (BlockMode mode : {BlockMode::kDeterministic, BlockMode::kRademacher}) {
      const BlockInstrument inst = make_block_instrument(n, 4, mode, rng);
      double avg = 0.0;
      for (int j = 0; j < 4 * n; ++j) avg += block_measure(f, inst, j / (4.0 * n)).squaredNorm();
      avg /= 4 * n;
      CHECK(avg == doctest::Approx(std::pow(weighted_seminorm(f, TruncatedWeight{n}), 2)).epsilon(1e-12));
    }
  }

  TEST_CASE("time sampling equals point evaluation") {
    const FourierFunction psi1 = FourierFunction::mode(4, 1);
    CHECK(std::abs(time_sample_measure(psi1, 0.25) - Complex(0.0, 1.0)) < 1e-15);
    SeededRng rng(8);
    const FourierFunction g = random_poly(32, 32, rng, true);
    for (double t : {0.0, 0.13, 0.77}) {
      CHECK(std::abs(time_sample_measure(g, t) - oracle::trig_eval(g.coeffs(), 32, t)) < 1e-10);
    }
    CHECK_THROWS_AS(time_sample_measure(random_poly(8, 8, rng, false), 0.1), InvalidParameter);
    FourierFunction h = g;
    h.set_coeff(0, 2.5);
    const auto [centred, dc] = time_sample_measure_with_dc(h, 0.4);
    CHECK(std::abs(centred - g.evaluate(0.4)) < 1e-10);
    CHECK(dc == Complex(2.5));
  }

  TEST_CASE("dyadic blocks and measurements") {
    CHECK(dyadic_block(0) == std::vector<int>{0});
    CHECK(dyadic_block(1) == std::vector<int>{-1, 1});
    const auto b3 = dyadic_block(3);
    CHECK(std::set<int>(b3.begin(), b3.end()) == std::set<int>{-4, -3, 3, 4});
    CHECK(dyadic_block(-1).empty());
    CHECK(dyadic_measure(FourierFunction::mode(16, 2), 0.3, 3) == Complex(0.0));
    CHECK(std::abs(dyadic_measure(FourierFunction::mode(16, 4), 0.0, 3) - Complex(1.0)) < 1e-15);
    // Levels partition the band: total energy equals the L2 energy at any t.
    SeededRng rng(9);
    const FourierFunction g = random_poly(16, 16, rng, true);
    double sum = 0.0;
    for (int l = 0; l <= 6; ++l) sum += std::norm(dyadic_measure(g, 0.21, l));
    double direct = 0.0;
    for (int l = 0; l <= 6; ++l) {
      Complex c = 0.0;
      for (int k : dyadic_block(l)) c += oracle::expi(-oracle::kTwoPi * k * 0.21) * g.coeff(k);
      direct += std::norm(c);
    }
    CHECK(sum == doctest::Approx(direct).epsilon(1e-12));
  }

  TEST_CASE("dyadic tails are non-increasing") {
    SeededRng rng(10);
    const FourierFunction g = random_poly(64, 64, rng, true);
    double prev = 1e300;
    for (int l0 = 0; l0 <= 9; ++l0) {
      const double t = dyadic_tail(g, 0.4, l0);
      CHECK(t <= prev + 1e-15);
      prev = t;
    }
    CHECK(dyadic_tail(g, 0.4, 9) == 0.0);
  }

  TEST_CASE("truncation level arithmetic") {
    CHECK(truncation_level(2.0, 1.0, 1.0, 0.5) == 1);
    CHECK(truncation_level(2.0, 4.0, 0.25, 1.0) == 5);
    // q = 1.5 (q' = 3): 2^{-2 l0 / 3} <= 1/20.
    int l = 1;
    while (std::pow(2.0, -2.0 * l / 3.0) > 1.0 / 20.0) ++l;
    CHECK(truncation_level(1.5, 1.0, 0.1, 1.0) == l);
    CHECK_THROWS_AS(truncation_level(1.0, 1.0, 0.1, 1.0), InvalidParameter);
    CHECK_THROWS_AS(truncation_level(2.0, 1.0, 0.0, 1.0), InvalidParameter);
  }

  TEST_CASE("calibrated truncation constant bounds every sampled tail") {
    SeededRng rng(11);
    std::vector<FourierFunction> anti;
    std::vector<FourierFunction> gs;
    for (int i = 0; i < 5; ++i) {
      FourierFunction g = from_bumps(BumpSuperposition{8.0 + 8 * rng.uniform(), {rng.uniform()}, {1.0}}, 2048);
      g.set_coeff(0, 0.0);
      gs.push_back(g);
      anti.push_back(differentiate(g, DerivativeDirection::kAntiderivative));
    }
    const double c2 = calibrate_truncation_constant(anti, 2.0, 12);
    CHECK(c2 > 0.0);
    CHECK(c2 <= 4.0);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (int l0 = 1; l0 <= 12; ++l0) {
        CHECK(dyadic_tail(anti[i], 0.0, l0) <= c2 * std::pow(2.0, -l0) * std::pow(l2_norm_function(gs[i]), 2) * (1 + 1e-12));
      }
    }
  }

  TEST_CASE("experiment on constant functions has zero deviation") {
    SeededRng rng(12);
    Scheme s;
    s.blocks = make_block_instrument(4, 1, BlockMode::kDeterministic, rng);
    const FunctionSampler constant = [](SeededRng&) { return FourierFunction::mode(16, 0); };
    const InfdimReport r = infdim_rip_experiment(constant, s, 5, 3, 2, SeededRng(13));
    CHECK(r.delta_hat < 1e-14);
    CHECK(r.deviations.size() == 3);
    CHECK_THROWS_AS(infdim_rip_experiment(constant, s, 0, 3, 2, SeededRng(13)), InvalidParameter);
    const FunctionSampler zero = [](SeededRng&) { return FourierFunction(16); };
    CHECK_THROWS_AS(infdim_rip_experiment(zero, s, 2, 1, 1, SeededRng(13)), NumericalError);
  }
}

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
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "riplab/errors.hpp"
#include "riplab/rip.hpp"

using namespace riplab;

TEST_SUITE("rip") {
  TEST_CASE("exact RIP trivial operators") {
    const ComplexMatrix id = ComplexMatrix::Identity(6, 6);
    for (int k = 1; k <= 3; ++k) CHECK(exact_rip_canonical(id, k).delta_hat < 1e-15);
    CHECK(exact_rip_canonical(ComplexMatrix(std::sqrt(2.0) * id), 1).delta_hat == doctest::Approx(1.0));
    const RipReport r = exact_rip_canonical(id, 2);
    CHECK(r.method == RipMethod::kExactEnumeration);
  }

  TEST_CASE("exact RIP agrees with brute force and scales without hidden normalization") {
    SeededRng rng(1);
    const ComplexMatrix a = complex_gaussian_matrix(5, 9, rng) / std::sqrt(5.0);
    for (int k = 1; k <= 3; ++k) {
      CHECK(exact_rip_canonical(a, k).delta_hat == doctest::Approx(oracle::brute_rip(a, k)).epsilon(1e-12));
    }
    const ComplexMatrix b = 1.7 * a;
    CHECK(exact_rip_canonical(b, 2).delta_hat == doctest::Approx(oracle::brute_rip(b, 2)).epsilon(1e-12));
    double prev = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const double d = exact_rip_canonical(a, k).delta_hat;
      CHECK(d >= prev - 1e-15);
      prev = d;
    }
  }

  TEST_CASE("exact RIP capacity and argument errors") {
    CHECK_THROWS_AS(exact_rip_canonical(ComplexMatrix(ComplexMatrix::Identity(60, 60)), 10), CapacityError);
    CHECK_THROWS_AS(exact_rip_canonical(ComplexMatrix(ComplexMatrix::Identity(4, 4)), 5), InvalidParameter);
    CHECK_THROWS_AS(exact_rip_canonical(ComplexMatrix(ComplexMatrix::Identity(4, 4)), 0), InvalidParameter);
  }

  TEST_CASE("flat shift-modulation ensembles are exact at k=1") {
    for (int m : {1, 3, 7}) {
      const auto a = sample_ensemble(make_flat(8), GroupKind::kShiftMod, m, SignMode::kNone, SeededRng(m));
      CHECK(exact_rip_canonical(a, 1).delta_hat <= 1e-12);
    }
  }

  TEST_CASE("empirical RIP lower-bounds the exact value and matches with exhaustive starts") {
    const auto a = sample_ensemble(make_decaying_window(12, 6, 0.3), GroupKind::kShiftMod, 6, SignMode::kNone,
                                   SeededRng(2));
    const double exact = exact_rip_canonical(a, 2).delta_hat;
    EmpiricalOptions o;
    o.trials = 20;
    const double rough = empirical_rip(a, Canonical{2}, o, SeededRng(3)).delta_hat;
    CHECK(rough <= exact + 1e-12);
    o.trials = 66;
    o.schedule = SupportSchedule::kExhaustive;
    CHECK(std::abs(empirical_rip(a, Canonical{2}, o, SeededRng(3)).delta_hat - exact) < 1e-10);
  }

  TEST_CASE("empirical RIP on the identity is zero for every model") {
    const ComplexMatrix id = ComplexMatrix::Identity(16, 16);
    EmpiricalOptions o;
    o.trials = 10;
    o.ascent_steps = 5;
    for (const SparsityModel& m : std::vector<SparsityModel>{Canonical{3}, LqCap{1.0, 2.0}, LowRank{2}, TensorRank{1, 4, 2}}) {
      CHECK(empirical_rip(id, m, o, SeededRng(4)).delta_hat < 1e-12);
    }
  }

  TEST_CASE("empirical RIP is a running max over trials") {
    const auto a = sample_gaussian_ensemble(10, 20, SeededRng(5));
    EmpiricalOptions o;
    o.trials = 30;
    o.ascent_steps = 10;
    const RipReport r = empirical_rip(a, LqCap{1.0, 3.0}, o, SeededRng(6));
    REQUIRE(r.trial_values.size() == 30);
    double best = 0.0;
    for (double v : r.trial_values) best = std::max(best, v);
    CHECK(r.delta_hat == best);
    CHECK_THROWS_AS(empirical_rip(a, Canonical{2}, EmpiricalOptions{0, 5, SupportSchedule::kRandom}, SeededRng(1)),
                    InvalidParameter);
  }

  TEST_CASE("empirical RIP is deterministic across thread counts") {
    const auto a = sample_gaussian_ensemble(12, 24, SeededRng(7));
    EmpiricalOptions o;
    o.trials = 16;
    set_thread_count(1);
    const auto r1 = empirical_rip(a, LqCap{1.0, 2.0}, o, SeededRng(8));
    set_thread_count(4);
    const auto r4 = empirical_rip(a, LqCap{1.0, 2.0}, o, SeededRng(8));
    set_thread_count(0);
    CHECK(r1.trial_values == r4.trial_values);
  }

  TEST_CASE("MRIP level range and thresholds") {
    CHECK(mrip_level_range(1.0, 16.0) == std::pair<int, int>{0, 4});
    CHECK(mrip_level_range(2.0, 64.0) == std::pair<int, int>{-1, 5});
    CHECK(mrip_threshold(0, 0.3) == doctest::Approx(0.3));
    CHECK(mrip_threshold(2, 0.3) == doctest::Approx(std::max(0.6, 4 * 0.09)));
    CHECK(mrip_threshold(2, 0.9) == doctest::Approx(4 * 0.81));
    CHECK(mrip_threshold(2, 0.3, true) == doctest::Approx(2 * 0.6));
    CHECK_THROWS_AS(mrip_level_range(0.5, 16.0), InvalidParameter);
  }

  TEST_CASE("MRIP on the identity passes everywhere") {
    MripOptions o;
    o.search.trials = 5;
    o.search.ascent_steps = 3;
    const RipReport r = mrip_check(ComplexMatrix::Identity(16, 16), 1.0, 1.0, 0.01, o, SeededRng(1));
    CHECK(r.pass);
    CHECK(r.levels.size() == 5);
    CHECK(r.levels.back().region == LevelRegion::kSphere);
    CHECK_THROWS_AS(mrip_check(ComplexMatrix::Identity(4, 4), 1.0, 1.0, 0.0, o, SeededRng(1)), InvalidParameter);
  }

  TEST_CASE("MRIP calibration makes every level pass with the binding one on its threshold") {
    const auto a = sample_gaussian_ensemble(64, 32, SeededRng(9));
    MripOptions o;
    o.search.trials = 20;
    o.search.ascent_steps = 10;
    const RipReport probe = mrip_check(a.operator_matrix(), 1.0, 2.0, 1.0, o, SeededRng(10));
    const double d = calibrate_mrip_delta(probe.levels);
    double worst_ratio = 0.0;
    for (const auto& lv : probe.levels) {
      CHECK(lv.observed_sup <= mrip_threshold(lv.level, d) * (1.0 + 1e-12));
      worst_ratio = std::max(worst_ratio, lv.observed_sup / mrip_threshold(lv.level, d));
    }
    CHECK(worst_ratio == doctest::Approx(1.0));
    // Empty-region levels carry sup 0.
    const RipReport low = mrip_check(a.operator_matrix(), 1.0, 1.5, 1.0, o, SeededRng(10));
    CHECK(low.levels.front().region == LevelRegion::kEmpty);
    CHECK(low.levels.front().observed_sup == 0.0);
  }

  TEST_CASE("distance bound") {
    SeededRng rng(11);
    const ComplexVector x = sample_sparse(LqCap{1.0, 2.0}, 16, rng);
    const ComplexVector y = sample_sparse(LqCap{1.0, 2.0}, 16, rng);
    const DistanceCheck id = distance_bound_check(ComplexMatrix::Identity(16, 16), x, y, 2.0, 0.1, 1.0);
    CHECK(id.observed < 1e-14);
    CHECK(id.pass);
    // Direct substitution of the bound formula.
    const ComplexVector h = x - y;
    const double hx = lq_norm(h, 1.0);
    const double want = std::max(std::sqrt(2.0) * 0.1 * hx * h.norm() / std::sqrt(2.0), 2 * 0.01 * hx * hx / 2.0);
    CHECK(id.bound == doctest::Approx(want));
    CHECK_THROWS_AS(distance_bound_check(ComplexMatrix::Identity(16, 16), x, x, 2.0, 0.1, 1.0), InvalidParameter);

    // y = 0 reduces to the plain deviation of x.
    const auto a = sample_gaussian_ensemble(20, 16, SeededRng(12));
    const ComplexVector zero = ComplexVector::Zero(16);
    const DistanceCheck d0 = distance_bound_check(a.operator_matrix(), x, zero, 2.0, 0.3, 1.0);
    CHECK(d0.observed == doctest::Approx(std::abs(a.measure(x).squaredNorm() - 1.0)));
  }

  TEST_CASE("weak-diff constants") {
    const WeakDiffConstants def = weak_diff_constants();
    CHECK(def.alpha == doctest::Approx(4 * std::sqrt(2.0)));
    CHECK(def.beta == doctest::Approx(8.0));
    CHECK(def.factor == doctest::Approx(1.0 / std::sqrt(2.0)));
    // alpha = 4: alpha (alpha - 2 sqrt 2) = 4.686 < 8 so the lower factor would be negative.
    CHECK_THROWS_AS(weak_diff_constants(4.0), DomainError);
    CHECK_THROWS_AS(weak_diff_constants(2.0), DomainError);
    const WeakDiffConstants six = weak_diff_constants(6.0);
    CHECK(six.factor == doctest::Approx(2 * std::sqrt(2.0) / std::sqrt(6.0 * (6.0 - 2 * std::sqrt(2.0)))));
    CHECK(six.beta * (six.beta - 2 * std::sqrt(2.0)) > 36.0);
    CHECK_THROWS_AS(weak_diff_constants(6.0, 5.0), DomainError);
  }

  TEST_CASE("weak-diff verdicts") {
    SeededRng rng(13);
    const ComplexVector x = sample_sparse(Canonical{2}, 8, rng);
    const ComplexVector y = sample_sparse(Canonical{2}, 8, rng);
    const ComplexMatrix id = ComplexMatrix::Identity(8, 8);
    const DiffVerdict same = weak_diff_classify(id, x, x, 0.1);
    CHECK(same.kind == DiffVerdict::Kind::kClose);
    CHECK(same.radius == doctest::Approx(0.8));
    const DiffVerdict sep = weak_diff_classify(id, x, y, 1e-6);
    CHECK(sep.kind == DiffVerdict::Kind::kSeparated);
    CHECK(sep.lower <= sep.upper);
    CHECK(sep.lower > 0.0);
    CHECK(sep.lower <= (x - y).squaredNorm());
    CHECK((x - y).squaredNorm() <= sep.upper);
    CHECK_THROWS_AS(weak_diff_classify(id, 2.0 * x, y, 0.1), InvalidParameter);
  }

  TEST_CASE("gaussian width oracles") {
    // k = N: E||xi|| = sqrt(2) Gamma((N+1)/2) / Gamma(N/2).
    const int n = 10;
    const double chi = std::sqrt(2.0) * std::exp(std::lgamma((n + 1) / 2.0) - std::lgamma(n / 2.0));
    const WidthEstimate full = gaussian_width(Canonical{n}, n, 20000, SeededRng(14));
    CHECK(std::abs(full.mean - chi) <= 3.0 * full.std_error);
    CHECK(full.exact_per_draw);

    // k = 1: E max_j |xi_j| by an independent brute-force Monte Carlo.
    std::normal_distribution<double> nd;
    std::mt19937_64 eng(2024);
    double acc = 0.0;
    const int draws = 400000;
    for (int t = 0; t < draws; ++t) {
      double mx = 0.0;
      for (int j = 0; j < 16; ++j) mx = std::max(mx, std::abs(nd(eng)));
      acc += mx;
    }
    const WidthEstimate one = gaussian_width(Canonical{1}, 16, 20000, SeededRng(15));
    CHECK(std::abs(one.mean - acc / draws) <= 3.0 * one.std_error + 0.005);

    const WidthEstimate a = gaussian_width(Canonical{3}, 12, 100, SeededRng(16));
    const WidthEstimate b = gaussian_width(Canonical{3}, 12, 100, SeededRng(16));
    CHECK(a.mean == b.mean);
    CHECK_THROWS_AS(gaussian_width(Canonical{3}, 12, 1, SeededRng(1)), InvalidParameter);
  }

  TEST_CASE("Gordon count arithmetic") {
    // zeta = 2 zeroes the log term: m = ceil((l / delta)^2).
    CHECK(predict_m_gordon(3.0, 1.0, 2.0) == 9);
    const double t = 4.0 + std::sqrt(2.0 * std::log(20.0));
    CHECK(predict_m_gordon(4.0, 0.5, 0.1) == static_cast<std::int64_t>(std::ceil(t * t / 0.25)));
    CHECK_THROWS_AS(predict_m_gordon(3.0, 0.0, 0.1), InvalidParameter);
    CHECK_THROWS_AS(predict_m_gordon(3.0, 0.5, 3.0), InvalidParameter);
  }

  TEST_CASE("implicit count by monotone search") {
    const std::int64_t m = predict_m_sp(10.0, 0.5, 1.0);
    auto ok = [](double mm) { return mm >= 40.0 * std::pow(1.0 + std::log(mm), 3); };
    CHECK(ok(static_cast<double>(m)));
    // Oracle: linear scan from 8.
    std::int64_t scan = 8;
    while (!ok(static_cast<double>(scan))) ++scan;
    CHECK(m == scan);
    CHECK(solve_implicit_m(0.0, 1.0, 0.0) == 1);
    CHECK_THROWS_AS(solve_implicit_m(1e9, 1e3, 0.0), CapacityError);
    CHECK_THROWS_AS(solve_implicit_m(std::nan(""), 1.0, 0.0), NumericalError);
  }

  TEST_CASE("sp constant calibration inverts the prediction") {
    const double c = calibrate_sp_constant(10.0, 0.5, 5000);
    const double lg = 1.0 + std::log(5000.0);
    CHECK(c * 10.0 / 0.25 * lg * lg * lg == doctest::Approx(5000.0));
    CHECK(std::llabs(predict_m_sp(10.0, 0.5, c) - 5000) <= 1);  // rounding at the boundary
  }

  TEST_CASE("window-based counts") {
    CHECK_THROWS_AS(predict_m_stft(256, 1, 0.25, 4, 0.5, 0.1), DomainError);
    CHECK_THROWS_AS(predict_m_stft(256, 64, 0.6, 4, 0.5, 0.1), InvalidParameter);
    const auto m2 = predict_m_stft(256, 64, 0.25, 2, 0.5, 0.1);
    const auto m8 = predict_m_stft(256, 64, 0.25, 8, 0.5, 0.1);
    CHECK(m2 <= m8);
    CHECK(predict_m_stft_classical(256, 64, 0.25, 8, 0.5, 0.1) >= 1);
  }

  TEST_CASE("table counts") {
    CHECK(predict_m_table1(Table1Row::kGaussian, 2, 10, 3) == 60);
    CHECK(predict_m_table1(Table1Row::kGroup, 2, 10, 3) == 1800);
    CHECK(predict_m_table1(Table1Row::kGroupSign, 2, 10, 3) == 540);
    CHECK(table1_row_from_string("group+sign") == Table1Row::kGroupSign);
    CHECK_THROWS_AS(predict_m_table1(Table1Row::kGroup, 0, 1, 1), InvalidParameter);
    CHECK_THROWS_AS(predict_m_table1(Table1Row::kGroup, 1000000, 1000000, 1000), CapacityError);
  }
}

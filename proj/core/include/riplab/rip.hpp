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

#ifndef RIPLAB_RIP_HPP_
#define RIPLAB_RIP_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riplab/group_ops.hpp"
#include "riplab/numerics.hpp"
#include "riplab/sparsity.hpp"

namespace riplab {

enum class RipMethod { kExactEnumeration, kMonteCarlo };
std::string to_string(RipMethod method);

// Where an MRIP level's supremum came from.
enum class LevelRegion {
  kEmpty,    // 2^l s < 1: no unit vector qualifies, sup is 0
  kSampled,  // Monte Carlo lower bound
  kSphere,   // 2^l s >= s_max: the whole sphere, sup computed exactly
};
std::string to_string(LevelRegion region);

struct MripLevel {
  int level = 0;
  double level_sparsity = 0.0;  // 2^l s
  double observed_sup = 0.0;
  double threshold = 0.0;
  bool pass = true;
  LevelRegion region = LevelRegion::kSampled;
};

struct RipReport {
  double delta_hat = 0.0;
  RipMethod method = RipMethod::kMonteCarlo;
  int trials = 0;
  int ascent_steps = 0;
  SparsityModel model = Canonical{1};
  Eigen::Index m = 0;
  std::uint64_t seed = 0;
  // Monte Carlo only: best deviation reached by each trial, in trial order.
  std::vector<double> trial_values;
  // MRIP only.
  std::vector<MripLevel> levels;
  bool pass = true;
};

// max over |S| = k of ||A_S^* A_S - Id_k|| for the effective operator A
// (m_out x N). Throws CapacityError when C(N, k) > 1e6.
RipReport exact_rip_canonical(const ComplexMatrix& op, int k);
RipReport exact_rip_canonical(const MeasurementEnsemble& a, int k);

enum class SupportSchedule {
  kRandom,      // each Canonical trial starts from a uniform random support
  kExhaustive,  // trial t starts from the t-th support in lexicographic order
};

struct EmpiricalOptions {
  int trials = 100;
  int ascent_steps = 50;
  SupportSchedule schedule = SupportSchedule::kRandom;
};

// Monte Carlo lower bound on sup |‖Ax‖^2 - ‖x‖^2| over unit members of the
// model. Trial t draws from rng.substream(t), so results do not depend on the
// thread count.
RipReport empirical_rip(const ComplexMatrix& op, const SparsityModel& model,
                        const EmpiricalOptions& options, const SeededRng& rng);
RipReport empirical_rip(const MeasurementEnsemble& a, const SparsityModel& model,
                        const EmpiricalOptions& options, const SeededRng& rng);

// Level range floor(-log2 s) .. ceil(log2(s_max / s)).
std::pair<int, int> mrip_level_range(double s, double s_max_value);

// max(2^{l/2} delta, 2^l delta^2), times an extra 2^{l/2} when requested.
double mrip_threshold(int level, double delta, bool extra_factor = false);

struct MripOptions {
  EmpiricalOptions search;
  bool extra_factor = false;
};

// Estimates the supremum at every level for X = l_q and compares it with the
// threshold for delta.
RipReport mrip_check(const ComplexMatrix& op, double q, double s, double delta,
                     const MripOptions& options, const SeededRng& rng);

// Smallest delta for which the observed level suprema pass.
double calibrate_mrip_delta(const std::vector<MripLevel>& levels, bool extra_factor = false);

struct DistanceCheck {
  double observed = 0.0;
  double bound = 0.0;
  bool pass = true;
  // Refined bound for (K,s)-sparse pairs whose difference is sparse enough.
  bool refined_applicable = false;
  double refined_bound = 0.0;
  bool refined_pass = true;
};

// | ‖Ax - Ay‖^2 - ‖x - y‖^2 | against
//   max(sqrt2 delta ‖h‖_q ‖h‖_2 / sqrt s, 2 delta^2 ‖h‖_q^2 / s),  h = x - y.
DistanceCheck distance_bound_check(const ComplexMatrix& op, const ComplexVector& x,
                                   const ComplexVector& y, double s, double delta, double q,
                                   double epsilon = 1.0);

struct WeakDiffConstants {
  double alpha = 0.0;   // separation threshold multiplier
  double beta = 0.0;    // closeness radius multiplier
  double factor = 0.0;  // sandwich is (1 -/+ factor)
};

// Defaults: alpha = 4 sqrt2, beta = 8, factor = 1/sqrt2. A custom alpha needs
// alpha (alpha - 2 sqrt2) > 8 and beta (beta - 2 sqrt2) > alpha^2; violations
// raise DomainError.
WeakDiffConstants weak_diff_constants(std::optional<double> alpha = std::nullopt,
                                      std::optional<double> beta = std::nullopt);

struct DiffVerdict {
  enum class Kind { kSeparated, kClose };
  Kind kind = Kind::kClose;
  double measured = 0.0;  // ‖Ax - Ay‖_2
  double lower = 0.0;
  double upper = 0.0;
  double radius = 0.0;
};

// x and y must be unit vectors (to 1e-8).
DiffVerdict weak_diff_classify(const ComplexMatrix& op, const ComplexVector& x,
                               const ComplexVector& y, double delta,
                               const WeakDiffConstants& constants = weak_diff_constants());

struct WidthEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  bool exact_per_draw = true;  // false when the sup is an ascent lower bound
};

// Monte Carlo estimate of E sup_{x in D} <xi, x> with xi standard real
// Gaussian in R^N and D the unit vectors of the model.
WidthEstimate gaussian_width(const SparsityModel& model, Eigen::Index n, int trials,
                             const SeededRng& rng);

// ceil(delta^{-2} (width + sqrt(2 ln(2/zeta)))^2), zeta in (0, 2].
std::int64_t predict_m_gordon(double width, double delta, double zeta);

// Smallest m >= 1 with m >= scale * max(cubic * (1 + ln m)^3, floor_term).
// Throws CapacityError if none exists below 2^30.
std::int64_t solve_implicit_m(double scale, double cubic, double floor_term);

// m >= c delta^{-2} (1 + ln m)^3 sp.
std::int64_t predict_m_sp(double sp, double delta, double c = 1.0);

// Constant c for which predict_m_sp reproduces an observed count.
double calibrate_sp_constant(double sp, double delta, std::int64_t observed_m);

// Decaying-window count: c delta^{-2} k max(alpha^{-3} (1+ln m)^3, ln(1/zeta))
//   N_eta^{2a} (1 + ln N_eta)^{2a} N / (k^{2a} N_eta (1 - N_eta^{2a-1})).
std::int64_t predict_m_stft(int n, int window_length, double alpha, int k, double delta,
                            double zeta, double c = 1.0);
// The l_1 route: c delta^{-2} k max((1+ln m)^3 (1+ln N), ln(1/zeta))
//   N_eta^{2a} N / (N_eta (1 - N_eta^{2a-1})).
std::int64_t predict_m_stft_classical(int n, int window_length, double alpha, int k,
                                      double delta, double zeta, double c = 1.0);

enum class Table1Row { kGaussian, kGroup, kGroupSign };
std::string to_string(Table1Row row);
Table1Row table1_row_from_string(const std::string& name);

// s n d, s n^2 d^2, s n d^3.
std::int64_t predict_m_table1(Table1Row row, std::int64_t s, std::int64_t n, std::int64_t d);

}  // namespace riplab

#endif  // RIPLAB_RIP_HPP_

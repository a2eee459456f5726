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

#include "riplab/rip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "riplab/errors.hpp"

namespace riplab {
namespace {

constexpr double kMaxSupports = 1e6;

double binomial(Eigen::Index n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / i;
  return std::round(c);
}

// All k-subsets of {0..n-1} in lexicographic order, flattened.
std::vector<int> all_supports(Eigen::Index n, int k) {
  std::vector<int> out;
  std::vector<int> s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    out.insert(out.end(), s.begin(), s.end());
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

struct SupportEval {
  double value = 0.0;     // ||G_S - Id||
  double signed_ext = 0.0;  // the eigenvalue attaining it
  ComplexVector vec;      // its eigenvector, length |S|
};

SupportEval evaluate_support(const ComplexMatrix& gram, const int* support, int k, bool want_vec) {
  ComplexMatrix sub(k, k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) sub(a, b) = gram(support[a], support[b]);
    sub(a, a) -= 1.0;
  }
  SupportEval ev;
  if (k == 1) {
    ev.signed_ext = sub(0, 0).real();
    ev.value = std::abs(ev.signed_ext);
    if (want_vec) ev.vec = ComplexVector::Ones(1);
    return ev;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      sub, want_vec ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed on a support");
  const double lo = solver.eigenvalues()[0];
  const double hi = solver.eigenvalues()[k - 1];
  const bool top = std::abs(hi) >= std::abs(lo);
  ev.signed_ext = top ? hi : lo;
  ev.value = std::abs(ev.signed_ext);
  if (want_vec) ev.vec = solver.eigenvectors().col(top ? k - 1 : 0);
  return ev;
}

ComplexMatrix gram_of(const ComplexMatrix& op) { return op.adjoint() * op; }

std::vector<int> top_k_support(const ComplexVector& w, int k) {
  std::vector<int> order(static_cast<std::size_t>(w.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(w[a]) > std::abs(w[b]); });
  order.resize(static_cast<std::size_t>(k));
  std::sort(order.begin(), order.end());
  return order;
}

void check_unit(const ComplexVector& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > 1e-8) {
    throw InvalidParameter(std::string(name) + " must have unit l2 norm");
  }
}

std::int64_t ceil_count(double value) {
  if (!std::isfinite(value) || value > 9.0e18) throw CapacityError("measurement count overflows");
  // Absorb rounding noise so exact integers are not bumped up.
  return static_cast<std::int64_t>(std::ceil(value * (1.0 - 1e-12)));
}

}  // namespace

std::string to_string(RipMethod method) {
  return method == RipMethod::kExactEnumeration ? "exact-enumeration" : "monte-carlo";
}

std::string to_string(LevelRegion region) {
  switch (region) {
    case LevelRegion::kEmpty: return "empty";
    case LevelRegion::kSampled: return "sampled";
    case LevelRegion::kSphere: return "sphere";
  }
  return "sampled";
}

RipReport exact_rip_canonical(const ComplexMatrix& op, int k) {
  const Eigen::Index n = op.cols();
  if (k < 1 || k > n) throw InvalidParameter("k must be in [1, N]");
  if (binomial(n, k) > kMaxSupports) {
    throw CapacityError("C(N, k) exceeds 1e6 supports; use empirical_rip");
  }
  const ComplexMatrix gram = gram_of(op);
  const std::vector<int> supports = all_supports(n, k);
  const std::size_t count = supports.size() / static_cast<std::size_t>(k);

  const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(count, 64));
  std::vector<double> block_max(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t begin = count * b / blocks;
    const std::size_t end = count * (b + 1) / blocks;
    double best = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      best = std::max(best, evaluate_support(gram, &supports[i * static_cast<std::size_t>(k)], k, false).value);
    }
    block_max[b] = best;
  });

  RipReport r;
  r.delta_hat = *std::max_element(block_max.begin(), block_max.end());
  r.method = RipMethod::kExactEnumeration;
  r.trials = static_cast<int>(count);
  r.model = Canonical{k};
  r.m = op.rows();
  return r;
}

RipReport exact_rip_canonical(const MeasurementEnsemble& a, int k) {
  RipReport r = exact_rip_canonical(a.operator_matrix(), k);
  r.seed = a.provenance().seed;
  return r;
}

RipReport empirical_rip(const ComplexMatrix& op, const SparsityModel& model,
                        const EmpiricalOptions& options, const SeededRng& rng) {
  check_model(model);
  if (options.trials < 1) throw InvalidParameter("trials must be >= 1");
  if (options.ascent_steps < 0) throw InvalidParameter("ascent steps must be >= 0");
  const Eigen::Index n = op.cols();
  const ComplexMatrix gram = gram_of(op);
  ComplexMatrix deviation = gram;
  deviation.diagonal().array() -= 1.0;

  RipReport r;
  r.method = RipMethod::kMonteCarlo;
  r.trials = options.trials;
  r.ascent_steps = options.ascent_steps;
  r.model = model;
  r.m = op.rows();
  r.seed = rng.seed();
  r.trial_values.assign(static_cast<std::size_t>(options.trials), 0.0);

  const auto* canonical = std::get_if<Canonical>(&model);
  if (canonical && canonical->k > n) throw InvalidParameter("k exceeds N");

  std::vector<int> lexicographic;
  if (options.schedule == SupportSchedule::kExhaustive) {
    if (!canonical) throw InvalidParameter("exhaustive schedule needs a Canonical model");
    if (binomial(n, canonical->k) > kMaxSupports) throw CapacityError("C(N, k) exceeds 1e6 supports");
    lexicographic = all_supports(n, canonical->k);
  }
  // Shift that makes sign * deviation + shift positive semidefinite.
  const double shift = options.ascent_steps > 0 ? hermitian_operator_norm(deviation) : 0.0;

  parallel_for(static_cast<std::size_t>(options.trials), [&](std::size_t t) {
    SeededRng trng = rng.child(t);
    double best = 0.0;
    if (canonical) {
      const int k = canonical->k;
      std::vector<int> support;
      if (options.schedule == SupportSchedule::kExhaustive) {
        const std::size_t count = lexicographic.size() / static_cast<std::size_t>(k);
        const std::size_t idx = (t % count) * static_cast<std::size_t>(k);
        support.assign(lexicographic.begin() + static_cast<std::ptrdiff_t>(idx),
                       lexicographic.begin() + static_cast<std::ptrdiff_t>(idx) + k);
      } else {
        support = random_subset(static_cast<int>(n), k, trng);
      }
      SupportEval ev = evaluate_support(gram, support.data(), k, options.ascent_steps > 0);
      best = ev.value;
      for (int step = 0; step < options.ascent_steps && k < n; ++step) {
        ComplexVector v = ComplexVector::Zero(n);
        for (int a = 0; a < k; ++a) v[support[static_cast<std::size_t>(a)]] = ev.vec[a];
        const double sign = ev.signed_ext >= 0.0 ? 1.0 : -1.0;
        const ComplexVector w = sign * (deviation * v) + shift * v;
        std::vector<int> next = top_k_support(w, k);
        if (next == support) break;
        support = std::move(next);
        ev = evaluate_support(gram, support.data(), k, true);
        best = std::max(best, ev.value);
      }
    } else {
      ComplexVector x = sample_sparse(model, n, trng);
      auto dev = [&](const ComplexVector& v) { return (op * v).squaredNorm() - 1.0; };
      double d = dev(x);
      best = std::abs(d);
      for (int step = 0; step < options.ascent_steps; ++step) {
        const double sign = d >= 0.0 ? 1.0 : -1.0;
        ComplexVector w = project_to_model(model, sign * (deviation * x) + shift * x);
        const double nrm = w.norm();
        if (nrm == 0.0) break;
        w /= nrm;
        const double moved = (w - x).norm();
        x = std::move(w);
        d = dev(x);
        best = std::max(best, std::abs(d));
        if (moved < 1e-12) break;
      }
    }
    r.trial_values[t] = best;
  });
  r.delta_hat = *std::max_element(r.trial_values.begin(), r.trial_values.end());
  return r;
}

RipReport empirical_rip(const MeasurementEnsemble& a, const SparsityModel& model,
                        const EmpiricalOptions& options, const SeededRng& rng) {
  return empirical_rip(a.operator_matrix(), model, options, rng);
}

std::pair<int, int> mrip_level_range(double s, double s_max_value) {
  if (!(s >= 1.0)) throw InvalidParameter("s must be >= 1");
  if (!(s_max_value > 0.0)) throw InvalidParameter("s_max must be positive");
  const int lo = static_cast<int>(std::floor(-std::log2(s)));
  const int hi = static_cast<int>(std::ceil(std::log2(s_max_value / s) - 1e-12));
  return {lo, std::max(lo, hi)};
}

double mrip_threshold(int level, double delta, bool extra_factor) {
  const double half = std::pow(2.0, 0.5 * level);
  const double base = std::max(half * delta, half * half * delta * delta);
  return extra_factor ? half * base : base;
}

RipReport mrip_check(const ComplexMatrix& op, double q, double s, double delta,
                     const MripOptions& options, const SeededRng& rng) {
  if (!(delta > 0.0)) throw InvalidParameter("delta must be > 0");
  const double smax = s_max(q, op.cols());
  const auto [lo, hi] = mrip_level_range(s, smax);

  RipReport r;
  r.method = RipMethod::kMonteCarlo;
  r.trials = options.search.trials;
  r.ascent_steps = options.search.ascent_steps;
  r.model = LqCap{q, s};
  r.m = op.rows();
  r.seed = rng.seed();

  ComplexMatrix deviation = gram_of(op);
  deviation.diagonal().array() -= 1.0;
  for (int l = lo; l <= hi; ++l) {
    MripLevel lv;
    lv.level = l;
    lv.level_sparsity = std::ldexp(s, l);
    if (lv.level_sparsity < 1.0) {
      lv.region = LevelRegion::kEmpty;
      lv.observed_sup = 0.0;
    } else if (lv.level_sparsity >= smax) {
      lv.region = LevelRegion::kSphere;
      lv.observed_sup = hermitian_operator_norm(deviation);
    } else {
      lv.region = LevelRegion::kSampled;
      lv.observed_sup = empirical_rip(op, LqCap{q, lv.level_sparsity}, options.search,
                                      rng.child(static_cast<std::uint64_t>(l - lo)))
                            .delta_hat;
    }
    lv.threshold = mrip_threshold(l, delta, options.extra_factor);
    lv.pass = lv.observed_sup <= lv.threshold;
    r.pass = r.pass && lv.pass;
    r.delta_hat = std::max(r.delta_hat, lv.observed_sup);
    r.levels.push_back(lv);
  }
  return r;
}

double calibrate_mrip_delta(const std::vector<MripLevel>& levels, bool extra_factor) {
  double delta = 0.0;
  for (const auto& lv : levels) {
    double scale = std::pow(2.0, 0.5 * lv.level);
    // With the extra factor the threshold is 2^{l/2} * base, so divide it out first.
    const double sup = extra_factor ? lv.observed_sup / scale : lv.observed_sup;
    // sup <= max(scale d, scale^2 d^2) iff d >= min(sup / scale, sqrt(sup) / scale).
    delta = std::max(delta, std::min(sup / scale, std::sqrt(sup) / scale));
  }
  return delta;
}

DistanceCheck distance_bound_check(const ComplexMatrix& op, const ComplexVector& x,
                                   const ComplexVector& y, double s, double delta, double q,
                                   double epsilon) {
  if (!(s > 0.0) || !(delta > 0.0)) throw InvalidParameter("s and delta must be > 0");
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be > 0");
  if (x.size() != y.size() || x.size() != op.cols()) throw InvalidParameter("dimension mismatch");
  const ComplexVector h = x - y;
  const double h2 = h.norm();
  if (h2 == 0.0) throw InvalidParameter("x and y must differ");
  const double hx = lq_norm(h, q);

  DistanceCheck c;
  c.observed = std::abs((op * h).squaredNorm() - h2 * h2);
  c.bound = std::max(std::sqrt(2.0) * delta * hx * h2 / std::sqrt(s), 2.0 * delta * delta * hx * hx / s);
  c.pass = c.observed <= c.bound;

  const double cap = std::sqrt(s) * h2 / (std::sqrt(2.0) * (1.0 + epsilon) * delta);
  const bool sparse_pair = lq_norm(x, q) <= std::sqrt(s) * x.norm() * (1.0 + 1e-12) &&
                           lq_norm(y, q) <= std::sqrt(s) * y.norm() * (1.0 + 1e-12);
  c.refined_applicable = sparse_pair && hx <= cap;
  if (c.refined_applicable) {
    c.refined_bound = std::min(h2 * h2 / (1.0 + epsilon),
                               std::sqrt(2.0) * delta * (x.norm() + y.norm()) * h2);
    c.refined_pass = c.observed <= c.refined_bound;
  }
  return c;
}

WeakDiffConstants weak_diff_constants(std::optional<double> alpha, std::optional<double> beta) {
  const double r2 = std::sqrt(2.0);
  WeakDiffConstants c;
  if (!alpha) {
    c.alpha = 4.0 * r2;
    c.beta = beta.value_or(8.0);
  } else {
    c.alpha = *alpha;
    if (!(c.alpha > 2.0 * r2)) throw DomainError("alpha must exceed 2 sqrt(2)");
    // Smallest admissible beta solves beta^2 - 2 sqrt2 beta = alpha^2; nudge past it.
    c.beta = beta.value_or((r2 + std::sqrt(2.0 + c.alpha * c.alpha)) * (1.0 + 1e-9));
  }
  const double prod = c.alpha * (c.alpha - 2.0 * r2);
  if (!(prod > 8.0)) throw DomainError("alpha must satisfy alpha (alpha - 2 sqrt(2)) > 8");
  if (!(c.beta * (c.beta - 2.0 * r2) > c.alpha * c.alpha)) {
    throw DomainError("beta must satisfy beta (beta - 2 sqrt(2)) > alpha^2");
  }
  c.factor = 2.0 * r2 / std::sqrt(prod);
  return c;
}

DiffVerdict weak_diff_classify(const ComplexMatrix& op, const ComplexVector& x,
                               const ComplexVector& y, double delta,
                               const WeakDiffConstants& constants) {
  if (!(delta > 0.0)) throw InvalidParameter("delta must be > 0");
  if (x.size() != op.cols() || y.size() != op.cols()) throw InvalidParameter("dimension mismatch");
  check_unit(x, "x");
  check_unit(y, "y");
  DiffVerdict v;
  v.measured = (op * (x - y)).norm();
  if (v.measured >= constants.alpha * delta) {
    v.kind = DiffVerdict::Kind::kSeparated;
    const double sq = v.measured * v.measured;
    v.lower = (1.0 - constants.factor) * sq;
    v.upper = (1.0 + constants.factor) * sq;
  } else {
    v.kind = DiffVerdict::Kind::kClose;
    v.radius = constants.beta * delta;
  }
  return v;
}

WidthEstimate gaussian_width(const SparsityModel& model, Eigen::Index n, int trials,
                             const SeededRng& rng) {
  check_model(model);
  if (trials < 2) throw InvalidParameter("trials must be >= 2");
  if (n < 1) throw InvalidParameter("N must be >= 1");
  WidthEstimate est;
  if (const auto* c = std::get_if<Canonical>(&model)) {
    if (c->k > n) throw InvalidParameter("k exceeds N");
  } else if (const auto* l = std::get_if<LqCap>(&model)) {
    est.exact_per_draw = l->q == 1.0 || l->s >= s_max(l->q, n);
  } else if (std::holds_alternative<TensorRank>(model)) {
    est.exact_per_draw = false;
  }
  std::vector<double> sups(static_cast<std::size_t>(trials));
  parallel_for(sups.size(), [&](std::size_t t) {
    SeededRng trng = rng.child(t);
    RealVector xi(n);
    for (Eigen::Index i = 0; i < n; ++i) xi[i] = trng.normal();
    double sup = 0.0;
    if (const auto* c = std::get_if<Canonical>(&model)) {
      std::vector<double> sq(static_cast<std::size_t>(n));
      for (Eigen::Index i = 0; i < n; ++i) sq[static_cast<std::size_t>(i)] = xi[i] * xi[i];
      std::nth_element(sq.begin(), sq.begin() + (c->k - 1), sq.end(), std::greater<>());
      sup = std::sqrt(std::accumulate(sq.begin(), sq.begin() + c->k, 0.0));
    } else if (const auto* r = std::get_if<LowRank>(&model)) {
      const auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
      if (side * side != n) throw InvalidParameter("LowRank needs N = n^2");
      const RealVector sv = singular_values(unflatten_row_major(xi.cast<Complex>(), side, side));
      sup = sv.head(std::min<Eigen::Index>(r->r, side)).norm();
    } else {
      const ComplexVector z = xi.cast<Complex>();
      ComplexVector x = project_to_model(model, z);
      const double nrm = x.norm();
      sup = nrm > 0.0 ? z.dot(x).real() / nrm : 0.0;
    }
    sups[t] = sup;
  });
  double sum = 0.0;
  for (double v : sups) sum += v;
  est.mean = sum / trials;
  double var = 0.0;
  for (double v : sups) var += (v - est.mean) * (v - est.mean);
  var /= (trials - 1);
  est.std_error = std::sqrt(var / trials);
  return est;
}

std::int64_t predict_m_gordon(double width, double delta, double zeta) {
  if (!(width >= 0.0)) throw InvalidParameter("width must be >= 0");
  if (!(delta > 0.0)) throw InvalidParameter("delta must be > 0");
  if (!(zeta > 0.0 && zeta <= 2.0)) throw InvalidParameter("zeta must be in (0, 2]");
  const double t = width + std::sqrt(2.0 * std::log(2.0 / zeta));
  return std::max<std::int64_t>(1, ceil_count(t * t / (delta * delta)));
}

std::int64_t solve_implicit_m(double scale, double cubic, double floor_term) {
  if (!std::isfinite(scale) || !std::isfinite(cubic) || !std::isfinite(floor_term)) {
    throw NumericalError("implicit measurement bound has a non-finite coefficient");
  }
  if (scale < 0.0 || cubic < 0.0) throw InvalidParameter("coefficients must be >= 0");
  auto ok = [&](std::int64_t m) {
    const double lg = 1.0 + std::log(static_cast<double>(m));
    return static_cast<double>(m) >= scale * std::max(cubic * lg * lg * lg, floor_term);
  };
  for (std::int64_t m = 1; m <= 7; ++m) {
    if (ok(m)) return m;
  }
  // m / (1 + ln m)^3 increases for m >= e^2, so the predicate is monotone from 8 on.
  std::int64_t lo = 8;
  std::int64_t hi = std::int64_t{1} << 30;
  if (!ok(hi)) throw CapacityError("no m <= 2^30 satisfies the implicit bound");
  if (ok(lo)) return lo;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::int64_t predict_m_sp(double sp, double delta, double c) {
  if (!(sp > 0.0) || !(delta > 0.0) || !(c > 0.0)) throw InvalidParameter("sp, delta and c must be > 0");
  return solve_implicit_m(c * sp / (delta * delta), 1.0, 0.0);
}

double calibrate_sp_constant(double sp, double delta, std::int64_t observed_m) {
  if (!(sp > 0.0) || !(delta > 0.0) || observed_m < 1) throw InvalidParameter("bad calibration input");
  const double lg = 1.0 + std::log(static_cast<double>(observed_m));
  return static_cast<double>(observed_m) * delta * delta / (lg * lg * lg * sp);
}

namespace {

void check_stft(int n, int window_length, double alpha, int k, double delta, double zeta, double c) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw InvalidParameter("alpha must be in (0, 0.5)");
  if (n < 1 || window_length < 1 || window_length > n) throw InvalidParameter("need 1 <= Neta <= N");
  if (k < 1) throw InvalidParameter("k must be >= 1");
  if (!(delta > 0.0) || !(c > 0.0)) throw InvalidParameter("delta and c must be > 0");
  if (!(zeta > 0.0 && zeta < 1.0)) throw InvalidParameter("zeta must be in (0, 1)");
  if (window_length == 1) throw DomainError("Neta = 1 makes the window factor 1 - Neta^{2a-1} vanish");
}

double window_factor(int n, int window_length, double alpha) {
  const double ne = window_length;
  return std::pow(ne, 2.0 * alpha) * n / (ne * (1.0 - std::pow(ne, 2.0 * alpha - 1.0)));
}

}  // namespace

std::int64_t predict_m_stft(int n, int window_length, double alpha, int k, double delta,
                            double zeta, double c) {
  check_stft(n, window_length, alpha, k, delta, zeta, c);
  const double scale = c / (delta * delta) * k * window_factor(n, window_length, alpha) *
                       std::pow(1.0 + std::log(static_cast<double>(window_length)), 2.0 * alpha) /
                       std::pow(static_cast<double>(k), 2.0 * alpha);
  return solve_implicit_m(scale, std::pow(alpha, -3.0), std::log(1.0 / zeta));
}

std::int64_t predict_m_stft_classical(int n, int window_length, double alpha, int k,
                                      double delta, double zeta, double c) {
  check_stft(n, window_length, alpha, k, delta, zeta, c);
  const double scale = c / (delta * delta) * k * window_factor(n, window_length, alpha);
  return solve_implicit_m(scale, 1.0 + std::log(static_cast<double>(n)), std::log(1.0 / zeta));
}

std::string to_string(Table1Row row) {
  switch (row) {
    case Table1Row::kGaussian: return "gauss";
    case Table1Row::kGroup: return "group";
    case Table1Row::kGroupSign: return "group+sign";
  }
  return "gauss";
}

Table1Row table1_row_from_string(const std::string& name) {
  if (name == "gauss") return Table1Row::kGaussian;
  if (name == "group") return Table1Row::kGroup;
  if (name == "group+sign") return Table1Row::kGroupSign;
  throw InvalidParameter("unknown table row '" + name + "'");
}

std::int64_t predict_m_table1(Table1Row row, std::int64_t s, std::int64_t n, std::int64_t d) {
  if (s < 1 || n < 1 || d < 1) throw InvalidParameter("s, n, d must be >= 1");
  const double est = static_cast<double>(s) * n * d * (row == Table1Row::kGaussian ? 1.0
                                                       : row == Table1Row::kGroup ? double(n) * d
                                                                                   : double(d) * d);
  if (est > 9.0e18) throw CapacityError("table count overflows");
  switch (row) {
    case Table1Row::kGaussian: return s * n * d;
    case Table1Row::kGroup: return s * n * n * d * d;
    case Table1Row::kGroupSign: return s * n * d * d * d;
  }
  return 0;
}

}  // namespace riplab

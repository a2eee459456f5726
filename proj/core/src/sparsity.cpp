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

#include "riplab/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "riplab/errors.hpp"

namespace riplab {
namespace {

struct ModelChecker {
  void operator()(const Canonical& m) const {
    if (m.k < 1) throw InvalidParameter("k must be >= 1");
  }
  void operator()(const LqCap& m) const {
    if (!(m.q >= 1.0 && m.q < 2.0)) throw InvalidParameter("q must be in [1, 2)");
    if (!(m.s >= 1.0)) throw InvalidParameter("s must be >= 1 (no vector has ||x||_q < ||x||_2)");
  }
  void operator()(const LowRank& m) const {
    if (m.r < 1) throw InvalidParameter("r must be >= 1");
  }
  void operator()(const TensorRank& m) const {
    if (m.s < 1 || m.n < 1 || m.d < 1) throw InvalidParameter("tensor s, n, d must be >= 1");
  }
};

Eigen::Index square_side(Eigen::Index ambient) {
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(ambient))));
  if (n * n != ambient) throw InvalidParameter("LowRank needs an ambient dimension n^2");
  return n;
}

Eigen::Index tensor_size(const TensorRank& t) {
  double size = std::pow(static_cast<double>(t.n), t.d);
  if (size > 1e8) throw CapacityError("tensor ambient dimension n^d too large");
  return static_cast<Eigen::Index>(std::llround(size));
}

ComplexVector normalized(ComplexVector x) {
  const double nrm = x.norm();
  if (nrm == 0.0) throw NumericalError("sampled a zero vector");
  return x / nrm;
}

ComplexVector random_phases_on(const std::vector<int>& support, Eigen::Index n, SeededRng& rng) {
  ComplexVector x = ComplexVector::Zero(n);
  for (int i : support) x[i] = rng.unit_phase();
  return x;
}

// Outer product of d vectors, first factor most significant.
ComplexVector outer(const std::vector<ComplexVector>& factors) {
  ComplexVector out = ComplexVector::Ones(1);
  for (const auto& f : factors) {
    ComplexVector next(out.size() * f.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) next.segment(i * f.size(), f.size()) = out[i] * f;
    out = std::move(next);
  }
  return out;
}

// <T, u_1 (x) ... (x) u_d> with mode `skip` left open: returns the vector
// contracted against every factor except that mode.
ComplexVector contract_except(const ComplexVector& t, const std::vector<ComplexVector>& u, int skip,
                              int n, int d) {
  ComplexVector out = ComplexVector::Zero(n);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (Eigen::Index flat = 0; flat < t.size(); ++flat) {
    Eigen::Index rem = flat;
    for (int mode = d - 1; mode >= 0; --mode) {
      idx[static_cast<std::size_t>(mode)] = static_cast<int>(rem % n);
      rem /= n;
    }
    Complex w = t[flat];
    for (int mode = 0; mode < d; ++mode) {
      if (mode != skip) w *= std::conj(u[static_cast<std::size_t>(mode)][idx[static_cast<std::size_t>(mode)]]);
    }
    out[idx[static_cast<std::size_t>(skip)]] += w;
  }
  return out;
}

ComplexVector best_rank_one(const ComplexVector& t, int n, int d) {
  std::vector<ComplexVector> u(static_cast<std::size_t>(d));
  // Start from the dominant entry's fibres: deterministic and never orthogonal to t.
  Eigen::Index arg = 0;
  t.cwiseAbs().maxCoeff(&arg);
  for (int mode = d - 1; mode >= 0; --mode) {
    u[static_cast<std::size_t>(mode)] = ComplexVector::Constant(n, 0.1);
    u[static_cast<std::size_t>(mode)][arg % n] = 1.0;
    u[static_cast<std::size_t>(mode)].normalize();
    arg /= n;
  }
  for (int sweep = 0; sweep < 25; ++sweep) {
    for (int mode = 0; mode < d; ++mode) {
      ComplexVector v = contract_except(t, u, mode, n, d);
      const double nrm = v.norm();
      if (nrm == 0.0) return ComplexVector::Zero(t.size());
      u[static_cast<std::size_t>(mode)] = v / nrm;
    }
  }
  const ComplexVector r1 = outer(u);
  return r1.dot(t) * r1;
}

ComplexVector soft_threshold(const ComplexVector& x, double tau) {
  ComplexVector y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    y[i] = a > tau ? x[i] * ((a - tau) / a) : Complex(0.0);
  }
  return y;
}

}  // namespace

void check_model(const SparsityModel& model) { std::visit(ModelChecker{}, model); }

std::string describe(const SparsityModel& model) {
  std::ostringstream os;
  os.precision(6);
  if (const auto* c = std::get_if<Canonical>(&model)) {
    os << "canonical:k=" << c->k;
  } else if (const auto* l = std::get_if<LqCap>(&model)) {
    os << "lqcap:q=" << l->q << ";s=" << l->s;
  } else if (const auto* r = std::get_if<LowRank>(&model)) {
    os << "lowrank:r=" << r->r;
  } else {
    const auto& t = std::get<TensorRank>(model);
    os << "tensorrank:s=" << t.s << ";n=" << t.n << ";d=" << t.d;
  }
  return os.str();
}

double sparsity_level(const ComplexVector& x, NormIndex q) {
  const double l2 = x.norm();
  if (l2 == 0.0) throw InvalidParameter("sparsity_level of the zero vector");
  const double ratio = lq_norm(x, q) / l2;
  return ratio * ratio;
}

double sparsity_level(const ComplexMatrix& x, NormIndex q) {
  const double s2 = x.norm();
  if (s2 == 0.0) throw InvalidParameter("sparsity_level of the zero matrix");
  const double ratio = schatten_norm(x, q) / s2;
  return ratio * ratio;
}

double s_max(double q, Eigen::Index n) {
  if (!(q >= 1.0 && q < 2.0)) throw InvalidParameter("q must be in [1, 2)");
  if (n < 1) throw InvalidParameter("N must be >= 1");
  return std::pow(static_cast<double>(n), 2.0 / q - 1.0);
}

int lqcap_support_size(double q, double s, Eigen::Index n) {
  check_model(LqCap{q, s});
  const double e = 2.0 / q - 1.0;
  // j^e <= s  <=>  j <= s^{1/e}; guard the floor against rounding.
  auto j = static_cast<Eigen::Index>(std::floor(std::pow(s, 1.0 / e) * (1.0 + 1e-12)));
  while (j > 1 && std::pow(static_cast<double>(j), e) > s * (1.0 + 1e-12)) --j;
  return static_cast<int>(std::clamp<Eigen::Index>(j, 1, n));
}

ComplexVector sample_sparse(const SparsityModel& model, Eigen::Index ambient, SeededRng& rng) {
  check_model(model);
  if (ambient < 1) throw InvalidParameter("ambient dimension must be >= 1");
  if (const auto* c = std::get_if<Canonical>(&model)) {
    if (c->k > ambient) throw InvalidParameter("k exceeds the ambient dimension");
    const auto support = random_subset(static_cast<int>(ambient), c->k, rng);
    ComplexVector x = ComplexVector::Zero(ambient);
    for (int i : support) x[i] = rng.complex_normal();
    return normalized(std::move(x));
  }
  if (const auto* l = std::get_if<LqCap>(&model)) {
    const int j = lqcap_support_size(l->q, l->s, ambient);
    const auto support = random_subset(static_cast<int>(ambient), j, rng);
    return normalized(random_phases_on(support, ambient, rng));
  }
  if (const auto* r = std::get_if<LowRank>(&model)) {
    const Eigen::Index n = square_side(ambient);
    if (r->r > n) throw InvalidParameter("rank exceeds the matrix side");
    const ComplexMatrix u = complex_gaussian_matrix(n, r->r, rng);
    const ComplexMatrix v = complex_gaussian_matrix(n, r->r, rng);
    return normalized(flatten_row_major(u * v.adjoint()));
  }
  const auto& t = std::get<TensorRank>(model);
  if (tensor_size(t) != ambient) throw InvalidParameter("tensor n^d does not match the ambient dimension");
  ComplexVector x = ComplexVector::Zero(ambient);
  for (int term = 0; term < t.s; ++term) {
    std::vector<ComplexVector> factors;
    for (int mode = 0; mode < t.d; ++mode) factors.push_back(complex_gaussian_vector(t.n, rng));
    x += outer(factors);
  }
  return normalized(std::move(x));
}

std::pair<ComplexVector, ComplexVector> sample_sparse_pair(const SparsityModel& model,
                                                           Eigen::Index ambient, SeededRng& rng,
                                                           double max_jitter) {
  if (!(max_jitter > 0.0)) throw InvalidParameter("max_jitter must be > 0");
  ComplexVector x = sample_sparse(model, ambient, rng);
  const bool jitterable = std::holds_alternative<Canonical>(model) || std::holds_alternative<LqCap>(model);
  if (jitterable && rng.uniform() < 0.5) {
    ComplexVector y = x;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (y[i] == Complex(0.0)) continue;
      // Strictly positive angle so y != x.
      const double angle = max_jitter * (1.0 - rng.uniform());
      y[i] *= std::polar(1.0, rng.rademacher() * angle);
    }
    return {std::move(x), std::move(y)};
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    ComplexVector y = sample_sparse(model, ambient, rng);
    if ((y - x).norm() > 1e-12) return {std::move(x), std::move(y)};
  }
  throw NumericalError("could not draw a distinct pair");
}

ComplexVector project_to_model(const SparsityModel& model, const ComplexVector& x) {
  check_model(model);
  if (const auto* c = std::get_if<Canonical>(&model)) {
    if (c->k >= x.size()) return x;
    std::vector<Eigen::Index> order(static_cast<std::size_t>(x.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(x[a]) > std::abs(x[b]);
    });
    ComplexVector y = ComplexVector::Zero(x.size());
    for (int i = 0; i < c->k; ++i) y[order[static_cast<std::size_t>(i)]] = x[order[static_cast<std::size_t>(i)]];
    return y;
  }
  if (const auto* l = std::get_if<LqCap>(&model)) {
    if (x.norm() == 0.0 || sparsity_level(x, l->q) <= l->s) return x;
    double lo = 0.0;
    double hi = x.cwiseAbs().maxCoeff();
    // Soft-thresholding with hi just below the peak leaves one entry: level 1 <= s.
    hi *= 1.0 - 1e-12;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      const ComplexVector y = soft_threshold(x, mid);
      if (y.norm() > 0.0 && sparsity_level(y, l->q) <= l->s) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return soft_threshold(x, hi);
  }
  if (const auto* r = std::get_if<LowRank>(&model)) {
    const Eigen::Index n = square_side(x.size());
    const ComplexMatrix a = unflatten_row_major(x, n, n);
    Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::Index keep = std::min<Eigen::Index>(r->r, n);
    const ComplexMatrix low = svd.matrixU().leftCols(keep) *
                              svd.singularValues().head(keep).asDiagonal() *
                              svd.matrixV().leftCols(keep).adjoint();
    return flatten_row_major(low);
  }
  const auto& t = std::get<TensorRank>(model);
  if (tensor_size(t) != x.size()) throw InvalidParameter("tensor n^d does not match the vector length");
  ComplexVector residual = x;
  ComplexVector out = ComplexVector::Zero(x.size());
  for (int term = 0; term < t.s; ++term) {
    const ComplexVector r1 = best_rank_one(residual, t.n, t.d);
    out += r1;
    residual -= r1;
  }
  return out;
}

std::vector<double> sp_grid_points(const SpGrid& grid) {
  if (!(grid.q_min > 2.0) || !(grid.q_max >= grid.q_min) || grid.points < 1) {
    throw InvalidParameter("sp grid needs 2 < q'_min <= q'_max and points >= 1");
  }
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(grid.points) + 1);
  if (grid.points == 1) {
    pts.push_back(grid.q_min);
  } else {
    const double step = std::log(grid.q_max / grid.q_min) / (grid.points - 1);
    for (int i = 0; i < grid.points; ++i) pts.push_back(grid.q_min * std::exp(step * i));
    pts.back() = grid.q_max;
  }
  if (grid.include_infinity) pts.push_back(std::numeric_limits<double>::infinity());
  return pts;
}

namespace {

RealVector instrument_moduli(const Instrument& eta) {
  if (eta.is_matrix()) return singular_values(eta.matrix());
  return eta.vector().cwiseAbs();
}

double objective_from_moduli(const RealVector& moduli, int r, NormIndex q_dual, double cubic_cap) {
  const double nrm = lq_norm_of_moduli(moduli, q_dual);
  const double cubic = q_dual.is_infinite() ? cubic_cap : q_dual.value();
  const double r_pow = std::pow(static_cast<double>(r), 1.0 - 2.0 * q_dual.reciprocal());
  return cubic * cubic * cubic * r_pow * nrm * nrm;
}

}  // namespace

double sp_objective(const Instrument& eta, int r, NormIndex q_dual, double cubic_cap) {
  if (r < 1) throw InvalidParameter("r must be >= 1");
  if (!q_dual.is_infinite() && !(q_dual.value() > 2.0)) throw InvalidParameter("q' must exceed 2");
  return objective_from_moduli(instrument_moduli(eta), r, q_dual, cubic_cap);
}

SpOptResult sp_eta_optimize(const Instrument& eta, int r, const SpGrid& grid) {
  if (r < 1) throw InvalidParameter("r must be >= 1");
  SpOptResult out;
  out.grid = sp_grid_points(grid);
  const RealVector moduli = instrument_moduli(eta);
  out.values.reserve(out.grid.size());
  out.value = std::numeric_limits<double>::infinity();
  for (double q : out.grid) {
    const NormIndex idx = std::isinf(q) ? NormIndex::infinity() : NormIndex(q);
    const double f = objective_from_moduli(moduli, r, idx, grid.q_max);
    if (!std::isfinite(f)) throw NumericalError("sp objective is not finite");
    out.values.push_back(f);
    if (f < out.value) {
      out.value = f;
      out.q_opt = q;
    }
  }
  return out;
}

}  // namespace riplab

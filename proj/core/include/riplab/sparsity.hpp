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

#ifndef RIPLAB_SPARSITY_HPP_
#define RIPLAB_SPARSITY_HPP_

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "riplab/instruments.hpp"
#include "riplab/numerics.hpp"

namespace riplab {

// At most k nonzero entries.
struct Canonical {
  int k = 1;
};

// ||x||_q <= sqrt(s) ||x||_2 with 1 <= q < 2.
struct LqCap {
  double q = 1.0;
  double s = 1.0;
};

// n x n matrices of rank <= r, flattened row-major.
struct LowRank {
  int r = 1;
};

// Sums of s rank-one tensors in (C^n)^{(x) d}, flattened with the first mode
// most significant.
struct TensorRank {
  int s = 1;
  int n = 2;
  int d = 2;
};

using SparsityModel = std::variant<Canonical, LqCap, LowRank, TensorRank>;

// Validates field ranges; throws InvalidParameter.
void check_model(const SparsityModel& model);

// Short tag without commas, safe for a CSV cell ("canonical:k=4").
std::string describe(const SparsityModel& model);

// (||x||_q / ||x||_2)^2, the smallest s for which x is (B_q, s)-sparse.
double sparsity_level(const ComplexVector& x, NormIndex q);
// Same with Schatten norms.
double sparsity_level(const ComplexMatrix& x, NormIndex q);

// sup ||x||_q^2 / ||x||_2^2 over C^N, i.e. N^{2/q - 1}.
double s_max(double q, Eigen::Index n);

// Support size of the flat extremal witness for LqCap(q, s) in C^N:
// max{ j : j^{2/q-1} <= s }, capped at N.
int lqcap_support_size(double q, double s, Eigen::Index n);

// Random unit-norm member of the model in C^ambient.
//   Canonical:  uniform support, complex Gaussian entries.
//   LqCap:      flat moduli on a random support of lqcap_support_size, random phases.
//   LowRank:    U S V^* with Gaussian factors (ambient = n^2).
//   TensorRank: sum of s Gaussian rank-one tensors (ambient = n^d).
ComplexVector sample_sparse(const SparsityModel& model, Eigen::Index ambient, SeededRng& rng);

// Maps x to a nearby member of the model (not normalized):
//   Canonical:  keep the k largest moduli.
//   LqCap:      soft-threshold the moduli until the cap holds.
//   LowRank:    truncated SVD.
//   TensorRank: greedy rank-one deflation by higher-order power iteration.
ComplexVector project_to_model(const SparsityModel& model, const ComplexVector& x);

// Two distinct unit-norm members of the model. Half the draws are independent;
// the rest jitter the phases of x entrywise by up to max_jitter radians, which
// keeps the moduli (so Canonical/LqCap membership) and gives close pairs. Other
// models always draw independently.
std::pair<ComplexVector, ComplexVector> sample_sparse_pair(const SparsityModel& model,
                                                           Eigen::Index ambient, SeededRng& rng,
                                                           double max_jitter = 0.3);

struct SpGrid {
  double q_min = 2.0 + 1e-3;
  double q_max = 128.0;
  int points = 200;
  bool include_infinity = true;
};

struct SpOptResult {
  double q_opt = 0.0;  // +inf when the infinity entry wins
  double value = 0.0;
  std::vector<double> grid;  // ascending; last entry +inf when included
  std::vector<double> values;
};

// f(q') = (q')^3 r^{1-2/q'} ||eta||_{q'}^2, Schatten norms for matrix
// instruments. At q' = inf the cubic factor is capped at cubic_cap^3.
double sp_objective(const Instrument& eta, int r, NormIndex q_dual, double cubic_cap = 128.0);

// Grid minimisation of sp_objective; ties go to the smaller q'.
SpOptResult sp_eta_optimize(const Instrument& eta, int r, const SpGrid& grid = {});

// The log-spaced grid used by sp_eta_optimize.
std::vector<double> sp_grid_points(const SpGrid& grid);

}  // namespace riplab

#endif  // RIPLAB_SPARSITY_HPP_

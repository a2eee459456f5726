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

#ifndef RIPLAB_INFDIM_HPP_
#define RIPLAB_INFDIM_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "riplab/numerics.hpp"

namespace riplab {

// A trigonometric polynomial on [0, 1) stored by its Fourier coefficients
// f^(k) for k in [-B, B), at index k + B. B is the simulation bandwidth.
class FourierFunction {
 public:
  explicit FourierFunction(int bandwidth);
  FourierFunction(int bandwidth, ComplexVector coeffs);

  // psi_k(t) = exp(2 pi i k t).
  static FourierFunction mode(int bandwidth, int k);

  int bandwidth() const { return bandwidth_; }
  const ComplexVector& coeffs() const { return coeffs_; }
  bool in_band(int k) const { return k >= -bandwidth_ && k < bandwidth_; }
  // Zero outside the band.
  Complex coeff(int k) const { return in_band(k) ? coeffs_[k + bandwidth_] : Complex(0.0); }
  void set_coeff(int k, Complex value);

  // Direct evaluation of sum_k f^(k) exp(2 pi i k t).
  Complex evaluate(double t) const;
  // f(p / points) for p = 0..points-1 by FFT; points >= 2B.
  ComplexVector samples(int points) const;
  // Default quadrature size: 8 B points.
  int quadrature_points() const { return 8 * bandwidth_; }

  FourierFunction& operator+=(const FourierFunction& other);
  FourierFunction& operator*=(Complex c);

 private:
  int bandwidth_;
  ComplexVector coeffs_;
};

FourierFunction operator+(FourierFunction a, const FourierFunction& b);
FourierFunction operator*(Complex c, FourierFunction f);

// Translation to the right by t: coefficient k picks up exp(-2 pi i k t).
FourierFunction shift(const FourierFunction& f, double t);

enum class DerivativeDirection { kDerivative, kAntiderivative };

// Normalized derivative D: f^(k) -> k f^(k), i.e. f' / (2 pi i). The
// antiderivative maps f^(k) -> f^(k)/k and needs a zero DC coefficient.
FourierFunction differentiate(const FourierFunction& f, DerivativeDirection direction);

// w_k = 1 on [-N, N), 0 elsewhere.
struct TruncatedWeight {
  int n = 1;
};
// w_k = 1 / max(k^2, 1).
struct InverseSquareWeight {};
// w_k for k in [-B, B) at index k + B; zero outside.
struct CustomWeight {
  std::vector<double> w;
};
using WeightSpec = std::variant<TruncatedWeight, InverseSquareWeight, CustomWeight>;

double weight_at(const WeightSpec& w, int k);

// sqrt(sum_k w_k |f^(k)|^2).
double weighted_seminorm(const FourierFunction& f, const WeightSpec& w);

// ||f||_{L_2} = l2 norm of the coefficients.
double l2_norm_function(const FourierFunction& f);

// L_q(0,1) norm by the mean of |f|^q over `points` uniform samples
// (0 = quadrature_points()).
double lq_norm_function(const FourierFunction& f, double q, int points = 0);

// Standard bump phi(x) = exp(1 - 1/(1 - 4x^2)) on |x| < 1/2.
double bump(double x);
double bump_derivative(double x);
// ||phi||_{L_p} and ||phi'||_{L_2} / ||phi||_{L_2} by composite Simpson on [-1/2, 1/2].
double bump_lp_norm(double p);
double bump_derivative_ratio();

// sum_j a_j phi_T(t - t_j) with phi_T(x) = T phi(T x).
struct BumpSuperposition {
  double scale = 1.0;  // T
  std::vector<double> centers;
  std::vector<Complex> amplitudes;

  // Throws InvalidParameter on center collision or overlapping supports.
  void validate() const;
  // Measure of the union of the support intervals on the circle.
  double support_measure() const;
  // ||phi||_{L_p} T^{1/p'} (sum |a_j|^p)^{1/p}.
  double lp_norm(double p) const;
  // (||phi'|| / ||phi||) T under the physical derivative.
  double derivative_ratio() const;
};

// Fourier coefficients of a bump superposition on [-B, B), computed from an
// FFT of one centred bump sampled at max(8 B, 64 T) points.
FourierFunction from_bumps(const BumpSuperposition& bumps, int bandwidth);

// Smallest power of two >= 128 T (keeps the truncated spectral tail far
// below 1e-10 of the energy).
int recommended_bandwidth(double scale);

struct KMembership {
  bool member = false;
  double measured_rho = 0.0;           // ||D f|| / ||f||, normalized derivative
  double measured_rho_physical = 0.0;  // 2 pi measured_rho
  double measured_gamma = 0.0;         // fraction of samples above tol * max |f|
};

// Membership in {||f'|| <= rho ||f||, |supp f| <= gamma}, with rho compared
// against the normalized-derivative ratio.
KMembership k_rho_gamma_membership(const FourierFunction& f, double rho, double gamma,
                                   double support_tol = 1e-8);

enum class BlockMode { kDeterministic, kRademacher };

// d contiguous blocks J_l = (-N + (l-1) L + j - 1)_{j=1..L} of [-N, N), with
// one sign per position j shared by all blocks.
struct BlockInstrument {
  int n = 1;
  int block_length = 1;  // L
  int blocks = 2;        // d
  BlockMode mode = BlockMode::kDeterministic;
  std::vector<int> signs;  // length L

  int frequency(int block, int position) const { return -n + block * block_length + position; }
};

// Requires 2N = L d. Rademacher signs come from rng; deterministic signs are +1.
BlockInstrument make_block_instrument(int n, int block_length, BlockMode mode, SeededRng& rng);

// Component l: sum_j sign_j exp(-2 pi i k_{l,j} t) f^(k_{l,j}).
ComplexVector block_measure(const FourierFunction& f, const BlockInstrument& inst, double t);

// g(t) computed as sum_{j != 0} (D g)^(j) / j exp(2 pi i j t). Requires g^(0) = 0.
Complex time_sample_measure(const FourierFunction& g, double t);
// Variant for g with a DC term: the sample of g - g^(0) and g^(0) separately.
std::pair<Complex, Complex> time_sample_measure_with_dc(const FourierFunction& g, double t);

// I_0 = {0}; I_l = {k : 2^{l-2} < |k| <= 2^{l-1}} for l >= 1.
std::vector<int> dyadic_block(int level);

// sum_{k in I_l} exp(-2 pi i k t) g^(k); zero for l < 0.
Complex dyadic_measure(const FourierFunction& g, double t, int level);

// sum_{l > l0} |dyadic_measure(g, t, l)|^2 over every block touching the band.
double dyadic_tail(const FourierFunction& g, double t, int l0);

// Smallest l0 >= 1 with 2^{-2 l0 / q'} <= delta / (2 C2 s), q' = q/(q-1).
int truncation_level(double q, double s, double delta, double c2);

// max over the given functions and l0 = 1..max_level of
//   tail(l0) 2^{2 l0 / q'} / (s ||g||^2)  with s ||g||^2 = ||D g||_{L_q}^2.
// Used as the empirical C2.
double calibrate_truncation_constant(const std::vector<FourierFunction>& gs, double q,
                                     int max_level, const std::vector<double>& times = {0.0});

enum class SchemeKind { kBlocks, kTimeSampling, kDyadic };

struct Scheme {
  SchemeKind kind = SchemeKind::kBlocks;
  BlockInstrument blocks;  // kBlocks
  int l0 = 1;              // kDyadic: keeps levels 0..l0
};

// ||u(tau_t f)||^2 for the scheme.
double scheme_energy(const Scheme& scheme, const FourierFunction& f, double t);
// The seminorm the scheme is unbiased for: ||f||_{2,w} with Truncated(N)
// for blocks, ||g||_{L_2} for the other two.
double scheme_reference_norm(const Scheme& scheme, const FourierFunction& f);

using FunctionSampler = std::function<FourierFunction(SeededRng&)>;

struct InfdimReport {
  int m = 0;
  std::vector<double> deviations;  // one per trial
  double delta_hat = 0.0;          // max over trials
  double median = 0.0;
};

// Trial t uses rng.child(t): first the m translations, then the functions.
// Each trial's value is the largest |(1/m) sum_j ||u(tau_{t_j} f)||^2 - 1|
// over functions_per_trial sampled f normalized to reference norm 1.
InfdimReport infdim_rip_experiment(const FunctionSampler& sampler, const Scheme& scheme, int m,
                                   int trials, int functions_per_trial, const SeededRng& rng);

}  // namespace riplab

#endif  // RIPLAB_INFDIM_HPP_

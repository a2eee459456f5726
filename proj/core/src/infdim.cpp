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

#include "riplab/infdim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/FFT>

#include "riplab/errors.hpp"

namespace riplab {
namespace {

int wrap_index(long long k, int p) {
  const long long r = k % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

Complex phase(double turns) { return std::polar(1.0, 2.0 * kPi * turns); }

int next_pow2(long long v) {
  long long p = 1;
  while (p < v) p <<= 1;
  if (p > (1LL << 26)) throw CapacityError("FFT size exceeds 2^26 points");
  return static_cast<int>(p);
}

void require_dc_free(const FourierFunction& g, const char* what) {
  const double tol = 1e-12 * std::max(1.0, l2_norm_function(g));
  if (std::abs(g.coeff(0)) > tol) {
    throw InvalidParameter(std::string(what) + " requires a zero DC coefficient");
  }
}

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

double simpson(const std::function<double(double)>& fn, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double sum = fn(a) + fn(b);
  for (int i = 1; i < intervals; ++i) sum += fn(a + h * i) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

FourierFunction::FourierFunction(int bandwidth)
    : bandwidth_(bandwidth), coeffs_(ComplexVector::Zero(2 * static_cast<Eigen::Index>(bandwidth))) {
  if (bandwidth < 1) throw InvalidParameter("bandwidth must be >= 1");
}

FourierFunction::FourierFunction(int bandwidth, ComplexVector coeffs)
    : bandwidth_(bandwidth), coeffs_(std::move(coeffs)) {
  if (bandwidth < 1) throw InvalidParameter("bandwidth must be >= 1");
  if (coeffs_.size() != 2 * static_cast<Eigen::Index>(bandwidth)) {
    throw InvalidParameter("coefficient array must have length 2 * bandwidth");
  }
  if (!coeffs_.allFinite()) throw InvalidParameter("coefficients must be finite");
}

FourierFunction FourierFunction::mode(int bandwidth, int k) {
  FourierFunction f(bandwidth);
  f.set_coeff(k, 1.0);
  return f;
}

void FourierFunction::set_coeff(int k, Complex value) {
  if (!in_band(k)) throw InvalidParameter("frequency outside the simulation band");
  coeffs_[k + bandwidth_] = value;
}

Complex FourierFunction::evaluate(double t) const {
  Complex sum = 0.0;
  for (int k = -bandwidth_; k < bandwidth_; ++k) {
    const Complex c = coeffs_[k + bandwidth_];
    if (c != Complex(0.0)) sum += c * phase(std::fmod(static_cast<double>(k) * t, 1.0));
  }
  return sum;
}

ComplexVector FourierFunction::samples(int points) const {
  if (points < 2 * bandwidth_) throw InvalidParameter("need at least 2B sample points");
  std::vector<Complex> spec(static_cast<std::size_t>(points), Complex(0.0));
  for (int k = -bandwidth_; k < bandwidth_; ++k) spec[static_cast<std::size_t>(wrap_index(k, points))] += coeffs_[k + bandwidth_];
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> out;
  fft.inv(out, spec);
  ComplexVector v(points);
  for (int p = 0; p < points; ++p) v[p] = out[static_cast<std::size_t>(p)];
  return v;
}

FourierFunction& FourierFunction::operator+=(const FourierFunction& other) {
  if (other.bandwidth_ != bandwidth_) throw InvalidParameter("bandwidth mismatch");
  coeffs_ += other.coeffs_;
  return *this;
}

FourierFunction& FourierFunction::operator*=(Complex c) {
  coeffs_ *= c;
  return *this;
}

FourierFunction operator+(FourierFunction a, const FourierFunction& b) { return a += b; }
FourierFunction operator*(Complex c, FourierFunction f) { return f *= c; }

FourierFunction shift(const FourierFunction& f, double t) {
  FourierFunction g = f;
  const int b = f.bandwidth();
  for (int k = -b; k < b; ++k) {
    g.set_coeff(k, f.coeff(k) * phase(-std::fmod(static_cast<double>(k) * t, 1.0)));
  }
  return g;
}

FourierFunction differentiate(const FourierFunction& f, DerivativeDirection direction) {
  FourierFunction g(f.bandwidth());
  const int b = f.bandwidth();
  if (direction == DerivativeDirection::kDerivative) {
    for (int k = -b; k < b; ++k) g.set_coeff(k, static_cast<double>(k) * f.coeff(k));
    return g;
  }
  require_dc_free(f, "antiderivative");
  for (int k = -b; k < b; ++k) {
    if (k != 0) g.set_coeff(k, f.coeff(k) / static_cast<double>(k));
  }
  return g;
}

double weight_at(const WeightSpec& w, int k) {
  if (const auto* t = std::get_if<TruncatedWeight>(&w)) return (k >= -t->n && k < t->n) ? 1.0 : 0.0;
  if (std::holds_alternative<InverseSquareWeight>(w)) {
    const double kk = static_cast<double>(k) * k;
    return 1.0 / std::max(kk, 1.0);
  }
  const auto& c = std::get<CustomWeight>(w).w;
  const auto half = static_cast<long long>(c.size() / 2);
  const long long idx = k + half;
  return (idx >= 0 && idx < static_cast<long long>(c.size())) ? c[static_cast<std::size_t>(idx)] : 0.0;
}

double weighted_seminorm(const FourierFunction& f, const WeightSpec& w) {
  if (const auto* t = std::get_if<TruncatedWeight>(&w)) {
    if (t->n < 1) throw InvalidParameter("truncation N must be >= 1");
  }
  if (const auto* c = std::get_if<CustomWeight>(&w)) {
    if (c->w.size() % 2) throw InvalidParameter("custom weights need an even length 2B");
    for (double v : c->w) {
      if (!(v >= 0.0)) throw InvalidParameter("weights must be nonnegative");
    }
  }
  double sum = 0.0;
  const int b = f.bandwidth();
  for (int k = -b; k < b; ++k) sum += weight_at(w, k) * std::norm(f.coeff(k));
  return std::sqrt(sum);
}

double l2_norm_function(const FourierFunction& f) { return f.coeffs().norm(); }

double lq_norm_function(const FourierFunction& f, double q, int points) {
  if (!(q >= 1.0) || std::isinf(q)) throw InvalidParameter("q must be in [1, inf)");
  const int p = points > 0 ? points : f.quadrature_points();
  const ComplexVector v = f.samples(p);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) sum += std::pow(std::abs(v[i]), q);
  return std::pow(sum / p, 1.0 / q);
}

double bump(double x) {
  const double u = 1.0 - 4.0 * x * x;
  if (u <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / u);
}

double bump_derivative(double x) {
  const double u = 1.0 - 4.0 * x * x;
  if (u <= 0.0) return 0.0;
  // d/dx exp(1 - 1/u) = exp(1 - 1/u) * u'/u^2 with u' = -8x.
  return bump(x) * (-8.0 * x) / (u * u);
}

double bump_lp_norm(double p) {
  if (!(p >= 1.0)) throw InvalidParameter("p must be >= 1");
  const double integral = simpson([p](double x) { return std::pow(bump(x), p); }, -0.5, 0.5, 200000);
  return std::pow(integral, 1.0 / p);
}

double bump_derivative_ratio() {
  const double num = simpson([](double x) { return bump_derivative(x) * bump_derivative(x); }, -0.5, 0.5, 200000);
  const double den = simpson([](double x) { return bump(x) * bump(x); }, -0.5, 0.5, 200000);
  return std::sqrt(num / den);
}

void BumpSuperposition::validate() const {
  if (!(scale >= 1.0) || !std::isfinite(scale)) throw InvalidParameter("bump scale T must be >= 1");
  if (centers.empty()) throw InvalidParameter("need at least one bump center");
  if (centers.size() != amplitudes.size()) throw InvalidParameter("centers and coefficients differ in length");
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (!std::isfinite(centers[i])) throw InvalidParameter("bump centers must be finite");
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      const double d = circular_distance(centers[i], centers[j]);
      if (d < 1e-12) throw InvalidParameter("bump center collision");
      if (d <= 1.0 / scale) throw InvalidParameter("bump supports overlap (centers must be > 1/T apart on the circle)");
    }
  }
  if (centers.size() > 1 && static_cast<double>(centers.size()) / scale > 1.0) {
    throw InvalidParameter("bump supports wrap onto each other");
  }
}

double BumpSuperposition::support_measure() const {
  validate();
  std::vector<std::pair<double, double>> pieces;
  const double half = 0.5 / scale;
  for (double c : centers) {
    const double lo = c - half;
    const double hi = c + half;
    const double base = std::floor(lo);
    const double a = lo - base;
    const double b = hi - base;
    if (b <= 1.0) {
      pieces.emplace_back(a, b);
    } else {
      pieces.emplace_back(a, 1.0);
      pieces.emplace_back(0.0, std::min(1.0, b - 1.0));
    }
  }
  std::sort(pieces.begin(), pieces.end());
  double total = 0.0;
  double cur_lo = pieces.front().first;
  double cur_hi = pieces.front().second;
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i].first > cur_hi) {
      total += cur_hi - cur_lo;
      cur_lo = pieces[i].first;
      cur_hi = pieces[i].second;
    } else {
      cur_hi = std::max(cur_hi, pieces[i].second);
    }
  }
  return total + (cur_hi - cur_lo);
}

double BumpSuperposition::lp_norm(double p) const {
  validate();
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::pow(std::abs(a), p);
  return bump_lp_norm(p) * std::pow(scale, 1.0 - 1.0 / p) * std::pow(sum, 1.0 / p);
}

double BumpSuperposition::derivative_ratio() const { return bump_derivative_ratio() * scale; }

FourierFunction from_bumps(const BumpSuperposition& bumps, int bandwidth) {
  bumps.validate();
  const int points = next_pow2(std::max<long long>(8LL * bandwidth, static_cast<long long>(std::ceil(64.0 * bumps.scale))));
  std::vector<Complex> samples(static_cast<std::size_t>(points));
  for (int p = 0; p < points; ++p) {
    double u = static_cast<double>(p) / points;
    if (u >= 0.5) u -= 1.0;
    samples[static_cast<std::size_t>(p)] = bumps.scale * bump(bumps.scale * u);
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> spectrum;
  fft.fwd(spectrum, samples);

  FourierFunction f(bandwidth);
  for (int k = -bandwidth; k < bandwidth; ++k) {
    const Complex centred = spectrum[static_cast<std::size_t>(wrap_index(k, points))] / static_cast<double>(points);
    Complex c = 0.0;
    for (std::size_t j = 0; j < bumps.centers.size(); ++j) {
      c += bumps.amplitudes[j] * phase(-std::fmod(static_cast<double>(k) * bumps.centers[j], 1.0));
    }
    f.set_coeff(k, c * centred);
  }
  return f;
}

int recommended_bandwidth(double scale) {
  if (!(scale >= 1.0)) throw InvalidParameter("bump scale T must be >= 1");
  return next_pow2(static_cast<long long>(std::ceil(128.0 * scale)));
}

KMembership k_rho_gamma_membership(const FourierFunction& f, double rho, double gamma,
                                   double support_tol) {
  if (!(support_tol > 0.0)) throw InvalidParameter("support_tol must be > 0");
  const double nrm = l2_norm_function(f);
  if (nrm == 0.0) throw InvalidParameter("membership of the zero function");
  KMembership out;
  out.measured_rho = l2_norm_function(differentiate(f, DerivativeDirection::kDerivative)) / nrm;
  out.measured_rho_physical = 2.0 * kPi * out.measured_rho;
  const ComplexVector v = f.samples(f.quadrature_points());
  const double peak = v.cwiseAbs().maxCoeff();
  Eigen::Index above = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) above += std::abs(v[i]) > support_tol * peak;
  out.measured_gamma = static_cast<double>(above) / static_cast<double>(v.size());
  out.member = out.measured_rho <= rho && out.measured_gamma <= gamma;
  return out;
}

BlockInstrument make_block_instrument(int n, int block_length, BlockMode mode, SeededRng& rng) {
  if (n < 1 || block_length < 1) throw InvalidParameter("N and L must be >= 1");
  if ((2 * n) % block_length != 0) throw InvalidParameter("2N must be a multiple of L");
  BlockInstrument inst;
  inst.n = n;
  inst.block_length = block_length;
  inst.blocks = 2 * n / block_length;
  inst.mode = mode;
  inst.signs.assign(static_cast<std::size_t>(block_length), 1);
  if (mode == BlockMode::kRademacher) {
    for (auto& s : inst.signs) s = rng.rademacher();
  }
  return inst;
}

ComplexVector block_measure(const FourierFunction& f, const BlockInstrument& inst, double t) {
  if (inst.block_length * inst.blocks != 2 * inst.n ||
      static_cast<int>(inst.signs.size()) != inst.block_length) {
    throw InvalidParameter("inconsistent block instrument (need 2N = L d)");
  }
  ComplexVector out = ComplexVector::Zero(inst.blocks);
  for (int l = 0; l < inst.blocks; ++l) {
    Complex sum = 0.0;
    for (int j = 0; j < inst.block_length; ++j) {
      const int k = inst.frequency(l, j);
      const Complex c = f.coeff(k);
      if (c != Complex(0.0)) {
        sum += static_cast<double>(inst.signs[static_cast<std::size_t>(j)]) *
               phase(-std::fmod(static_cast<double>(k) * t, 1.0)) * c;
      }
    }
    out[l] = sum;
  }
  return out;
}

Complex time_sample_measure(const FourierFunction& g, double t) {
  require_dc_free(g, "time_sample_measure");
  const FourierFunction dg = differentiate(g, DerivativeDirection::kDerivative);
  Complex sum = 0.0;
  const int b = g.bandwidth();
  for (int j = -b; j < b; ++j) {
    if (j == 0) continue;
    const Complex c = dg.coeff(j);
    if (c != Complex(0.0)) sum += c / static_cast<double>(j) * phase(std::fmod(static_cast<double>(j) * t, 1.0));
  }
  return sum;
}

std::pair<Complex, Complex> time_sample_measure_with_dc(const FourierFunction& g, double t) {
  FourierFunction centred = g;
  const Complex dc = g.coeff(0);
  centred.set_coeff(0, 0.0);
  return {time_sample_measure(centred, t), dc};
}

std::vector<int> dyadic_block(int level) {
  if (level < 0) return {};
  if (level == 0) return {0};
  if (level > 31) throw CapacityError("dyadic level too large");
  std::vector<int> out;
  const long long hi = 1LL << (level - 1);
  // 2^{l-2} < |k| for l = 1 means |k| >= 1.
  const long long lo = level >= 2 ? (1LL << (level - 2)) + 1 : 1;
  for (long long k = -hi; k <= -lo; ++k) out.push_back(static_cast<int>(k));
  for (long long k = lo; k <= hi; ++k) out.push_back(static_cast<int>(k));
  return out;
}

Complex dyadic_measure(const FourierFunction& g, double t, int level) {
  Complex sum = 0.0;
  for (int k : dyadic_block(level)) {
    const Complex c = g.coeff(k);
    if (c != Complex(0.0)) sum += phase(-std::fmod(static_cast<double>(k) * t, 1.0)) * c;
  }
  return sum;
}

double dyadic_tail(const FourierFunction& g, double t, int l0) {
  double tail = 0.0;
  const long long band = g.bandwidth();
  for (int l = std::max(l0 + 1, 1); l <= 31; ++l) {
    const long long lo = l >= 2 ? (1LL << (l - 2)) : 0;
    if (lo >= band) break;
    tail += std::norm(dyadic_measure(g, t, l));
  }
  return tail;
}

int truncation_level(double q, double s, double delta, double c2) {
  if (!(q > 1.0 && q <= 2.0)) throw InvalidParameter("q must be in (1, 2]");
  if (!(s > 0.0) || !(delta > 0.0) || !(c2 > 0.0)) throw InvalidParameter("s, delta and C2 must be > 0");
  const double qd = q / (q - 1.0);
  const double target = delta / (2.0 * c2 * s);
  auto ok = [&](int l0) { return std::pow(2.0, -2.0 * l0 / qd) <= target; };
  int l0 = std::max(1, static_cast<int>(std::ceil(0.5 * qd * std::log2(1.0 / target))));
  if (l0 > 4096) throw CapacityError("truncation level exceeds 4096");
  while (l0 > 1 && ok(l0 - 1)) --l0;
  while (!ok(l0)) ++l0;
  return l0;
}

double calibrate_truncation_constant(const std::vector<FourierFunction>& gs, double q,
                                     int max_level, const std::vector<double>& times) {
  if (!(q > 1.0 && q <= 2.0)) throw InvalidParameter("q must be in (1, 2]");
  if (max_level < 1) throw InvalidParameter("max_level must be >= 1");
  const double qd = q / (q - 1.0);
  double c2 = 0.0;
  for (const auto& g : gs) {
    const FourierFunction dg = differentiate(g, DerivativeDirection::kDerivative);
    const double dq = q == 2.0 ? l2_norm_function(dg) : lq_norm_function(dg, q);
    if (dq == 0.0) continue;
    for (int l0 = 1; l0 <= max_level; ++l0) {
      for (double t : times) {
        c2 = std::max(c2, dyadic_tail(g, t, l0) * std::pow(2.0, 2.0 * l0 / qd) / (dq * dq));
      }
    }
  }
  return c2;
}

double scheme_energy(const Scheme& scheme, const FourierFunction& f, double t) {
  switch (scheme.kind) {
    case SchemeKind::kBlocks: return block_measure(f, scheme.blocks, t).squaredNorm();
    case SchemeKind::kTimeSampling: return std::norm(time_sample_measure(f, t));
    case SchemeKind::kDyadic: {
      double sum = 0.0;
      for (int l = 0; l <= scheme.l0; ++l) sum += std::norm(dyadic_measure(f, t, l));
      return sum;
    }
  }
  return 0.0;
}

double scheme_reference_norm(const Scheme& scheme, const FourierFunction& f) {
  if (scheme.kind == SchemeKind::kBlocks) return weighted_seminorm(f, TruncatedWeight{scheme.blocks.n});
  return l2_norm_function(f);
}

InfdimReport infdim_rip_experiment(const FunctionSampler& sampler, const Scheme& scheme, int m,
                                   int trials, int functions_per_trial, const SeededRng& rng) {
  if (m < 1 || trials < 1 || functions_per_trial < 1) {
    throw InvalidParameter("m, trials and functions per trial must be >= 1");
  }
  if (scheme.kind == SchemeKind::kDyadic && scheme.l0 < 0) throw InvalidParameter("l0 must be >= 0");
  InfdimReport rep;
  rep.m = m;
  rep.deviations.assign(static_cast<std::size_t>(trials), 0.0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
    SeededRng trng = rng.child(trial);
    std::vector<double> times(static_cast<std::size_t>(m));
    for (auto& t : times) t = trng.uniform();
    double worst = 0.0;
    for (int fi = 0; fi < functions_per_trial; ++fi) {
      FourierFunction f = sampler(trng);
      double ref = scheme_reference_norm(scheme, f);
      for (int attempt = 0; ref < 1e-8; ++attempt) {
        if (attempt == 100) throw NumericalError("model sampler keeps producing degenerate functions");
        f = sampler(trng);
        ref = scheme_reference_norm(scheme, f);
      }
      f *= Complex(1.0 / ref);
      double avg = 0.0;
      for (double t : times) avg += scheme_energy(scheme, f, t);
      avg /= m;
      worst = std::max(worst, std::abs(avg - 1.0));
    }
    rep.deviations[trial] = worst;
  });
  rep.delta_hat = *std::max_element(rep.deviations.begin(), rep.deviations.end());
  std::vector<double> sorted = rep.deviations;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  rep.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return rep;
}

}  // namespace riplab

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

#include "riplab/group_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riplab/errors.hpp"

namespace riplab {
namespace {

int mod(long long a, int n) {
  const long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

// exp(2 pi i num / den) with the numerator reduced first.
Complex root_of_unity(long long num, int den) {
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(mod(num, den)) / den);
}

ComplexVector apply_shift_mod(const ShiftMod& g, const ComplexVector& x) {
  const int n = g.modulus;
  ComplexVector y(n);
  for (int i = 0; i < n; ++i) {
    // Index l = i + 1 in the 1-based convention of the modulation.
    y[i] = root_of_unity(static_cast<long long>(i + 1) * g.t, n) * x[mod(i - g.k, n)];
  }
  return y;
}

ComplexMatrix apply_double_qft(const DoubleQft& g, const ComplexMatrix& a) {
  const int n = g.modulus;
  ComplexMatrix b(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const long long phase = static_cast<long long>(r + 1) * g.k -
                              static_cast<long long>(c + 1) * g.k2;
      b(r, c) = root_of_unity(phase, n) * a(mod(r - g.j, n), mod(c - g.j2, n));
    }
  }
  return b;
}

ComplexVector apply_sign_shift(const SignShift& g, const ComplexVector& x) {
  const int n = static_cast<int>(g.signs.size());
  ComplexVector y(n);
  for (int i = 0; i < n; ++i) {
    const int src = mod(i - g.shift, n);
    y[i] = static_cast<double>(g.signs[static_cast<std::size_t>(src)]) * x[src];
  }
  return y;
}

void check_modulus(int modulus) {
  if (modulus < 1) throw InvalidParameter("group modulus must be >= 1");
}

std::vector<int> rademacher_vector(int n, SeededRng& rng) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (auto& v : s) v = rng.rademacher();
  return s;
}

ComplexVector apply_signs(const std::vector<int>& signs, ComplexVector v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] *= static_cast<double>(signs[static_cast<std::size_t>(i)]);
  return v;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::kShiftMod: return "shiftmod";
    case GroupKind::kDoubleQft: return "doubleqft";
    case GroupKind::kSignShift: return "signshift";
  }
  return "shiftmod";
}

GroupKind group_kind_from_string(const std::string& name) {
  if (name == "shiftmod") return GroupKind::kShiftMod;
  if (name == "doubleqft") return GroupKind::kDoubleQft;
  if (name == "signshift") return GroupKind::kSignShift;
  throw InvalidParameter("unknown group '" + name + "'");
}

std::string to_string(SignMode mode) {
  switch (mode) {
    case SignMode::kNone: return "none";
    case SignMode::kRandomSign: return "random-sign";
    case SignMode::kAbsorbed: return "absorbed";
  }
  return "none";
}

SignMode sign_mode_from_string(const std::string& name) {
  if (name == "none") return SignMode::kNone;
  if (name == "random-sign") return SignMode::kRandomSign;
  if (name == "absorbed") return SignMode::kAbsorbed;
  throw InvalidParameter("unknown sign mode '" + name + "'");
}

ShiftMod make_shift_mod(int t, int k, int modulus) {
  check_modulus(modulus);
  return ShiftMod{mod(t, modulus), mod(k, modulus), modulus};
}

DoubleQft make_double_qft(int k, int j, int k2, int j2, int modulus) {
  check_modulus(modulus);
  return DoubleQft{mod(k, modulus), mod(j, modulus), mod(k2, modulus), mod(j2, modulus), modulus};
}

SignShift make_sign_shift(std::vector<int> signs, int shift) {
  const int n = static_cast<int>(signs.size());
  check_modulus(n);
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidParameter("sign entries must be +1 or -1");
  }
  return SignShift{std::move(signs), mod(shift, n)};
}

GroupKind kind_of(const GroupElement& g) {
  if (std::holds_alternative<ShiftMod>(g)) return GroupKind::kShiftMod;
  if (std::holds_alternative<DoubleQft>(g)) return GroupKind::kDoubleQft;
  return GroupKind::kSignShift;
}

Eigen::Index acting_dimension(const GroupElement& g) {
  if (const auto* s = std::get_if<ShiftMod>(&g)) return s->modulus;
  if (const auto* d = std::get_if<DoubleQft>(&g)) return static_cast<Eigen::Index>(d->modulus) * d->modulus;
  return static_cast<Eigen::Index>(std::get<SignShift>(g).signs.size());
}

ComplexVector apply_group(const GroupElement& g, const ComplexVector& x) {
  if (x.size() != acting_dimension(g)) {
    throw InvalidParameter("apply_group: dimension mismatch (expected " +
                           std::to_string(acting_dimension(g)) + ", got " +
                           std::to_string(x.size()) + ")");
  }
  if (const auto* s = std::get_if<ShiftMod>(&g)) return apply_shift_mod(*s, x);
  if (const auto* d = std::get_if<DoubleQft>(&g)) {
    return flatten_row_major(apply_double_qft(*d, unflatten_row_major(x, d->modulus, d->modulus)));
  }
  return apply_sign_shift(std::get<SignShift>(g), x);
}

ComplexMatrix apply_group(const GroupElement& g, const ComplexMatrix& a) {
  const auto* d = std::get_if<DoubleQft>(&g);
  if (d == nullptr) throw InvalidParameter("apply_group: matrix input requires a DoubleQft element");
  if (a.rows() != d->modulus || a.cols() != d->modulus) {
    throw InvalidParameter("apply_group: matrix dimension mismatch");
  }
  return apply_double_qft(*d, a);
}

ComplexMatrix representation_matrix(const GroupElement& g) {
  const Eigen::Index n = acting_dimension(g);
  ComplexMatrix rep(n, n);
  ComplexVector e = ComplexVector::Zero(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    e[c] = 1.0;
    rep.col(c) = apply_group(g, e);
    e[c] = 0.0;
  }
  return rep;
}

GroupElement sample_group_element(GroupKind kind, int modulus, SeededRng& rng) {
  check_modulus(modulus);
  const auto n = static_cast<std::uint64_t>(modulus);
  switch (kind) {
    case GroupKind::kShiftMod: {
      const int t = static_cast<int>(rng.uniform_int(n));
      const int k = static_cast<int>(rng.uniform_int(n));
      return ShiftMod{t, k, modulus};
    }
    case GroupKind::kDoubleQft: {
      const int k = static_cast<int>(rng.uniform_int(n));
      const int j = static_cast<int>(rng.uniform_int(n));
      const int k2 = static_cast<int>(rng.uniform_int(n));
      const int j2 = static_cast<int>(rng.uniform_int(n));
      return DoubleQft{k, j, k2, j2, modulus};
    }
    case GroupKind::kSignShift: {
      auto signs = rademacher_vector(modulus, rng);
      const int shift = static_cast<int>(rng.uniform_int(n));
      return SignShift{std::move(signs), shift};
    }
  }
  throw InvalidParameter("unknown group kind");
}

std::vector<GroupElement> enumerate_group(GroupKind kind, int modulus, std::size_t max_order) {
  check_modulus(modulus);
  const auto n = static_cast<std::size_t>(modulus);
  std::vector<GroupElement> out;
  switch (kind) {
    case GroupKind::kShiftMod: {
      if (n * n > max_order) throw CapacityError("group order exceeds enumeration limit");
      for (int t = 0; t < modulus; ++t) {
        for (int k = 0; k < modulus; ++k) out.emplace_back(ShiftMod{t, k, modulus});
      }
      break;
    }
    case GroupKind::kDoubleQft: {
      if (n * n * n * n > max_order) throw CapacityError("group order exceeds enumeration limit");
      for (int k = 0; k < modulus; ++k)
        for (int j = 0; j < modulus; ++j)
          for (int k2 = 0; k2 < modulus; ++k2)
            for (int j2 = 0; j2 < modulus; ++j2) out.emplace_back(DoubleQft{k, j, k2, j2, modulus});
      break;
    }
    case GroupKind::kSignShift: {
      if (modulus > 20 || (std::size_t{1} << n) * n > max_order) {
        throw CapacityError("group order exceeds enumeration limit");
      }
      for (std::size_t pattern = 0; pattern < (std::size_t{1} << n); ++pattern) {
        std::vector<int> signs(n);
        for (std::size_t i = 0; i < n; ++i) signs[i] = (pattern >> i) & 1u ? -1 : 1;
        for (int s = 0; s < modulus; ++s) out.emplace_back(SignShift{signs, s});
      }
      break;
    }
  }
  return out;
}

MeasurementEnsemble::MeasurementEnsemble(ComplexMatrix rows, EnsembleProvenance provenance)
    : rows_(std::move(rows)), provenance_(std::move(provenance)) {
  if (rows_.rows() < 1) throw InvalidParameter("ensemble must have m >= 1 rows");
  operator_ = rows_.conjugate();
}

const ComplexMatrix& MeasurementEnsemble::stage() const {
  if (!stage_) throw InvalidParameter("ensemble has no Gaussian stage");
  return *stage_;
}

MeasurementEnsemble MeasurementEnsemble::with_stage(ComplexMatrix stage,
                                                    EnsembleProvenance provenance) const {
  if (stage.cols() != operator_.rows()) {
    throw InvalidParameter("stage column count must equal the ensemble output dimension");
  }
  MeasurementEnsemble out(rows_, std::move(provenance));
  out.operator_ = stage * operator_;
  out.stage_ = std::move(stage);
  return out;
}

MeasurementEnsemble sample_ensemble(const Instrument& eta, GroupKind group, int m,
                                    SignMode sign_mode, const SeededRng& rng_in) {
  if (m < 1) throw InvalidParameter("m must be >= 1");
  if (group == GroupKind::kSignShift) sign_mode = SignMode::kAbsorbed;
  if (sign_mode == SignMode::kAbsorbed) {
    if (eta.is_matrix()) throw InvalidParameter("absorbed signs require a vector instrument");
    group = GroupKind::kSignShift;
  }
  if ((group == GroupKind::kDoubleQft) != eta.is_matrix()) {
    throw InvalidParameter("DoubleQft pairs with matrix instruments, other groups with vectors");
  }

  SeededRng rng = rng_in;
  const int modulus = static_cast<int>(eta.dimension());
  const ComplexVector base = eta.flattened();
  const Eigen::Index dim = base.size();

  EnsembleProvenance prov;
  prov.instrument_kind = eta.kind();
  prov.instrument_params = eta.params();
  prov.instrument_dimension = eta.dimension();
  prov.group = group;
  prov.sign_mode = sign_mode;
  prov.m = m;
  prov.seed = rng_in.seed();
  prov.stream = rng_in.stream();

  if (sign_mode == SignMode::kRandomSign) prov.signs = rademacher_vector(static_cast<int>(dim), rng);

  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  ComplexMatrix rows(m, dim);
  prov.elements.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    GroupElement g = sample_group_element(group, modulus, rng);
    ComplexVector r = apply_group(g, base);
    if (sign_mode == SignMode::kRandomSign) r = apply_signs(prov.signs, std::move(r));
    rows.row(j) = scale * r.transpose();
    prov.elements.push_back(std::move(g));
  }
  return MeasurementEnsemble(std::move(rows), std::move(prov));
}

MeasurementEnsemble sample_gaussian_ensemble(int m, int n, const SeededRng& rng_in) {
  if (m < 1 || n < 1) throw InvalidParameter("m and N must be >= 1");
  SeededRng rng = rng_in;
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  ComplexMatrix rows(m, n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) rows(i, j) = scale * rng.normal();
  }
  EnsembleProvenance prov;
  prov.family = "gaussian";
  prov.instrument_dimension = n;
  prov.m = m;
  prov.seed = rng_in.seed();
  prov.stream = rng_in.stream();
  return MeasurementEnsemble(std::move(rows), std::move(prov));
}

MeasurementEnsemble compose_gaussian(const MeasurementEnsemble& a, int m_out,
                                     const SeededRng& rng_in) {
  if (m_out < 1) throw InvalidParameter("m_out must be >= 1");
  SeededRng rng = rng_in;
  const Eigen::Index inner = a.output_dimension();
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_out));
  ComplexMatrix stage(m_out, inner);
  for (int i = 0; i < m_out; ++i) {
    for (Eigen::Index j = 0; j < inner; ++j) stage(i, j) = scale * rng.normal();
  }
  EnsembleProvenance prov = a.provenance();
  prov.stage_rows = m_out;
  prov.stage_seed = rng_in.seed();
  prov.stage_stream = rng_in.stream();
  return a.with_stage(std::move(stage), std::move(prov));
}

MeasurementEnsemble compose_stage(const MeasurementEnsemble& a, ComplexMatrix stage) {
  EnsembleProvenance prov = a.provenance();
  prov.stage_rows = static_cast<int>(stage.rows());
  return a.with_stage(std::move(stage), std::move(prov));
}

MeasurementEnsemble regenerate_ensemble(const EnsembleProvenance& p) {
  const SeededRng rng(p.seed, p.stream);
  MeasurementEnsemble base = [&] {
    if (p.family == "gaussian") {
      return sample_gaussian_ensemble(p.m, static_cast<int>(p.instrument_dimension), rng);
    }
    const int n = static_cast<int>(p.instrument_dimension);
    const auto& ip = p.instrument_params;
    switch (p.instrument_kind) {
      case InstrumentKind::kFlat:
        return sample_ensemble(make_flat(n), p.group, p.m, p.sign_mode, rng);
      case InstrumentKind::kDecayingWindow:
        return sample_ensemble(make_decaying_window(n, ip.window_length, ip.alpha), p.group, p.m,
                               p.sign_mode, rng);
      case InstrumentKind::kScaledIdentityMatrix:
        return sample_ensemble(make_scaled_identity_matrix(n), p.group, p.m, p.sign_mode, rng);
      case InstrumentKind::kSchattenDecayMatrix: {
        SeededRng irng(ip.seed, ip.stream);
        return sample_ensemble(make_schatten_decay_matrix(n, ip.alpha, irng), p.group, p.m,
                               p.sign_mode, rng);
      }
      case InstrumentKind::kCustom:
        break;
    }
    throw InvalidParameter("custom instruments cannot be regenerated from provenance");
  }();
  if (p.stage_rows) {
    return compose_gaussian(base, *p.stage_rows, SeededRng(p.stage_seed, p.stage_stream));
  }
  return base;
}

double isotropy_defect(const Instrument& eta, GroupKind group) {
  const int n = static_cast<int>(eta.dimension());
  if (group == GroupKind::kShiftMod && n > 16) throw CapacityError("isotropy_defect: ShiftMod requires N <= 16");
  if (group == GroupKind::kDoubleQft && n > 4) throw CapacityError("isotropy_defect: DoubleQft requires n <= 4");
  if (group == GroupKind::kSignShift && n > 8) throw CapacityError("isotropy_defect: SignShift requires N <= 8");
  if ((group == GroupKind::kDoubleQft) != eta.is_matrix()) {
    throw InvalidParameter("DoubleQft pairs with matrix instruments, other groups with vectors");
  }
  const ComplexVector base = eta.flattened();
  const auto elements = enumerate_group(group, n);
  const Eigen::Index dim = base.size();
  ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
  for (const auto& g : elements) {
    const ComplexVector v = apply_group(g, base);
    acc.noalias() += v * v.adjoint();
  }
  acc /= static_cast<double>(elements.size());
  acc -= ComplexMatrix::Identity(dim, dim);
  return hermitian_operator_norm(acc);
}

std::vector<RosenthalStats> rosenthal_deviation(const ComplexMatrix& u, GroupKind group,
                                                const std::vector<int>& sample_counts,
                                                int trials, const SeededRng& rng) {
  if (trials < 1) throw InvalidParameter("trials must be >= 1");
  const Eigen::Index dim = u.cols();
  const double trace = u.squaredNorm();
  if (std::abs(trace - static_cast<double>(dim)) > 1e-8 * std::max<double>(1.0, dim)) {
    throw InvalidParameter("rosenthal_deviation requires tr(u^* u) = N");
  }
  int modulus = static_cast<int>(dim);
  if (group == GroupKind::kDoubleQft) {
    modulus = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    if (static_cast<Eigen::Index>(modulus) * modulus != dim) {
      throw InvalidParameter("DoubleQft requires u to act on n^2-dimensional vectors");
    }
  }
  const ComplexMatrix gram = u.adjoint() * u;

  std::vector<RosenthalStats> out;
  for (std::size_t mi = 0; mi < sample_counts.size(); ++mi) {
    const int count = sample_counts[mi];
    if (count < 1) throw InvalidParameter("sample counts must be >= 1");
    RosenthalStats stats;
    stats.num_samples = count;
    stats.deviations.assign(static_cast<std::size_t>(trials), 0.0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
      SeededRng trng = rng.child((static_cast<std::uint64_t>(mi) << 32) | trial);
      ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
      for (int j = 0; j < count; ++j) {
        const ComplexMatrix rep = representation_matrix(sample_group_element(group, modulus, trng));
        acc.noalias() += rep.adjoint() * gram * rep;
      }
      acc /= static_cast<double>(count);
      acc -= ComplexMatrix::Identity(dim, dim);
      stats.deviations[trial] = hermitian_operator_norm(acc);
    });
    double sum = 0.0;
    for (double d : stats.deviations) sum += d;
    stats.mean = sum / trials;
    stats.median = median_of(stats.deviations);
    out.push_back(std::move(stats));
  }
  return out;
}

}  // namespace riplab

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

#ifndef RIPLAB_GROUP_OPS_HPP_
#define RIPLAB_GROUP_OPS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "riplab/instruments.hpp"
#include "riplab/numerics.hpp"

namespace riplab {

enum class GroupKind { kShiftMod, kDoubleQft, kSignShift };

std::string to_string(GroupKind kind);
GroupKind group_kind_from_string(const std::string& name);

// Lambda^t Sh^k on C^N, where Lambda e_l = exp(2 pi i l / N) e_l (l = 1..N)
// and Sh e_l = e_{l+1} cyclically.
struct ShiftMod {
  int t = 0;
  int k = 0;
  int modulus = 1;
};

// a -> Lambda^k Sh^j a (Sh^{j2})^* Lambda^{-k2} on n x n matrices.
struct DoubleQft {
  int k = 0;
  int j = 0;
  int k2 = 0;
  int j2 = 0;
  int modulus = 1;
};

// x -> Sh^shift D_signs x: entrywise signs, then a cyclic shift.
struct SignShift {
  std::vector<int> signs;
  int shift = 0;
};

using GroupElement = std::variant<ShiftMod, DoubleQft, SignShift>;

// Constructors reduce indices into [0, modulus).
ShiftMod make_shift_mod(int t, int k, int modulus);
DoubleQft make_double_qft(int k, int j, int k2, int j2, int modulus);
SignShift make_sign_shift(std::vector<int> signs, int shift);

GroupKind kind_of(const GroupElement& g);

// Length of the vectors g acts on (N, or n^2 for DoubleQft on flattened matrices).
Eigen::Index acting_dimension(const GroupElement& g);

// sigma(g) x. DoubleQft elements act on row-major flattened n x n matrices.
ComplexVector apply_group(const GroupElement& g, const ComplexVector& x);
ComplexMatrix apply_group(const GroupElement& g, const ComplexMatrix& a);

// Dense unitary matrix of sigma(g).
ComplexMatrix representation_matrix(const GroupElement& g);

// Uniform draw from the group of the given kind; modulus is N (or n).
GroupElement sample_group_element(GroupKind kind, int modulus, SeededRng& rng);

// Every element of the group. Throws CapacityError above max_order elements.
std::vector<GroupElement> enumerate_group(GroupKind kind, int modulus,
                                          std::size_t max_order = 1u << 16);

enum class SignMode { kNone, kRandomSign, kAbsorbed };

std::string to_string(SignMode mode);
SignMode sign_mode_from_string(const std::string& name);

// Enough to regenerate an ensemble from its seed.
struct EnsembleProvenance {
  // "group" for orbit ensembles, "gaussian" for i.i.d. Gaussian rows.
  std::string family = "group";
  InstrumentKind instrument_kind = InstrumentKind::kFlat;
  InstrumentParams instrument_params;
  Eigen::Index instrument_dimension = 0;
  GroupKind group = GroupKind::kShiftMod;
  SignMode sign_mode = SignMode::kNone;
  int m = 0;
  std::vector<GroupElement> elements;
  // RandomSign: the single diagonal shared by all rows.
  std::vector<int> signs;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  // Gaussian composition stage, when attached.
  std::optional<int> stage_rows;
  std::uint64_t stage_seed = 0;
  std::uint64_t stage_stream = 0;
};

// m functionals r_j on an ambient space of dimension N, realised as explicit
// rows. The measurement of x is (<r_j, x>)_j, optionally followed by a
// Gaussian stage Xi.
class MeasurementEnsemble {
 public:
  MeasurementEnsemble(ComplexMatrix rows, EnsembleProvenance provenance);

  Eigen::Index m() const { return rows_.rows(); }
  Eigen::Index ambient_dimension() const { return rows_.cols(); }
  // Row j holds r_j (already scaled by 1/sqrt(m)).
  const ComplexMatrix& rows() const { return rows_; }
  const EnsembleProvenance& provenance() const { return provenance_; }

  bool has_stage() const { return stage_.has_value(); }
  const ComplexMatrix& stage() const;

  // Effective linear map x -> A x: conj(rows), left-multiplied by the stage.
  const ComplexMatrix& operator_matrix() const { return operator_; }
  Eigen::Index output_dimension() const { return operator_.rows(); }

  ComplexVector measure(const ComplexVector& x) const { return operator_ * x; }

  // Copy with a stage attached; the effective operator becomes stage * A.
  MeasurementEnsemble with_stage(ComplexMatrix stage, EnsembleProvenance provenance) const;

 private:
  ComplexMatrix rows_;
  EnsembleProvenance provenance_;
  std::optional<ComplexMatrix> stage_;
  ComplexMatrix operator_;
};

// Rows r_j = m^{-1/2} D sigma(g_j) eta with g_j i.i.d. uniform.
//   kNone:       D = Id.
//   kRandomSign: one Rademacher diagonal drawn first and shared by all rows.
//   kAbsorbed:   elements drawn from {-1,1}^N x| Z_N, fresh signs per row.
// group == kSignShift is the absorbed group and implies kAbsorbed.
MeasurementEnsemble sample_ensemble(const Instrument& eta, GroupKind group, int m,
                                    SignMode sign_mode, const SeededRng& rng);

// Rows m^{-1/2} xi_j with xi_j standard real Gaussian in R^N.
MeasurementEnsemble sample_gaussian_ensemble(int m, int n, const SeededRng& rng);

// Attaches Xi (m_out x M, i.i.d. N(0,1)/sqrt(m_out)) after A.
MeasurementEnsemble compose_gaussian(const MeasurementEnsemble& a, int m_out,
                                     const SeededRng& rng);
// Same with a caller-supplied stage matrix.
MeasurementEnsemble compose_stage(const MeasurementEnsemble& a, ComplexMatrix stage);

// Rebuilds an ensemble from provenance alone (bit-identical for the same
// seed). Custom instruments cannot be rebuilt and raise InvalidParameter.
MeasurementEnsemble regenerate_ensemble(const EnsembleProvenance& provenance);

// ||(1/|G|) sum_g sigma(g) eta (sigma(g) eta)^* - Id||_{S_inf} by enumeration.
// Throws CapacityError for N > 16 (ShiftMod), n > 4 (DoubleQft), N > 8 (SignShift).
double isotropy_defect(const Instrument& eta, GroupKind group);

struct RosenthalStats {
  int num_samples = 0;  // M
  double median = 0.0;
  double mean = 0.0;
  std::vector<double> deviations;  // one per trial, in trial order
};

// For each M: statistics over trials of
//   ||(1/M) sum_j sigma(g_j)^* u^* u sigma(g_j) - Id||_{S_inf}
// with u of shape d x N and tr(u^* u) = N.
std::vector<RosenthalStats> rosenthal_deviation(const ComplexMatrix& u, GroupKind group,
                                                const std::vector<int>& sample_counts,
                                                int trials, const SeededRng& rng);

}  // namespace riplab

#endif  // RIPLAB_GROUP_OPS_HPP_

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

#ifndef RIPLAB_SERIALIZE_HPP_
#define RIPLAB_SERIALIZE_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "riplab/group_ops.hpp"
#include "riplab/infdim.hpp"
#include "riplab/instruments.hpp"
#include "riplab/rip.hpp"
#include "riplab/sparsity.hpp"

namespace riplab {

using Json = nlohmann::json;

// Complex numbers travel as [re, im] pairs.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

// {kind, params, shape, entries}; entries row-major for matrices.
Json to_json(const Instrument& eta);
// Rejects payloads that break the normalization invariant.
Instrument instrument_from_json(const Json& j);

Json to_json(const GroupElement& g);
GroupElement group_element_from_json(const Json& j);

Json to_json(const EnsembleProvenance& p);
EnsembleProvenance provenance_from_json(const Json& j);

// {provenance, rows, stage?}.
Json to_json(const MeasurementEnsemble& a);
MeasurementEnsemble ensemble_from_json(const Json& j);

Json to_json(const SparsityModel& model);
SparsityModel model_from_json(const Json& j);

// {delta_hat, method, model, m, levels[], ...}.
Json to_json(const RipReport& report);
Json to_json(const SpOptResult& result);

// {bandwidth, coeffs: [[re, im], ...]} for k = -B..B-1.
Json to_json(const FourierFunction& f);
FourierFunction function_from_json(const Json& j);

// Shortest round-trip decimal text, "inf" / "-inf" / "nan" for non-finite values.
std::string format_double(double v);
// "re+imi" / "re-imi".
std::string format_complex(Complex z);

}  // namespace riplab

#endif  // RIPLAB_SERIALIZE_HPP_

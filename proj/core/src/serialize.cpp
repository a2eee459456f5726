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

#include "riplab/serialize.hpp"

#include <cmath>
#include <charconv>

#include "riplab/errors.hpp"

namespace riplab {
namespace {

Json vector_to_json(const ComplexVector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v[i]));
  return arr;
}

ComplexVector vector_from_json(const Json& arr) {
  if (!arr.is_array()) throw InvalidParameter("expected an array of [re, im] pairs");
  ComplexVector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(arr[i]);
  return v;
}

Json matrix_to_json(const ComplexMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) rows.push_back(vector_to_json(a.row(i).transpose()));
  return rows;
}

ComplexMatrix matrix_from_json(const Json& rows) {
  if (!rows.is_array() || rows.empty()) throw InvalidParameter("expected a non-empty array of rows");
  const auto cols = static_cast<Eigen::Index>(rows[0].size());
  ComplexMatrix a(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ComplexVector r = vector_from_json(rows[i]);
    if (r.size() != cols) throw InvalidParameter("ragged matrix rows");
    a.row(static_cast<Eigen::Index>(i)) = r.transpose();
  }
  return a;
}

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidParameter(std::string("missing JSON field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter(std::string("bad JSON field '") + key + "': " + e.what());
  }
}

Json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidParameter("complex values must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const Instrument& eta) {
  Json j;
  j["kind"] = to_string(eta.kind());
  const auto& p = eta.params();
  j["params"] = {{"alpha", p.alpha}, {"window_length", p.window_length}, {"seed", p.seed}, {"stream", p.stream}};
  if (eta.is_matrix()) {
    j["shape"] = {eta.dimension(), eta.dimension()};
  } else {
    j["shape"] = {eta.dimension()};
  }
  j["entries"] = vector_to_json(eta.flattened());
  return j;
}

Instrument instrument_from_json(const Json& j) {
  const InstrumentKind kind = instrument_kind_from_string(get_field<std::string>(j, "kind"));
  InstrumentParams p;
  if (j.contains("params")) {
    const Json& pj = j.at("params");
    p.alpha = pj.value("alpha", 0.0);
    p.window_length = pj.value("window_length", 0);
    p.seed = pj.value("seed", std::uint64_t{0});
    p.stream = pj.value("stream", std::uint64_t{0});
  }
  const auto shape = get_field<std::vector<Eigen::Index>>(j, "shape");
  const ComplexVector flat = vector_from_json(j.at("entries"));
  if (shape.size() == 1) {
    if (flat.size() != shape[0]) throw InvalidParameter("entries do not match shape");
    const double target = std::sqrt(static_cast<double>(shape[0]));
    if (std::abs(flat.norm() - target) > 1e-10 * target) throw InvalidParameter("vector instrument must have l2 norm sqrt(N)");
    return Instrument(kind, p, flat);
  }
  if (shape.size() != 2 || shape[0] != shape[1] || flat.size() != shape[0] * shape[1]) {
    throw InvalidParameter("matrix instruments need a square shape matching the entries");
  }
  const double target = static_cast<double>(shape[0]);
  if (std::abs(flat.norm() - target) > 1e-9 * target) throw InvalidParameter("matrix instrument must have S_2 norm n");
  return Instrument(kind, p, unflatten_row_major(flat, shape[0], shape[1]));
}

Json to_json(const GroupElement& g) {
  if (const auto* s = std::get_if<ShiftMod>(&g)) {
    return {{"group", "shiftmod"}, {"t", s->t}, {"k", s->k}, {"modulus", s->modulus}};
  }
  if (const auto* d = std::get_if<DoubleQft>(&g)) {
    return {{"group", "doubleqft"}, {"k", d->k}, {"j", d->j}, {"k2", d->k2}, {"j2", d->j2}, {"modulus", d->modulus}};
  }
  const auto& ss = std::get<SignShift>(g);
  return {{"group", "signshift"}, {"signs", ss.signs}, {"shift", ss.shift}};
}

GroupElement group_element_from_json(const Json& j) {
  const GroupKind kind = group_kind_from_string(get_field<std::string>(j, "group"));
  switch (kind) {
    case GroupKind::kShiftMod:
      return make_shift_mod(get_field<int>(j, "t"), get_field<int>(j, "k"), get_field<int>(j, "modulus"));
    case GroupKind::kDoubleQft:
      return make_double_qft(get_field<int>(j, "k"), get_field<int>(j, "j"), get_field<int>(j, "k2"),
                             get_field<int>(j, "j2"), get_field<int>(j, "modulus"));
    case GroupKind::kSignShift:
      return make_sign_shift(get_field<std::vector<int>>(j, "signs"), get_field<int>(j, "shift"));
  }
  throw InvalidParameter("unknown group");
}

Json to_json(const EnsembleProvenance& p) {
  Json j;
  j["family"] = p.family;
  j["instrument"] = {{"kind", to_string(p.instrument_kind)},
                     {"alpha", p.instrument_params.alpha},
                     {"window_length", p.instrument_params.window_length},
                     {"seed", p.instrument_params.seed},
                     {"stream", p.instrument_params.stream},
                     {"dimension", p.instrument_dimension}};
  j["group"] = to_string(p.group);
  j["sign_mode"] = to_string(p.sign_mode);
  j["m"] = p.m;
  Json elems = Json::array();
  for (const auto& g : p.elements) elems.push_back(to_json(g));
  j["elements"] = std::move(elems);
  j["signs"] = p.signs;
  j["seed"] = p.seed;
  j["stream"] = p.stream;
  if (p.stage_rows) {
    j["stage"] = {{"rows", *p.stage_rows}, {"seed", p.stage_seed}, {"stream", p.stage_stream}};
  }
  return j;
}

EnsembleProvenance provenance_from_json(const Json& j) {
  EnsembleProvenance p;
  p.family = j.value("family", std::string("group"));
  if (p.family != "group" && p.family != "gaussian") throw InvalidParameter("unknown ensemble family");
  const Json& ij = j.at("instrument");
  p.instrument_kind = instrument_kind_from_string(get_field<std::string>(ij, "kind"));
  p.instrument_params.alpha = ij.value("alpha", 0.0);
  p.instrument_params.window_length = ij.value("window_length", 0);
  p.instrument_params.seed = ij.value("seed", std::uint64_t{0});
  p.instrument_params.stream = ij.value("stream", std::uint64_t{0});
  p.instrument_dimension = get_field<Eigen::Index>(ij, "dimension");
  p.group = group_kind_from_string(get_field<std::string>(j, "group"));
  p.sign_mode = sign_mode_from_string(get_field<std::string>(j, "sign_mode"));
  p.m = get_field<int>(j, "m");
  for (const auto& e : j.value("elements", Json::array())) p.elements.push_back(group_element_from_json(e));
  p.signs = j.value("signs", std::vector<int>{});
  p.seed = get_field<std::uint64_t>(j, "seed");
  p.stream = j.value("stream", std::uint64_t{0});
  if (j.contains("stage")) {
    const Json& sj = j.at("stage");
    p.stage_rows = get_field<int>(sj, "rows");
    p.stage_seed = sj.value("seed", std::uint64_t{0});
    p.stage_stream = sj.value("stream", std::uint64_t{0});
  }
  return p;
}

Json to_json(const MeasurementEnsemble& a) {
  Json j;
  j["provenance"] = to_json(a.provenance());
  j["rows"] = matrix_to_json(a.rows());
  if (a.has_stage()) j["stage"] = matrix_to_json(a.stage());
  return j;
}

MeasurementEnsemble ensemble_from_json(const Json& j) {
  EnsembleProvenance p = provenance_from_json(j.at("provenance"));
  MeasurementEnsemble base(matrix_from_json(j.at("rows")), p);
  if (j.contains("stage")) return base.with_stage(matrix_from_json(j.at("stage")), p);
  return base;
}

Json to_json(const SparsityModel& model) {
  if (const auto* c = std::get_if<Canonical>(&model)) return {{"type", "canonical"}, {"k", c->k}};
  if (const auto* l = std::get_if<LqCap>(&model)) return {{"type", "lqcap"}, {"q", l->q}, {"s", l->s}};
  if (const auto* r = std::get_if<LowRank>(&model)) return {{"type", "lowrank"}, {"r", r->r}};
  const auto& t = std::get<TensorRank>(model);
  return {{"type", "tensorrank"}, {"s", t.s}, {"n", t.n}, {"d", t.d}};
}

SparsityModel model_from_json(const Json& j) {
  const auto type = get_field<std::string>(j, "type");
  SparsityModel m;
  if (type == "canonical") {
    m = Canonical{get_field<int>(j, "k")};
  } else if (type == "lqcap") {
    m = LqCap{get_field<double>(j, "q"), get_field<double>(j, "s")};
  } else if (type == "lowrank") {
    m = LowRank{get_field<int>(j, "r")};
  } else if (type == "tensorrank") {
    m = TensorRank{get_field<int>(j, "s"), get_field<int>(j, "n"), get_field<int>(j, "d")};
  } else {
    throw InvalidParameter("unknown sparsity model '" + type + "'");
  }
  check_model(m);
  return m;
}

Json to_json(const RipReport& report) {
  Json j;
  j["delta_hat"] = report.delta_hat;
  j["method"] = to_string(report.method);
  j["model"] = to_json(report.model);
  j["m"] = report.m;
  j["seed"] = report.seed;
  if (report.method == RipMethod::kMonteCarlo) {
    j["trials"] = report.trials;
    j["ascent_steps"] = report.ascent_steps;
  } else {
    j["supports"] = report.trials;
  }
  Json levels = Json::array();
  for (const auto& lv : report.levels) {
    levels.push_back({{"level", lv.level},
                      {"level_sparsity", lv.level_sparsity},
                      {"observed_sup", lv.observed_sup},
                      {"threshold", lv.threshold},
                      {"pass", lv.pass},
                      {"region", to_string(lv.region)}});
  }
  j["levels"] = std::move(levels);
  if (!report.levels.empty()) j["pass"] = report.pass;
  return j;
}

Json to_json(const SpOptResult& result) {
  Json j;
  j["q_opt"] = number_or_string(result.q_opt);
  j["value"] = result.value;
  Json grid = Json::array();
  for (double q : result.grid) grid.push_back(number_or_string(q));
  j["grid"] = std::move(grid);
  j["values"] = result.values;
  return j;
}

Json to_json(const FourierFunction& f) {
  return {{"bandwidth", f.bandwidth()}, {"coeffs", vector_to_json(f.coeffs())}};
}

FourierFunction function_from_json(const Json& j) {
  return FourierFunction(get_field<int>(j, "bandwidth"), vector_from_json(j.at("coeffs")));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
  std::string im = format_double(z.imag());
  if (im.front() != '-') im = "+" + im;
  return format_double(z.real()) + im + "i";
}

}  // namespace riplab

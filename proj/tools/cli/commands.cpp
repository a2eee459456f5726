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

#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "riplab/errors.hpp"
#include "riplab/group_ops.hpp"
#include "riplab/infdim.hpp"
#include "riplab/instruments.hpp"
#include "riplab/rip.hpp"
#include "riplab/sparsity.hpp"

namespace riplab::cli {
namespace {

// Stream tags under the run seed.
constexpr std::uint64_t kEnsembleStream = 1;
constexpr std::uint64_t kEstimatorStream = 2;
constexpr std::uint64_t kInstrumentStream = 3;
constexpr std::uint64_t kSignStream = 4;
constexpr std::uint64_t kPairStream = 5;

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

int as_int(std::int64_t v, const char* name) {
  if (v < 1 || v > (1LL << 30)) throw InvalidParameter(std::string(name) + " out of range");
  return static_cast<int>(v);
}

Instrument build_instrument(const ExperimentConfig& c) {
  const std::string eta = c.get_string("eta");
  const int n = as_int(c.get_int("N"), "N");
  if (eta == "flat") return make_flat(n);
  if (eta == "decaying") return make_decaying_window(n, as_int(c.get_int("Neta"), "Neta"), c.get_real("alpha"));
  if (eta == "scaled-identity") return make_scaled_identity_matrix(n);
  SeededRng rng(c.seed, kInstrumentStream);
  return make_schatten_decay_matrix(n, c.get_real("alpha"), rng);
}

// Draw e of the ensemble with m rows; seeds are seed + e.
MeasurementEnsemble build_ensemble(const ExperimentConfig& c, int m, std::uint64_t seed_e) {
  const SeededRng rng = SeededRng(seed_e, kEnsembleStream).child(static_cast<std::uint64_t>(m));
  const std::string ens = c.get_string("ensemble");
  if (ens == "gaussian") return sample_gaussian_ensemble(m, as_int(c.get_int("N"), "N"), rng);
  return sample_ensemble(build_instrument(c), group_kind_from_string(ens), m,
                         sign_mode_from_string(c.get_string("sign")), rng);
}

SeededRng estimator_rng(std::uint64_t seed_e, int m) {
  return SeededRng(seed_e, kEstimatorStream).child(static_cast<std::uint64_t>(m));
}

SparsityModel model_of(const ExperimentConfig& c) {
  const std::string name = c.get_string("model");
  SparsityModel model;
  if (name == "canonical") {
    model = Canonical{as_int(c.get_int("k"), "k")};
  } else if (name == "lqcap") {
    model = LqCap{c.get_real("q"), c.get_real("s")};
  } else if (name == "lowrank") {
    model = LowRank{as_int(c.get_int("r"), "r")};
  } else {
    const double s = c.get_real("s");
    if (s != std::floor(s)) throw InvalidParameter("tensor rank s must be an integer");
    model = TensorRank{as_int(static_cast<std::int64_t>(s), "s"), as_int(c.get_int("tensor_n"), "tensor_n"),
                       as_int(c.get_int("tensor_d"), "tensor_d")};
  }
  check_model(model);
  return model;
}

std::vector<int> int_list(const ExperimentConfig& c, const char* key) {
  std::vector<int> out;
  for (auto v : c.get_int_list(key)) out.push_back(as_int(v, key));
  return out;
}

Report run_sp_opt(const ExperimentConfig& c) {
  SpGrid grid;
  grid.q_min = c.get_real("qmin");
  grid.q_max = c.get_real("qmax");
  grid.points = as_int(c.get_int("points"), "points");
  const SpOptResult res = sp_eta_optimize(build_instrument(c), as_int(c.get_int("r"), "r"), grid);
  Report rep;
  rep.columns = {"q'", "f(q')"};
  for (std::size_t i = 0; i < res.grid.size(); ++i) rep.rows.push_back({fmt(res.grid[i]), fmt(res.values[i])});
  rep.json = to_json(res);
  return rep;
}

Report run_rip(const ExperimentConfig& c, bool exact) {
  const std::vector<int> ms = int_list(c, "m");
  const int ensembles = as_int(c.get_int("ensembles"), "ensembles");
  const SparsityModel model = exact ? SparsityModel{Canonical{as_int(c.get_int("k"), "k")}} : model_of(c);
  EmpiricalOptions opt;
  if (!exact) {
    opt.trials = as_int(c.get_int("trials"), "trials");
    opt.ascent_steps = static_cast<int>(c.get_int("ascent"));
    if (opt.ascent_steps < 0) throw InvalidParameter("ascent must be >= 0");
  }
  Report rep;
  rep.columns = {"m", "delta_hat", "model", "seed"};
  rep.json = Json::array();
  for (int m : ms) {
    for (int e = 0; e < ensembles; ++e) {
      const std::uint64_t seed_e = c.seed + static_cast<std::uint64_t>(e);
      const MeasurementEnsemble ens = build_ensemble(c, m, seed_e);
      RipReport r = exact ? exact_rip_canonical(ens, std::get<Canonical>(model).k)
                          : empirical_rip(ens, model, opt, estimator_rng(seed_e, m));
      r.seed = seed_e;
      rep.rows.push_back({fmt(std::int64_t{m}), fmt(r.delta_hat), describe(model), std::to_string(seed_e)});
      rep.json.push_back(to_json(r));
    }
  }
  return rep;
}

MripOptions mrip_options(const ExperimentConfig& c) {
  MripOptions o;
  o.search.trials = as_int(c.get_int("trials"), "trials");
  o.search.ascent_steps = static_cast<int>(c.get_int("ascent"));
  if (o.search.ascent_steps < 0) throw InvalidParameter("ascent must be >= 0");
  o.extra_factor = c.get_bool("extra_factor");
  return o;
}

// MRIP report at the given delta, or at the delta calibrated from the level
// suprema. The suprema do not depend on delta, so re-thresholding is exact.
RipReport mrip_for(const ExperimentConfig& c, const ComplexMatrix& op, std::uint64_t seed_e, int m) {
  const MripOptions o = mrip_options(c);
  const double q = c.get_real("q");
  const double s = c.get_real("s");
  const bool given = c.has("delta");
  RipReport r = mrip_check(op, q, s, given ? c.get_real("delta") : 1.0, o, estimator_rng(seed_e, m));
  if (!given) {
    double delta = calibrate_mrip_delta(r.levels, o.extra_factor);
    if (!(delta > 0.0)) delta = std::numeric_limits<double>::min();
    r.pass = true;
    for (auto& lv : r.levels) {
      lv.threshold = mrip_threshold(lv.level, delta, o.extra_factor);
      // Calibration puts the binding level on its threshold; absorb round-off.
      lv.pass = lv.observed_sup <= lv.threshold * (1.0 + 1e-12);
      r.pass = r.pass && lv.pass;
    }
  }
  return r;
}

double delta_of(const ExperimentConfig& c, const RipReport& r) {
  if (c.has("delta")) return c.get_real("delta");
  const double d = calibrate_mrip_delta(r.levels, c.get_bool("extra_factor"));
  return d > 0.0 ? d : std::numeric_limits<double>::min();
}

Report run_mrip(const ExperimentConfig& c) {
  Report rep;
  rep.columns = {"m", "delta", "level", "level_sparsity", "observed_sup", "threshold", "pass", "region"};
  rep.json = Json::array();
  for (int m : int_list(c, "m")) {
    const MeasurementEnsemble ens = build_ensemble(c, m, c.seed);
    const RipReport r = mrip_for(c, ens.operator_matrix(), c.seed, m);
    const double delta = delta_of(c, r);
    for (const auto& lv : r.levels) {
      rep.rows.push_back({fmt(std::int64_t{m}), fmt(delta), std::to_string(lv.level), fmt(lv.level_sparsity),
                          fmt(lv.observed_sup), fmt(lv.threshold), fmt(lv.pass), to_string(lv.region)});
    }
    Json j = to_json(r);
    j["delta"] = delta;
    rep.json.push_back(std::move(j));
  }
  return rep;
}

template <typename PerPair>
void for_each_pair(const ExperimentConfig& c, Eigen::Index ambient, int m, PerPair&& body) {
  const int pairs = as_int(c.get_int("pairs"), "pairs");
  const SparsityModel model = LqCap{c.get_real("q"), c.get_real("s")};
  SeededRng rng = SeededRng(c.seed, kPairStream).child(static_cast<std::uint64_t>(m));
  for (int p = 0; p < pairs; ++p) {
    auto [x, y] = sample_sparse_pair(model, ambient, rng);
    body(p, x, y);
  }
}

Report run_distance(const ExperimentConfig& c) {
  Report rep;
  rep.columns = {"m", "delta", "pair", "observed", "bound", "pass", "refined_applicable", "refined_bound", "refined_pass"};
  rep.json = Json::array();
  const double q = c.get_real("q");
  const double s = c.get_real("s");
  const double eps = c.get_real("epsilon");
  for (int m : int_list(c, "m")) {
    const MeasurementEnsemble ens = build_ensemble(c, m, c.seed);
    const ComplexMatrix& op = ens.operator_matrix();
    const double delta = delta_of(c, mrip_for(c, op, c.seed, m));
    int violations = 0;
    int refined_violations = 0;
    for_each_pair(c, op.cols(), m, [&](int p, const ComplexVector& x, const ComplexVector& y) {
      const DistanceCheck d = distance_bound_check(op, x, y, s, delta, q, eps);
      violations += !d.pass;
      refined_violations += d.refined_applicable && !d.refined_pass;
      rep.rows.push_back({fmt(std::int64_t{m}), fmt(delta), std::to_string(p), fmt(d.observed), fmt(d.bound),
                          fmt(d.pass), fmt(d.refined_applicable),
                          d.refined_applicable ? fmt(d.refined_bound) : "", d.refined_applicable ? fmt(d.refined_pass) : ""});
    });
    rep.json.push_back({{"m", m}, {"delta", delta}, {"violations", violations}, {"refined_violations", refined_violations}});
  }
  return rep;
}

Report run_weakdiff(const ExperimentConfig& c) {
  const std::optional<double> a = c.has("sep_alpha") ? std::optional<double>(c.get_real("sep_alpha")) : std::nullopt;
  const std::optional<double> b = c.has("sep_beta") ? std::optional<double>(c.get_real("sep_beta")) : std::nullopt;
  const WeakDiffConstants k = weak_diff_constants(a, b);
  Report rep;
  rep.columns = {"m", "delta", "pair", "verdict", "measured", "lower", "upper", "radius", "distance", "consistent"};
  rep.json = Json::array();
  for (int m : int_list(c, "m")) {
    const MeasurementEnsemble ens = build_ensemble(c, m, c.seed);
    const ComplexMatrix& op = ens.operator_matrix();
    const double delta = delta_of(c, mrip_for(c, op, c.seed, m));
    int separated = 0;
    int inconsistent = 0;
    for_each_pair(c, op.cols(), m, [&](int p, const ComplexVector& x, const ComplexVector& y) {
      const DiffVerdict v = weak_diff_classify(op, x, y, delta, k);
      const double dist = (x - y).norm();
      const bool sep = v.kind == DiffVerdict::Kind::kSeparated;
      const bool ok = sep ? (v.lower <= dist * dist && dist * dist <= v.upper) : dist <= v.radius;
      separated += sep;
      inconsistent += !ok;
      rep.rows.push_back({fmt(std::int64_t{m}), fmt(delta), std::to_string(p), sep ? "separated" : "close",
                          fmt(v.measured), sep ? fmt(v.lower) : "", sep ? fmt(v.upper) : "",
                          sep ? "" : fmt(v.radius), fmt(dist), fmt(ok)});
    });
    rep.json.push_back({{"m", m},
                        {"delta", delta},
                        {"alpha", k.alpha},
                        {"beta", k.beta},
                        {"separated", separated},
                        {"inconsistent", inconsistent}});
  }
  return rep;
}

Report run_gordon(const ExperimentConfig& c) {
  const int n = as_int(c.get_int("N"), "N");
  const int k = as_int(c.get_int("k"), "k");
  const double delta = c.get_real("delta");
  const SparsityModel model = Canonical{k};
  const WidthEstimate w =
      gaussian_width(model, n, as_int(c.get_int("width_draws"), "width_draws"), SeededRng(c.seed, kEstimatorStream));
  const std::int64_t m = predict_m_gordon(w.mean, delta, c.get_real("zeta"));
  if (m > (1LL << 20)) throw CapacityError("Gordon count too large to simulate");
  EmpiricalOptions opt;
  opt.trials = as_int(c.get_int("trials"), "trials");
  opt.ascent_steps = static_cast<int>(c.get_int("ascent"));
  const int draws = as_int(c.get_int("draws"), "draws");
  Report rep;
  rep.columns = {"m", "delta_hat", "model", "seed"};
  int good = 0;
  for (int e = 0; e < draws; ++e) {
    const std::uint64_t seed_e = c.seed + 1 + static_cast<std::uint64_t>(e);
    const MeasurementEnsemble ens =
        sample_gaussian_ensemble(static_cast<int>(m), n, SeededRng(seed_e, kEnsembleStream));
    const RipReport r = empirical_rip(ens, model, opt, SeededRng(seed_e, kEstimatorStream));
    good += r.delta_hat <= delta;
    rep.rows.push_back({fmt(m), fmt(r.delta_hat), describe(model), std::to_string(seed_e)});
  }
  rep.json = {{"width", w.mean},
              {"width_std_error", w.std_error},
              {"m", m},
              {"delta", delta},
              {"draws", draws},
              {"success_fraction", static_cast<double>(good) / draws}};
  return rep;
}

Report run_rosenthal(const ExperimentConfig& c) {
  const GroupKind group = group_kind_from_string(c.get_string("group"));
  const int n = as_int(c.get_int("N"), "N");
  const int d = as_int(c.get_int("d"), "d");
  // Row selector scaled so that u* u has trace N.
  ComplexMatrix u = ComplexMatrix::Zero(d, n);
  for (int i = 0; i < d; ++i) u(i, i) = std::sqrt(static_cast<double>(n) / d);
  const auto stats = rosenthal_deviation(u, group, int_list(c, "M"), as_int(c.get_int("trials"), "trials"),
                                         SeededRng(c.seed, kEstimatorStream));
  Report rep;
  rep.columns = {"M", "median", "mean"};
  rep.json = Json::array();
  for (const auto& s : stats) {
    rep.rows.push_back({std::to_string(s.num_samples), fmt(s.median), fmt(s.mean)});
    rep.json.push_back({{"M", s.num_samples}, {"median", s.median}, {"mean", s.mean}, {"deviations", s.deviations}});
  }
  return rep;
}

Report run_table1(const ExperimentConfig& c) {
  const auto s = c.get_int("s");
  const auto n = c.get_int("n");
  const auto d = c.get_int("d");
  const std::int64_t gauss = predict_m_table1(Table1Row::kGaussian, s, n, d);
  Report rep;
  rep.columns = {"row", "m", "ratio_to_gauss"};
  rep.json = Json::object();
  for (Table1Row row : {Table1Row::kGaussian, Table1Row::kGroup, Table1Row::kGroupSign}) {
    const std::int64_t m = predict_m_table1(row, s, n, d);
    rep.rows.push_back({to_string(row), fmt(m), fmt(static_cast<double>(m) / static_cast<double>(gauss))});
    rep.json[to_string(row)] = m;
  }
  return rep;
}

// Random bump superposition with non-overlapping supports; DC removed when the
// scheme needs mean-zero functions.
FunctionSampler bump_sampler(int bumps, double t_min, double t_max, int bandwidth, bool dc_free) {
  return [=](SeededRng& rng) {
    BumpSuperposition b;
    b.scale = t_min + (t_max - t_min) * rng.uniform();
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000) throw NumericalError("cannot place non-overlapping bumps");
      b.centers.clear();
      b.amplitudes.clear();
      for (int j = 0; j < bumps; ++j) {
        b.centers.push_back(rng.uniform());
        b.amplitudes.push_back(rng.unit_phase());
      }
      try {
        b.validate();
        break;
      } catch (const InvalidParameter&) {
      }
    }
    FourierFunction f = from_bumps(b, bandwidth);
    if (dc_free) f.set_coeff(0, 0.0);
    return f;
  };
}

Report run_infdim_scan(const ExperimentConfig& c) {
  const int n = as_int(c.get_int("N"), "N");
  const int len = as_int(c.get_int("L"), "L");
  const double gamma = c.get_real("gamma");
  const double rho = c.has("rho") ? c.get_real("rho") : n / 4.0;
  const double t_min = c.get_real("Tmin");
  const double t_max = c.get_real("Tmax");
  const int bumps = as_int(c.get_int("bumps"), "bumps");
  const std::string scheme_name = c.get_string("scheme");
  const int bandwidth = recommended_bandwidth(t_max);

  std::vector<std::pair<std::string, Scheme>> schemes;
  if (scheme_name == "blocks") {
    const std::string mode = c.get_string("mode");
    SeededRng sign_rng(c.seed, kSignStream);
    if (mode != "rademacher") {
      Scheme s;
      s.blocks = make_block_instrument(n, len, BlockMode::kDeterministic, sign_rng);
      schemes.emplace_back("blocks-deterministic", s);
    }
    if (mode != "deterministic") {
      Scheme s;
      s.blocks = make_block_instrument(n, len, BlockMode::kRademacher, sign_rng);
      schemes.emplace_back("blocks-rademacher", s);
    }
  } else if (scheme_name == "time") {
    Scheme s;
    s.kind = SchemeKind::kTimeSampling;
    schemes.emplace_back("time", s);
  } else {
    Scheme s;
    s.kind = SchemeKind::kDyadic;
    s.l0 = static_cast<int>(c.get_int("l0"));
    schemes.emplace_back("dyadic", s);
  }

  // Keep only model members; rejection is cheap for reasonable budgets.
  const FunctionSampler raw = bump_sampler(bumps, t_min, t_max, bandwidth, scheme_name == "time");
  const FunctionSampler member = [=](SeededRng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      FourierFunction f = raw(rng);
      if (k_rho_gamma_membership(f, rho, gamma).member) return f;
    }
    throw NumericalError("no sampled bump function meets the rho/gamma budget");
  };

  Report rep;
  rep.columns = {"scheme", "N", "L", "d", "gamma", "rho", "m", "trial", "deviation"};
  rep.json = Json::array();
  const int trials = as_int(c.get_int("trials"), "trials");
  const int functions = as_int(c.get_int("functions"), "functions");
  for (const auto& [label, scheme] : schemes) {
    for (int m : int_list(c, "m")) {
      // Same stream for every scheme: paired comparisons see identical functions and times.
      const InfdimReport r =
          infdim_rip_experiment(member, scheme, m, trials, functions, estimator_rng(c.seed, m));
      for (int t = 0; t < trials; ++t) {
        rep.rows.push_back({label, std::to_string(n), std::to_string(len), std::to_string(2 * n / len), fmt(gamma),
                            fmt(rho), std::to_string(m), std::to_string(t), fmt(r.deviations[static_cast<std::size_t>(t)])});
      }
      rep.json.push_back({{"scheme", label}, {"m", m}, {"median", r.median}, {"delta_hat", r.delta_hat}});
    }
  }
  return rep;
}

Report run_bump_check(const ExperimentConfig& c) {
  BumpSuperposition b;
  b.scale = c.get_real("T");
  b.centers = c.get_real_list("centers");
  b.amplitudes.assign(b.centers.size(), Complex(1.0));
  b.validate();
  const int bandwidth = c.has("bandwidth") ? as_int(c.get_int("bandwidth"), "bandwidth") : recommended_bandwidth(b.scale);
  const FourierFunction f = from_bumps(b, bandwidth);
  Report rep;
  rep.columns = {"quantity", "measured", "predicted", "rel_error"};
  auto add = [&](const std::string& name, double measured, double predicted) {
    rep.rows.push_back({name, fmt(measured), fmt(predicted), fmt(std::abs(measured - predicted) / std::abs(predicted))});
    rep.json[name] = {{"measured", measured}, {"predicted", predicted}};
  };
  const KMembership km = k_rho_gamma_membership(f, std::numeric_limits<double>::infinity(), 1.0);
  add("support", km.measured_gamma, b.support_measure());
  for (double p : c.get_real_list("p")) add("lp:p=" + fmt(p), lq_norm_function(f, p), b.lp_norm(p));
  add("derivative_ratio", km.measured_rho_physical, b.derivative_ratio());
  return rep;
}

Report run_truncation(const ExperimentConfig& c) {
  const double q = c.get_real("q");
  const double delta = c.get_real("delta");
  Report rep;
  if (c.has("s") && c.has("C2")) {
    const int l0 = truncation_level(q, c.get_real("s"), delta, c.get_real("C2"));
    rep.columns = {"q", "s", "delta", "C2", "l0"};
    rep.rows.push_back({fmt(q), fmt(c.get_real("s")), fmt(delta), fmt(c.get_real("C2")), std::to_string(l0)});
    rep.json = {{"l0", l0}};
    return rep;
  }
  const double t_min = c.get_real("Tmin");
  const double t_max = c.get_real("Tmax");
  const int bandwidth = recommended_bandwidth(t_max);
  const FunctionSampler sampler = bump_sampler(as_int(c.get_int("bumps"), "bumps"), t_min, t_max, bandwidth, true);
  SeededRng rng(c.seed, kEstimatorStream);
  const int samples = as_int(c.get_int("samples"), "samples");
  std::vector<FourierFunction> gs;
  std::vector<FourierFunction> anti;
  for (int i = 0; i < samples; ++i) {
    gs.push_back(sampler(rng));
    anti.push_back(differentiate(gs.back(), DerivativeDirection::kAntiderivative));
  }
  const std::vector<double> times = {0.0, 0.25, 0.5, 0.75};
  const int max_level = static_cast<int>(std::ceil(std::log2(bandwidth))) + 2;
  const double c2 = c.has("C2") ? c.get_real("C2") : calibrate_truncation_constant(anti, q, max_level, times);
  rep.columns = {"sample", "s", "l0", "tail", "limit", "pass"};
  Json rows = Json::array();
  for (int i = 0; i < samples; ++i) {
    const double l2 = l2_norm_function(gs[i]);
    const double lq = q == 2.0 ? l2 : lq_norm_function(gs[i], q);
    const double s = c.has("s") ? c.get_real("s") : (lq * lq) / (l2 * l2);
    const int l0 = truncation_level(q, s, delta, c2);
    double tail = 0.0;
    for (double t : times) tail = std::max(tail, dyadic_tail(anti[i], t, l0));
    const double limit = 0.5 * delta * l2 * l2;
    rep.rows.push_back({std::to_string(i), fmt(s), std::to_string(l0), fmt(tail), fmt(limit), fmt(tail <= limit)});
  }
  rep.json = {{"C2", c2}, {"calibrated", !c.has("C2")}};
  return rep;
}

Report run_isotropy(const ExperimentConfig& c) {
  const Instrument eta = build_instrument(c);
  const std::string group = c.has("group") ? c.get_string("group") : (eta.is_matrix() ? "doubleqft" : "shiftmod");
  const double defect = isotropy_defect(eta, group_kind_from_string(group));
  Report rep;
  rep.columns = {"group", "eta", "N", "defect"};
  rep.rows.push_back({group, c.get_string("eta"), std::to_string(c.get_int("N")), fmt(defect)});
  rep.json = {{"defect", defect}, {"group", group}};
  return rep;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Report run(const ExperimentConfig& c) {
  const std::string& sub = c.subcommand;
  if (sub == "sp-opt") return run_sp_opt(c);
  if (sub == "rip-scan") return run_rip(c, false);
  if (sub == "rip-exact") return run_rip(c, true);
  if (sub == "mrip") return run_mrip(c);
  if (sub == "distance") return run_distance(c);
  if (sub == "weakdiff") return run_weakdiff(c);
  if (sub == "gordon") return run_gordon(c);
  if (sub == "rosenthal") return run_rosenthal(c);
  if (sub == "table1") return run_table1(c);
  if (sub == "infdim-scan") return run_infdim_scan(c);
  if (sub == "bump-check") return run_bump_check(c);
  if (sub == "truncation") return run_truncation(c);
  if (sub == "isotropy") return run_isotropy(c);
  throw InvalidParameter("unknown subcommand '" + sub + "'");
}

std::string render_csv(const ExperimentConfig& c, const Report& report, const std::string& stamp) {
  std::ostringstream out;
  out << "# riplab " << c.subcommand << "\n# seed=" << c.seed << "\n";
  for (const auto& [k, v] : c.resolved()) out << "# " << k << "=" << v << "\n";
  if (!stamp.empty()) out << "# stamp=" << stamp << "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_cell(report.columns[i]);
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string render_json(const ExperimentConfig& c, const Report& report, const std::string& stamp) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["seed"] = c.seed;
  j["config"] = c.resolved();
  j["result"] = report.json;
  if (!stamp.empty()) j["stamp"] = stamp;
  // Non-finite doubles would otherwise serialize as null.
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidParameter("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw InvalidParameter("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw InvalidParameter("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace riplab::cli

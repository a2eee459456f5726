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

#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "riplab/errors.hpp"

namespace riplab::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

bool parse_int(const std::string& s, std::int64_t& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

bool parse_real(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  return res.ec == std::errc() && res.ptr == t.data() + t.size() && std::isfinite(out);
}

bool parse_bool(const std::string& s, bool& out) {
  const std::string t = trim(s);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return out = true, true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return out = false, true;
  return false;
}

KeySpec key(std::string name, KeyType type, std::string def, std::string help,
            std::vector<std::string> choices = {}) {
  KeySpec k;
  k.name = std::move(name);
  k.type = type;
  k.default_value = std::move(def);
  k.help = std::move(help);
  k.choices = std::move(choices);
  return k;
}

KeySpec required(std::string name, KeyType type, std::string help, std::vector<std::string> choices = {}) {
  KeySpec k = key(std::move(name), type, "", std::move(help), std::move(choices));
  k.required = true;
  return k;
}

const std::vector<std::string> kEtaChoices = {"flat", "decaying", "scaled-identity", "schatten-decay"};
const std::vector<std::string> kEnsembleChoices = {"shiftmod", "doubleqft", "signshift", "gaussian"};

std::vector<KeySpec> instrument_keys(bool eta_required, const std::string& eta_default) {
  std::vector<KeySpec> keys;
  if (eta_required) {
    keys.push_back(required("eta", KeyType::kString, "instrument", kEtaChoices));
  } else {
    keys.push_back(key("eta", KeyType::kString, eta_default, "instrument", kEtaChoices));
  }
  keys.push_back(required("N", KeyType::kInt, "dimension (matrix side n for matrix instruments)"));
  keys.push_back(key("Neta", KeyType::kInt, "", "window length for eta=decaying"));
  keys.push_back(key("alpha", KeyType::kReal, "", "decay exponent in (0, 0.5)"));
  return keys;
}

std::vector<KeySpec> ensemble_keys(const std::string& ensemble_default) {
  std::vector<KeySpec> keys = {key("ensemble", KeyType::kString, ensemble_default, "measurement family", kEnsembleChoices)};
  for (auto& k : instrument_keys(false, "flat")) keys.push_back(std::move(k));
  keys.push_back(key("sign", KeyType::kString, "none", "sign preprocessing", {"none", "random-sign", "absorbed"}));
  keys.push_back(required("m", KeyType::kIntList, "measurement counts, comma separated"));
  return keys;
}

bool is_matrix_eta(const std::string& eta) { return eta == "scaled-identity" || eta == "schatten-decay"; }

void check_instrument(const ExperimentConfig& c, std::vector<std::string>& d) {
  const std::string eta = c.get_string("eta");
  const std::int64_t n = c.has("N") ? c.get_int("N") : 1;
  if (n < 1) d.push_back("N must be >= 1");
  if (eta == "decaying") {
    if (!c.has("Neta")) d.push_back("missing required key Neta");
    if (!c.has("alpha")) d.push_back("missing required key alpha");
    if (c.has("Neta")) {
      const auto ne = c.get_int("Neta");
      if (ne < 1 || ne > n) d.push_back("Neta must be in [1, N]");
    }
  }
  if (eta == "schatten-decay" && !c.has("alpha")) d.push_back("missing required key alpha");
  if (c.has("alpha") && (eta == "decaying" || eta == "schatten-decay")) {
    const double a = c.get_real("alpha");
    if (!(a > 0.0 && a < 0.5)) d.push_back("alpha must be in (0, 0.5)");
  }
}

void check_positive_list(const ExperimentConfig& c, const std::string& k, std::vector<std::string>& d) {
  for (auto v : c.get_int_list(k)) {
    if (v < 1) {
      d.push_back(k + " entries must be >= 1");
      return;
    }
  }
}

void check_positive(const ExperimentConfig& c, const std::string& k, std::vector<std::string>& d) {
  if (!c.has(k) && c.resolved().count(k) == 0) return;
  const auto& spec = schema_for(c.subcommand).keys;
  const auto it = std::find_if(spec.begin(), spec.end(), [&](const KeySpec& s) { return s.name == k; });
  if (it == spec.end()) return;
  if (!c.has(k) && it->default_value.empty()) return;
  const double v = it->type == KeyType::kInt ? static_cast<double>(c.get_int(k)) : c.get_real(k);
  if (!(v > 0.0)) d.push_back(k + " must be > 0");
}

void check_ensemble(const ExperimentConfig& c, std::vector<std::string>& d) {
  const std::string ens = c.get_string("ensemble");
  if (ens != "gaussian") {
    check_instrument(c, d);
    const bool matrix = is_matrix_eta(c.get_string("eta"));
    if (ens == "doubleqft" && !matrix) d.push_back("ensemble doubleqft needs a matrix instrument (scaled-identity or schatten-decay)");
    if (ens != "doubleqft" && matrix) d.push_back("ensemble " + ens + " needs a vector instrument (flat or decaying)");
  } else if (c.has("N") && c.get_int("N") < 1) {
    d.push_back("N must be >= 1");
  }
  if (c.has("m")) check_positive_list(c, "m", d);
}

void check_model_keys(const ExperimentConfig& c, std::vector<std::string>& d) {
  const std::string model = c.get_string("model");
  auto need = [&](const char* k) {
    if (!c.has(k)) d.push_back(std::string("missing required key ") + k);
  };
  if (model == "canonical") need("k");
  if (model == "lqcap") {
    need("s");
    const double q = c.get_real("q");
    if (!(q >= 1.0 && q < 2.0)) d.push_back("q must be in [1, 2)");
  }
  if (model == "lowrank") need("r");
  if (model == "tensorrank") {
    need("s");
    need("tensor_n");
    need("tensor_d");
  }
}

void check_mrip_common(const ExperimentConfig& c, std::vector<std::string>& d) {
  check_ensemble(c, d);
  const double q = c.get_real("q");
  if (!(q >= 1.0 && q < 2.0)) d.push_back("q must be in [1, 2)");
  if (c.has("s") && !(c.get_real("s") >= 1.0)) d.push_back("s must be >= 1");
  if (c.has("delta")) check_positive(c, "delta", d);
  check_positive(c, "trials", d);
}

std::vector<SubcommandSchema> build_schemas() {
  std::vector<SubcommandSchema> all;
  const KeySpec trials = key("trials", KeyType::kInt, "100", "Monte Carlo trials per estimate");
  const KeySpec ascent = key("ascent", KeyType::kInt, "50", "ascent steps per trial");

  {
    SubcommandSchema s{"sp-opt", "optimise sp_eta(r) over q' on a log grid", instrument_keys(true, ""), {}};
    s.keys.push_back(required("r", KeyType::kInt, "sparsity level"));
    s.keys.push_back(key("qmin", KeyType::kReal, "2.001", "smallest grid q'"));
    s.keys.push_back(key("qmax", KeyType::kReal, "128", "largest finite grid q' (also caps q'^3 at infinity)"));
    s.keys.push_back(key("points", KeyType::kInt, "200", "finite grid points"));
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      check_instrument(c, d);
      check_positive(c, "r", d);
      check_positive(c, "points", d);
      if (!(c.get_real("qmin") > 2.0)) d.push_back("qmin must be > 2");
      if (!(c.get_real("qmax") >= c.get_real("qmin"))) d.push_back("qmax must be >= qmin");
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"rip-scan", "Monte Carlo RIP constant across m", ensemble_keys("shiftmod"), {}};
    s.keys.push_back(key("model", KeyType::kString, "canonical", "sparsity model", {"canonical", "lqcap", "lowrank", "tensorrank"}));
    s.keys.push_back(key("k", KeyType::kInt, "", "Canonical: support size"));
    s.keys.push_back(key("q", KeyType::kReal, "1", "LqCap: exponent in [1, 2)"));
    s.keys.push_back(key("s", KeyType::kReal, "", "LqCap: level; TensorRank: rank"));
    s.keys.push_back(key("r", KeyType::kInt, "", "LowRank: rank"));
    s.keys.push_back(key("tensor_n", KeyType::kInt, "", "TensorRank: mode size"));
    s.keys.push_back(key("tensor_d", KeyType::kInt, "", "TensorRank: order"));
    s.keys.push_back(trials);
    s.keys.push_back(ascent);
    s.keys.push_back(key("ensembles", KeyType::kInt, "1", "independent ensemble draws per m"));
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      check_ensemble(c, d);
      check_model_keys(c, d);
      check_positive(c, "trials", d);
      check_positive(c, "ensembles", d);
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"rip-exact", "exact canonical RIP constant by support enumeration", ensemble_keys("shiftmod"), {}};
    s.keys.push_back(required("k", KeyType::kInt, "support size"));
    s.keys.push_back(key("ensembles", KeyType::kInt, "1", "independent ensemble draws per m"));
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      check_ensemble(c, d);
      check_positive(c, "k", d);
      check_positive(c, "ensembles", d);
    };
    all.push_back(std::move(s));
  }
  auto mrip_keys = [&](SubcommandSchema& s) {
    s.keys.push_back(key("q", KeyType::kReal, "1", "X = l_q"));
    s.keys.push_back(required("s", KeyType::kReal, "base sparsity level"));
    s.keys.push_back(key("delta", KeyType::kReal, "", "distortion; calibrated from the level suprema when absent"));
    s.keys.push_back(key("trials", KeyType::kInt, "200", "Monte Carlo trials per level"));
    s.keys.push_back(key("ascent", KeyType::kInt, "50", "ascent steps per trial"));
    s.keys.push_back(key("extra_factor", KeyType::kBool, "false", "use the threshold with the extra 2^{l/2} factor"));
  };
  {
    SubcommandSchema s{"mrip", "multiresolution RIP check across dyadic levels", ensemble_keys("gaussian"), {}};
    mrip_keys(s);
    s.check = check_mrip_common;
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"distance", "distance-preservation bound on random sparse pairs", ensemble_keys("gaussian"), {}};
    mrip_keys(s);
    s.keys.push_back(key("pairs", KeyType::kInt, "1000", "random pairs"));
    s.keys.push_back(key("epsilon", KeyType::kReal, "1", "epsilon of the refined bound"));
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      check_mrip_common(c, d);
      check_positive(c, "pairs", d);
      check_positive(c, "epsilon", d);
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"weakdiff", "separated/close classification of random sparse pairs", ensemble_keys("gaussian"), {}};
    mrip_keys(s);
    s.keys.push_back(key("pairs", KeyType::kInt, "1000", "random pairs"));
    s.keys.push_back(key("sep_alpha", KeyType::kReal, "", "separation multiplier (> 2 sqrt 2)"));
    s.keys.push_back(key("sep_beta", KeyType::kReal, "", "closeness multiplier"));
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      check_mrip_common(c, d);
      check_positive(c, "pairs", d);
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"gordon", "Gaussian width, Gordon count, and its empirical check", {}, {}};
    s.keys = {required("N", KeyType::kInt, "dimension"),
              required("k", KeyType::kInt, "support size"),
              key("width_draws", KeyType::kInt, "10000", "Gaussian draws for the width estimate"),
              key("delta", KeyType::kReal, "0.5", "target distortion"),
              key("zeta", KeyType::kReal, "0.1", "failure probability in (0, 2]"),
              key("draws", KeyType::kInt, "100", "fresh Gaussian ensembles"),
              key("trials", KeyType::kInt, "200", "Monte Carlo trials per ensemble"),
              key("ascent", KeyType::kInt, "20", "ascent steps per trial")};
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      for (const char* k : {"N", "k", "width_draws", "delta", "draws", "trials"}) check_positive(c, k, d);
      const double z = c.get_real("zeta");
      if (!(z > 0.0 && z <= 2.0)) d.push_back("zeta must be in (0, 2]");
      if (c.has("N") && c.has("k") && c.get_int("k") > c.get_int("N")) d.push_back("k must be <= N");
      if (c.get_int("width_draws") < 2) d.push_back("width_draws must be >= 2");
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"rosenthal", "orbit-average deviation of a d x N selector", {}, {}};
    s.keys = {key("group", KeyType::kString, "shiftmod", "group", {"shiftmod", "doubleqft", "signshift"}),
              required("N", KeyType::kInt, "ambient dimension (n^2 for doubleqft)"),
              required("d", KeyType::kInt, "selector rows"),
              required("M", KeyType::kIntList, "sample counts, comma separated"),
              key("trials", KeyType::kInt, "50", "trials per M")};
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      check_positive(c, "N", d);
      check_positive(c, "d", d);
      check_positive(c, "trials", d);
      if (c.has("M")) check_positive_list(c, "M", d);
      if (c.has("N") && c.has("d") && c.get_int("d") > c.get_int("N")) d.push_back("d must be <= N");
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"table1", "measurement counts for rank-s tensors", {}, {}};
    s.keys = {required("s", KeyType::kInt, "tensor rank"), required("n", KeyType::kInt, "mode size"),
              required("d", KeyType::kInt, "order")};
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      for (const char* k : {"s", "n", "d"}) check_positive(c, k, d);
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"infdim-scan", "translation-sampling deviation for bump models", {}, {}};
    s.keys = {key("scheme", KeyType::kString, "blocks", "measurement scheme", {"blocks", "time", "dyadic"}),
              key("mode", KeyType::kString, "both", "block signs", {"deterministic", "rademacher", "both"}),
              key("N", KeyType::kInt, "64", "band [-N, N) of the truncated seminorm"),
              key("L", KeyType::kInt, "8", "block length (2N = L d)"),
              key("l0", KeyType::kInt, "6", "dyadic scheme: highest level kept"),
              required("m", KeyType::kIntList, "translation counts, comma separated"),
              key("trials", KeyType::kInt, "20", "trials per m"),
              key("functions", KeyType::kInt, "8", "model functions per trial"),
              key("bumps", KeyType::kInt, "1", "bumps per function"),
              key("Tmin", KeyType::kReal, "16", "smallest bump scale T"),
              key("Tmax", KeyType::kReal, "28", "largest bump scale T"),
              key("gamma", KeyType::kReal, "0.0625", "support budget"),
              key("rho", KeyType::kReal, "", "derivative budget (normalized derivative); default N/4")};
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      for (const char* k : {"N", "L", "trials", "functions", "bumps", "Tmin", "gamma"}) check_positive(c, k, d);
      if (c.has("m")) check_positive_list(c, "m", d);
      if (c.get_int("N") > 0 && c.get_int("L") > 0 && (2 * c.get_int("N")) % c.get_int("L") != 0) {
        d.push_back("L must divide 2N");
      }
      if (!(c.get_real("Tmax") >= c.get_real("Tmin"))) d.push_back("Tmax must be >= Tmin");
      if (!(c.get_real("Tmin") >= 1.0)) d.push_back("Tmin must be >= 1");
      if (c.has("rho") && !(c.get_real("rho") > 0.0)) d.push_back("rho must be > 0");
      if (c.get_int("l0") < 0) d.push_back("l0 must be >= 0");
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"bump-check", "support, L_p and derivative identities of a bump superposition", {}, {}};
    s.keys = {required("T", KeyType::kReal, "bump scale"),
              required("centers", KeyType::kRealList, "bump centers in [0, 1), comma separated"),
              key("p", KeyType::kRealList, "1,2,4", "L_p exponents"),
              key("bandwidth", KeyType::kInt, "", "simulation bandwidth; default from T")};
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      if (c.has("T") && !(c.get_real("T") >= 1.0)) d.push_back("T must be >= 1");
      for (double p : c.get_real_list("p")) {
        if (!(p >= 1.0)) {
          d.push_back("p entries must be >= 1");
          break;
        }
      }
      if (c.has("bandwidth")) check_positive(c, "bandwidth", d);
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"truncation", "dyadic truncation level and measured tails", {}, {}};
    s.keys = {key("q", KeyType::kReal, "2", "exponent in (1, 2]"),
              key("s", KeyType::kReal, "", "sparsity level; with C2 just prints l0"),
              required("delta", KeyType::kReal, "distortion"),
              key("C2", KeyType::kReal, "", "tail constant; calibrated from bumps when absent"),
              key("samples", KeyType::kInt, "20", "sampled bump functions"),
              key("bumps", KeyType::kInt, "2", "bumps per function"),
              key("Tmin", KeyType::kReal, "8", "smallest bump scale"),
              key("Tmax", KeyType::kReal, "32", "largest bump scale")};
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      const double q = c.get_real("q");
      if (!(q > 1.0 && q <= 2.0)) d.push_back("q must be in (1, 2]");
      check_positive(c, "delta", d);
      if (c.has("s")) check_positive(c, "s", d);
      if (c.has("C2")) check_positive(c, "C2", d);
      for (const char* k : {"samples", "bumps"}) check_positive(c, k, d);
      if (!(c.get_real("Tmin") >= 1.0)) d.push_back("Tmin must be >= 1");
      if (!(c.get_real("Tmax") >= c.get_real("Tmin"))) d.push_back("Tmax must be >= Tmin");
    };
    all.push_back(std::move(s));
  }
  {
    SubcommandSchema s{"isotropy", "isotropy defect by full group enumeration", instrument_keys(true, ""), {}};
    s.keys.push_back(key("group", KeyType::kString, "", "group (default: doubleqft for matrices, else shiftmod)",
                         {"shiftmod", "doubleqft", "signshift"}));
    s.check = [](const ExperimentConfig& c, std::vector<std::string>& d) {
      check_instrument(c, d);
      if (c.has("group")) {
        const bool matrix = is_matrix_eta(c.get_string("eta"));
        const bool qft = c.get_string("group") == "doubleqft";
        if (matrix != qft) d.push_back("doubleqft pairs with matrix instruments, other groups with vectors");
      }
    };
    all.push_back(std::move(s));
  }
  return all;
}

const KeySpec* find_key(const SubcommandSchema& s, const std::string& name) {
  for (const auto& k : s.keys) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::string type_name(KeyType t) {
  switch (t) {
    case KeyType::kInt: return "an integer";
    case KeyType::kReal: return "a real number";
    case KeyType::kString: return "text";
    case KeyType::kIntList: return "a comma-separated integer list";
    case KeyType::kRealList: return "a comma-separated real list";
    case KeyType::kBool: return "true or false";
  }
  return "text";
}

bool well_typed(KeyType t, const std::string& text) {
  std::int64_t i = 0;
  double r = 0.0;
  bool b = false;
  switch (t) {
    case KeyType::kInt: return parse_int(text, i);
    case KeyType::kReal: return parse_real(text, r);
    case KeyType::kString: return !trim(text).empty();
    case KeyType::kBool: return parse_bool(text, b);
    case KeyType::kIntList:
      for (const auto& item : split_list(text)) {
        if (!parse_int(item, i)) return false;
      }
      return !trim(text).empty();
    case KeyType::kRealList:
      for (const auto& item : split_list(text)) {
        if (!parse_real(item, r)) return false;
      }
      return !trim(text).empty();
  }
  return false;
}

}  // namespace

const std::vector<SubcommandSchema>& schemas() {
  static const std::vector<SubcommandSchema> all = build_schemas();
  return all;
}

const SubcommandSchema& schema_for(const std::string& subcommand) {
  for (const auto& s : schemas()) {
    if (s.name == subcommand) return s;
  }
  throw InvalidParameter("unknown subcommand '" + subcommand + "'");
}

bool ExperimentConfig::has(const std::string& key) const { return params.count(key) > 0; }

namespace {

std::string raw_value(const ExperimentConfig& c, const std::string& k) {
  const auto it = c.params.find(k);
  if (it != c.params.end()) return it->second;
  const KeySpec* spec = find_key(schema_for(c.subcommand), k);
  if (!spec) throw InvalidParameter("unknown key " + k);
  if (spec->default_value.empty()) throw InvalidParameter("missing required key " + k);
  return spec->default_value;
}

}  // namespace

std::int64_t ExperimentConfig::get_int(const std::string& k) const {
  std::int64_t v = 0;
  if (!parse_int(raw_value(*this, k), v)) throw InvalidParameter(k + " must be an integer");
  return v;
}

double ExperimentConfig::get_real(const std::string& k) const {
  double v = 0.0;
  if (!parse_real(raw_value(*this, k), v)) throw InvalidParameter(k + " must be a real number");
  return v;
}

std::string ExperimentConfig::get_string(const std::string& k) const {
  const auto it = params.find(k);
  if (it != params.end()) return trim(it->second);
  const KeySpec* spec = find_key(schema_for(subcommand), k);
  if (!spec) throw InvalidParameter("unknown key " + k);
  return spec->default_value;
}

bool ExperimentConfig::get_bool(const std::string& k) const {
  bool v = false;
  if (!parse_bool(raw_value(*this, k), v)) throw InvalidParameter(k + " must be true or false");
  return v;
}

std::vector<std::int64_t> ExperimentConfig::get_int_list(const std::string& k) const {
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(raw_value(*this, k))) {
    std::int64_t v = 0;
    if (!parse_int(item, v)) throw InvalidParameter(k + " must be a comma-separated integer list");
    out.push_back(v);
  }
  return out;
}

std::vector<double> ExperimentConfig::get_real_list(const std::string& k) const {
  std::vector<double> out;
  for (const auto& item : split_list(raw_value(*this, k))) {
    double v = 0.0;
    if (!parse_real(item, v)) throw InvalidParameter(k + " must be a comma-separated real list");
    out.push_back(v);
  }
  return out;
}

std::map<std::string, std::string> ExperimentConfig::resolved() const {
  std::map<std::string, std::string> out;
  for (const auto& k : schema_for(subcommand).keys) {
    const auto it = params.find(k.name);
    if (it != params.end()) {
      out[k.name] = trim(it->second);
    } else if (!k.default_value.empty()) {
      out[k.name] = k.default_value;
    }
  }
  return out;
}

std::map<std::string, std::string> read_ini(const std::string& path, const std::string& subcommand) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno) + ": ";
    if (body.front() == '[') {
      if (body.back() != ']') throw InvalidParameter(where + "malformed section header");
      const std::string section = trim(body.substr(1, body.size() - 2));
      if (section != subcommand) throw InvalidParameter(where + "section [" + section + "] does not match subcommand " + subcommand);
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw InvalidParameter(where + "expected key=value");
    std::string k = trim(body.substr(0, eq));
    if (k.rfind("--", 0) == 0) k = k.substr(2);
    if (k.empty()) throw InvalidParameter(where + "empty key");
    out[k] = trim(body.substr(eq + 1));
  }
  return out;
}

std::vector<std::string> validate(const ExperimentConfig& config) {
  std::vector<std::string> diags;
  const SubcommandSchema* schema = nullptr;
  for (const auto& s : schemas()) {
    if (s.name == config.subcommand) schema = &s;
  }
  if (!schema) return {"unknown subcommand '" + config.subcommand + "'"};

  for (const auto& [k, v] : config.params) {
    const KeySpec* spec = find_key(*schema, k);
    if (!spec) {
      diags.push_back("unknown key " + k);
      continue;
    }
    if (!well_typed(spec->type, v)) {
      diags.push_back(k + " must be " + type_name(spec->type));
      continue;
    }
    if (!spec->choices.empty() &&
        std::find(spec->choices.begin(), spec->choices.end(), trim(v)) == spec->choices.end()) {
      std::string allowed;
      for (const auto& c : spec->choices) allowed += (allowed.empty() ? "" : ", ") + c;
      diags.push_back(k + " must be one of: " + allowed);
    }
  }
  for (const auto& k : schema->keys) {
    if (k.required && !config.has(k.name)) diags.push_back("missing required key " + k.name);
  }
  if (!diags.empty() || !schema->check) return diags;
  try {
    schema->check(config, diags);
  } catch (const InvalidParameter& e) {
    diags.push_back(e.what());
  }
  // Same message can arise from two checks.
  std::vector<std::string> unique;
  std::set<std::string> seen;
  for (auto& d : diags) {
    if (seen.insert(d).second) unique.push_back(std::move(d));
  }
  return unique;
}

}  // namespace riplab::cli

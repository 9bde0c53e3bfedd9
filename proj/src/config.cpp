// Copyright 2026 The stratcomm Authors.
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

#include "stratcomm/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "stratcomm/table1.hpp"

namespace stratcomm {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Human-written probabilities such as 0.333333 are accepted up to this
// slack and then renormalized.
constexpr double kConfigMassSlack = 1e-9;

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
  throw ConfigError(ConfigError::Kind::kValidation, field + ": " + msg, field);
}

// A JSON value together with its dotted path, for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return j_; }

  void expect_object() const {
    if (!j_.is_object()) invalid(path_, "expected an object");
  }

  void allow_keys(std::initializer_list<std::string_view> keys) const {
    expect_object();
    for (const auto& [k, v] : j_.items()) {
      bool known = false;
      for (auto allowed : keys) known |= (k == allowed);
      if (!known) invalid(child_path(k), "unknown key");
    }
  }

  bool has(std::string_view key) const {
    return j_.is_object() && j_.contains(std::string(key));
  }

  Node at(std::string_view key) const {
    expect_object();
    if (!has(key)) invalid(child_path(key), "required key is missing");
    return Node(j_.at(std::string(key)), child_path(key));
  }

  std::optional<Node> get(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return at(key);
  }

  Node index(std::size_t i) const {
    return Node(j_.at(i), path_ + "[" + std::to_string(i) + "]");
  }

  double number() const {
    if (!j_.is_number()) invalid(path_, "expected a number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) invalid(path_, "must be finite");
    return v;
  }

  std::uint64_t unsigned_integer() const {
    if (!j_.is_number_integer() || (j_.is_number_integer() && !j_.is_number_unsigned() &&
                                    j_.get<std::int64_t>() < 0)) {
      invalid(path_, "expected a nonnegative integer");
    }
    return j_.get<std::uint64_t>();
  }

  std::size_t positive_count() const {
    const auto v = unsigned_integer();
    if (v == 0) invalid(path_, "must be positive");
    return static_cast<std::size_t>(v);
  }

  std::string string() const {
    if (!j_.is_string()) invalid(path_, "expected a string");
    return j_.get<std::string>();
  }

  bool boolean() const {
    if (!j_.is_boolean()) invalid(path_, "expected true or false");
    return j_.get<bool>();
  }

  std::size_t array_size() const {
    if (!j_.is_array()) invalid(path_, "expected an array");
    return j_.size();
  }

  std::vector<double> numbers() const {
    const std::size_t n = array_size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = index(i).number();
    return out;
  }

  std::vector<std::string> strings() const {
    const std::size_t n = array_size();
    std::vector<std::string> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = index(i).string();
    return out;
  }

  Matrix matrix(std::optional<std::size_t> rows, std::optional<std::size_t> cols) const {
    const std::size_t n = array_size();
    if (n == 0) invalid(path_, "matrix has no rows");
    if (rows && n != *rows) {
      invalid(path_, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(n));
    }
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = index(i).numbers();
      const std::size_t want = cols ? *cols : m[0].size();
      if (m[i].size() != want || want == 0) {
        invalid(path_ + "[" + std::to_string(i) + "]",
                "expected " + std::to_string(want) + " entries, got " +
                    std::to_string(m[i].size()));
      }
    }
    return m;
  }

  std::string child_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

 private:
  const json& j_;
  std::string path_;
};

std::vector<double> probability_row(std::vector<double> row, const std::string& path) {
  double s = 0.0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] < 0.0) {
      invalid(path + "[" + std::to_string(k) + "]", "probability is negative");
    }
    s += row[k];
  }
  if (std::abs(s - 1.0) > kConfigMassSlack) {
    std::ostringstream os;
    os.precision(12);
    os << "probabilities sum to " << s << ", expected 1";
    invalid(path, os.str());
  }
  for (auto& v : row) v /= s;
  return row;
}

FiniteDistribution read_distribution(const Node& n, std::size_t size) {
  auto v = n.numbers();
  if (v.size() != size) {
    invalid(n.path(), "expected " + std::to_string(size) + " entries, got " +
                          std::to_string(v.size()));
  }
  return FiniteDistribution(probability_row(std::move(v), n.path()));
}

ConditionalKernel read_kernel(const Node& n, std::optional<std::size_t> rows,
                              std::optional<std::size_t> cols) {
  auto m = n.matrix(rows, cols);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = probability_row(std::move(m[i]), n.path() + "[" + std::to_string(i) + "]");
  }
  return ConditionalKernel::from_rows(m);
}

Range read_range(const Node& n) {
  n.allow_keys({"start", "stop", "step"});
  Range r{n.at("start").number(), n.at("stop").number(), n.at("step").number()};
  if (!(r.step > 0.0)) invalid(n.child_path("step"), "must be positive");
  if (r.stop < r.start) invalid(n.child_path("stop"), "must be >= start");
  if ((r.stop - r.start) / r.step > 1e6) invalid(n.path(), "more than 1e6 points");
  return r;
}

DistortionTensor read_distortion(const Node& n, const AlphabetSizes& s) {
  n.allow_keys({"matrix", "tensor"});
  if (n.has("matrix") == n.has("tensor")) {
    invalid(n.path(), "give exactly one of 'matrix' or 'tensor'");
  }
  if (auto m = n.get("matrix")) {
    return DistortionTensor::from_matrix(m->matrix(s.w, s.what), s.u, s.y);
  }
  const auto t = n.at("tensor");
  auto v = t.numbers();
  const std::size_t want = s.w * s.u * s.y * s.what;
  if (v.size() != want) {
    invalid(t.path(), "expected " + std::to_string(want) +
                          " entries (W*U*Y*What, row-major), got " + std::to_string(v.size()));
  }
  return DistortionTensor(s.w, s.u, s.y, s.what, std::move(v));
}

ChainModel read_model(const Node& n, std::optional<ConditionalKernel>* z_kernel) {
  n.allow_keys({"alphabets", "p_w", "obs_kernel", "channel", "distortion", "rate_ratio",
                "z_kernel"});
  const auto a = n.at("alphabets");
  a.allow_keys({"W", "U", "Y", "X", "Xhat", "What"});
  ChainModel m;
  auto& s = m.sizes;
  s.w = a.at("W").positive_count();
  s.u = a.at("U").positive_count();
  s.y = a.at("Y").positive_count();
  s.x = a.at("X").positive_count();
  s.xhat = a.at("Xhat").positive_count();
  s.what = a.at("What").positive_count();
  m.p_w = read_distribution(n.at("p_w"), s.w);
  m.obs_kernel = read_kernel(n.at("obs_kernel"), s.w, s.u * s.y);
  m.channel = read_kernel(n.at("channel"), s.x, s.xhat);
  const auto d = n.at("distortion");
  d.allow_keys({"encoder", "decoder"});
  m.distortion.encoder = read_distortion(d.at("encoder"), s);
  m.distortion.decoder = read_distortion(d.at("decoder"), s);
  m.distortion.reduced = m.distortion.encoder.depends_only_on_w_what() &&
                         m.distortion.decoder.depends_only_on_w_what();
  if (auto r = n.get("rate_ratio")) {
    m.rate_ratio = r->number();
    if (!(m.rate_ratio >= 0.0)) invalid(r->path(), "must be nonnegative");
  }
  if (auto z = n.get("z_kernel")) *z_kernel = read_kernel(*z, s.x, std::nullopt);
  for (const auto& v : validate_model(m)) invalid(n.child_path(v.field), v.check);
  return m;
}

GameConfig read_game(const Node& n) {
  n.allow_keys({"preset", "alpha", "beta", "encoder", "decoder", "enc_labels", "dec_labels"});
  GameConfig g;
  if (auto p = n.get("preset")) {
    g.preset = p->string();
    if (g.preset != "table1") invalid(p->path(), "unknown preset (expected \"table1\")");
    for (auto key : {"encoder", "decoder", "enc_labels", "dec_labels"}) {
      if (n.has(key)) invalid(n.child_path(key), "not allowed together with a preset");
    }
    if (auto a = n.get("alpha")) g.alpha = a->number();
    if (auto b = n.get("beta")) g.beta = b->number();
    g.game = table1_game(g.alpha, g.beta);
    return g;
  }
  for (auto key : {"alpha", "beta"}) {
    if (n.has(key)) invalid(n.child_path(key), "only meaningful with preset \"table1\"");
  }
  g.game.enc_distortion = n.at("encoder").matrix(std::nullopt, std::nullopt);
  const auto rows = g.game.enc_distortion.size();
  const auto cols = g.game.enc_distortion.front().size();
  g.game.dec_distortion = n.at("decoder").matrix(rows, cols);
  if (auto l = n.get("enc_labels")) {
    g.game.enc_labels = l->strings();
    if (g.game.enc_labels.size() != rows) invalid(l->path(), "one label per row required");
  }
  if (auto l = n.get("dec_labels")) {
    g.game.dec_labels = l->strings();
    if (g.game.dec_labels.size() != cols) invalid(l->path(), "one label per column required");
  }
  return g;
}

void read_solver(const Node& n, ExperimentConfig& c) {
  n.allow_keys({"tie_tolerance", "grid_resolution", "max_grid_points", "max_patterns",
                "max_reduced_cells", "support_cap", "max_equilibria", "max_tie_set_columns",
                "commitment", "enforce_rate_constraint"});
  auto& o = c.solver;
  if (auto v = n.get("tie_tolerance")) {
    o.tie_tolerance = v->number();
    if (!(o.tie_tolerance >= 0.0)) invalid(v->path(), "must be nonnegative");
  }
  if (auto v = n.get("grid_resolution")) {
    o.grid_resolution = v->number();
    if (!(o.grid_resolution > 0.0 && o.grid_resolution <= 1.0)) {
      invalid(v->path(), "must lie in (0, 1]");
    }
  }
  if (auto v = n.get("max_grid_points")) o.max_grid_points = v->positive_count();
  if (auto v = n.get("max_patterns")) o.max_patterns = v->positive_count();
  if (auto v = n.get("max_reduced_cells")) o.max_reduced_cells = v->positive_count();
  if (auto v = n.get("support_cap")) o.support_cap = v->positive_count();
  if (auto v = n.get("max_equilibria")) o.max_equilibria = v->positive_count();
  if (auto v = n.get("max_tie_set_columns")) {
    o.max_tie_set_columns = v->positive_count();
    if (o.max_tie_set_columns > 20) invalid(v->path(), "at most 20");
  }
  if (auto v = n.get("commitment")) {
    const auto s = v->string();
    if (s == "mixed") {
      c.commitment = Commitment::kMixed;
    } else if (s == "pure") {
      c.commitment = Commitment::kPure;
    } else if (s != "default") {
      invalid(v->path(), "expected \"mixed\", \"pure\" or \"default\"");
    }
    if (c.commitment) o.commitment = *c.commitment;
  }
  if (auto v = n.get("enforce_rate_constraint")) o.enforce_rate_constraint = v->boolean();
}

void read_rd(const Node& n, RdConfig& rd) {
  n.allow_keys({"source", "betas", "matrices", "multipliers", "include_hamming"});
  if (auto v = n.get("source")) {
    auto p = v->numbers();
    if (p.empty()) invalid(v->path(), "empty distribution");
    rd.source = probability_row(std::move(p), v->path());
  }
  if (auto v = n.get("betas")) rd.betas = v->numbers();
  if (auto v = n.get("matrices")) {
    for (std::size_t i = 0; i < v->array_size(); ++i) {
      const auto e = v->index(i);
      e.allow_keys({"label", "matrix"});
      rd.matrices.push_back({e.at("label").string(), e.at("matrix").matrix(std::nullopt, std::nullopt)});
    }
  }
  if (auto v = n.get("multipliers")) {
    rd.multipliers = v->numbers();
    if (rd.multipliers.empty()) invalid(v->path(), "at least one multiplier required");
    for (std::size_t i = 0; i < rd.multipliers.size(); ++i) {
      if (rd.multipliers[i] < 0.0) {
        invalid(v->path() + "[" + std::to_string(i) + "]", "must be nonnegative");
      }
    }
  }
  if (auto v = n.get("include_hamming")) rd.include_hamming = v->boolean();
  const std::size_t n_src = rd.source.size();
  if (!rd.betas.empty() && n_src != 3) {
    invalid(n.child_path("betas"), "the three-word decoder matrix needs a 3-symbol source");
  }
  for (std::size_t i = 0; i < rd.matrices.size(); ++i) {
    const auto& m = rd.matrices[i].matrix;
    if (m.size() != n_src) {
      invalid(n.child_path("matrices") + "[" + std::to_string(i) + "].matrix",
              "needs one row per source symbol (" + std::to_string(n_src) + ")");
    }
  }
}

void read_audit(const Node& n, AuditConfig& a) {
  n.allow_keys({"instances", "min_alphabet", "max_alphabet", "distortion_range",
                "distortion_form", "rate_ratio"});
  if (auto v = n.get("instances")) a.instances = v->positive_count();
  if (auto v = n.get("min_alphabet")) a.model.min_alphabet = v->positive_count();
  if (auto v = n.get("max_alphabet")) a.model.max_alphabet = v->positive_count();
  if (a.model.max_alphabet < a.model.min_alphabet) {
    invalid(n.child_path("max_alphabet"), "must be >= min_alphabet");
  }
  if (a.model.max_alphabet > 3) {
    invalid(n.child_path("max_alphabet"), "at most 3 (exhaustive solvers)");
  }
  if (auto v = n.get("distortion_range")) {
    const auto s = v->string();
    if (s == "unit") {
      a.model.range = DistortionRange::kUnit;
    } else if (s == "signed") {
      a.model.range = DistortionRange::kSigned;
    } else {
      invalid(v->path(), "expected \"unit\" or \"signed\"");
    }
  }
  if (auto v = n.get("distortion_form")) {
    const auto s = v->string();
    if (s == "reduced") {
      a.model.form = DistortionForm::kReduced;
    } else if (s == "full") {
      a.model.form = DistortionForm::kFull;
    } else {
      invalid(v->path(), "expected \"reduced\" or \"full\"");
    }
  }
  if (auto v = n.get("rate_ratio")) {
    a.model.rate_ratio = v->number();
    if (!(a.model.rate_ratio >= 0.0)) invalid(v->path(), "must be nonnegative");
  }
}

ExperimentConfig from_json(const json& doc) {
  const Node root(doc, "");
  if (!doc.is_object()) invalid("(root)", "expected a JSON object");
  root.allow_keys({"schema_version", "seed", "model", "game", "solver", "sweep", "capacity",
                   "rd", "audit", "counterexample", "output"});
  ExperimentConfig c;
  const auto version = root.at("schema_version");
  if (version.unsigned_integer() != static_cast<std::uint64_t>(kSchemaVersion)) {
    invalid(version.path(), "unsupported schema version (this tool reads " +
                                std::to_string(kSchemaVersion) + ")");
  }
  if (auto s = root.get("seed")) c.seed = s->unsigned_integer();
  std::optional<ConditionalKernel> z;
  if (auto m = root.get("model")) c.model = read_model(*m, &z);
  c.solver.z_kernel = z;
  if (auto g = root.get("game")) c.game = read_game(*g);
  if (auto s = root.get("solver")) read_solver(*s, c);
  if (auto s = root.get("sweep")) {
    s->allow_keys({"alpha", "beta"});
    if (auto a = s->get("alpha")) c.alpha_sweep = read_range(*a);
    if (auto b = s->get("beta")) c.beta_sweep = read_range(*b);
  }
  if (auto cap = root.get("capacity")) {
    cap->allow_keys({"tolerance", "max_iterations", "channel"});
    if (auto v = cap->get("tolerance")) {
      c.capacity.tolerance = v->number();
      if (!(c.capacity.tolerance > 0.0)) invalid(v->path(), "must be positive");
    }
    if (auto v = cap->get("max_iterations")) {
      c.capacity.max_iterations = static_cast<int>(std::min<std::size_t>(v->positive_count(), 100'000'000));
    }
    if (auto v = cap->get("channel")) c.capacity_channel = read_kernel(*v, std::nullopt, std::nullopt);
  }
  c.solver.capacity = c.capacity;
  c.rd.source = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  c.rd.betas = default_rd_betas();
  c.rd.multipliers = default_rd_multipliers();
  if (auto r = root.get("rd")) {
    // An explicit source without betas turns the beta curves off.
    if (r->has("source") && !r->has("betas")) c.rd.betas.clear();
    read_rd(*r, c.rd);
  }
  if (auto a = root.get("audit")) read_audit(*a, c.audit);
  if (auto ce = root.get("counterexample")) {
    ce->allow_keys({"resolution"});
    if (auto v = ce->get("resolution")) {
      c.counterexample_resolution = v->number();
      if (!(c.counterexample_resolution > 0.0 && c.counterexample_resolution <= 1.0)) {
        invalid(v->path(), "must lie in (0, 1]");
      }
    }
  }
  if (auto o = root.get("output")) {
    o->allow_keys({"path", "format"});
    if (auto p = o->get("path")) c.output_path = p->string();
    if (auto f = o->get("format")) {
      try {
        c.output_format = parse_format(f->string());
      } catch (const std::invalid_argument& e) {
        invalid(f->path(), e.what());
      }
    }
  }
  return c;
}

ojson matrix_json(const Matrix& m) {
  ojson a = ojson::array();
  for (const auto& r : m) a.push_back(r);
  return a;
}

ojson kernel_json(const ConditionalKernel& k) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < k.inputs(); ++i) {
    a.push_back(std::vector<double>(k.row(i).begin(), k.row(i).end()));
  }
  return a;
}

ojson range_json(const Range& r) {
  return ojson{{"start", r.start}, {"stop", r.stop}, {"step", r.step}};
}

ojson distortion_json(const DistortionTensor& t) {
  if (t.depends_only_on_w_what()) {
    Matrix m(t.w(), std::vector<double>(t.what()));
    for (std::size_t w = 0; w < t.w(); ++w)
      for (std::size_t k = 0; k < t.what(); ++k) m[w][k] = t(w, 0, 0, k);
    return ojson{{"matrix", matrix_json(m)}};
  }
  return ojson{{"tensor", std::vector<double>(t.values().begin(), t.values().end())}};
}

}  // namespace

ConfigError::ConfigError(Kind kind, std::string message, std::string field,
                         std::optional<std::size_t> line,
                         std::optional<std::size_t> column)
    : std::runtime_error(std::move(message)),
      kind_(kind),
      field_(std::move(field)),
      line_(line),
      column_(column) {}

const char* to_string(ConfigError::Kind kind) {
  switch (kind) {
    case ConfigError::Kind::kIo: return "io";
    case ConfigError::Kind::kParse: return "parse";
    case ConfigError::Kind::kValidation: return "validation";
  }
  return "unknown";
}

std::vector<double> Range::values() const {
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    out.push_back(round_to_emitted(start + static_cast<double>(k) * step));
  }
  return out;
}

Range default_alpha_sweep() { return {-7.0, 7.0, 0.5}; }
Range default_beta_sweep() { return {0.0, 7.0, 0.1}; }

std::vector<double> default_rd_multipliers() {
  return {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0,
          10.0, 12.0, 15.0, 20.0, 25.0, 30.0, 40.0, 50.0, 75.0, 100.0};
}

std::vector<double> default_rd_betas() { return {0.5, 1.0, 2.0, 4.0}; }

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    std::size_t line = 1, column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError(ConfigError::Kind::kParse,
                      "line " + std::to_string(line) + ", column " + std::to_string(column) +
                          ": " + e.what(),
                      "", line, column);
  }
  return from_json(doc);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw ConfigError(ConfigError::Kind::kIo, "cannot open config '" + path.string() + "'");
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

nlohmann::ordered_json resolved_json(const ExperimentConfig& c) {
  ojson j;
  j["schema_version"] = c.schema_version;
  if (c.seed) j["seed"] = *c.seed;
  if (c.model) {
    const auto& m = *c.model;
    const auto& s = m.sizes;
    ojson mj;
    mj["alphabets"] = {{"W", s.w}, {"U", s.u}, {"Y", s.y}, {"X", s.x},
                       {"Xhat", s.xhat}, {"What", s.what}};
    mj["p_w"] = std::vector<double>(m.p_w.probs().begin(), m.p_w.probs().end());
    mj["obs_kernel"] = kernel_json(m.obs_kernel);
    mj["channel"] = kernel_json(m.channel);
    mj["distortion"] = {{"encoder", distortion_json(m.distortion.encoder)},
                        {"decoder", distortion_json(m.distortion.decoder)}};
    mj["rate_ratio"] = m.rate_ratio;
    if (c.solver.z_kernel) mj["z_kernel"] = kernel_json(*c.solver.z_kernel);
    j["model"] = std::move(mj);
  }
  if (c.game) {
    const auto& g = *c.game;
    if (!g.preset.empty()) {
      j["game"] = {{"preset", g.preset}, {"alpha", g.alpha}, {"beta", g.beta}};
    } else {
      ojson gj;
      gj["encoder"] = matrix_json(g.game.enc_distortion);
      gj["decoder"] = matrix_json(g.game.dec_distortion);
      if (!g.game.enc_labels.empty()) gj["enc_labels"] = g.game.enc_labels;
      if (!g.game.dec_labels.empty()) gj["dec_labels"] = g.game.dec_labels;
      j["game"] = std::move(gj);
    }
  }
  const auto& o = c.solver;
  j["solver"] = {{"tie_tolerance", o.tie_tolerance},
                 {"grid_resolution", o.grid_resolution},
                 {"max_grid_points", o.max_grid_points},
                 {"max_patterns", o.max_patterns},
                 {"max_reduced_cells", o.max_reduced_cells},
                 {"support_cap", o.support_cap},
                 {"max_equilibria", o.max_equilibria},
                 {"max_tie_set_columns", o.max_tie_set_columns},
                 {"commitment", c.commitment ? to_string(*c.commitment) : "default"},
                 {"enforce_rate_constraint", o.enforce_rate_constraint}};
  j["sweep"] = {{"alpha", range_json(c.alpha_sweep.value_or(default_alpha_sweep()))},
                {"beta", range_json(c.beta_sweep.value_or(default_beta_sweep()))}};
  j["capacity"] = {{"tolerance", c.capacity.tolerance},
                   {"max_iterations", c.capacity.max_iterations}};
  if (c.capacity_channel) j["capacity"]["channel"] = kernel_json(*c.capacity_channel);
  ojson rd;
  rd["source"] = c.rd.source;
  rd["betas"] = c.rd.betas;
  rd["matrices"] = ojson::array();
  for (const auto& m : c.rd.matrices) {
    rd["matrices"].push_back({{"label", m.label}, {"matrix", matrix_json(m.matrix)}});
  }
  rd["multipliers"] = c.rd.multipliers;
  rd["include_hamming"] = c.rd.include_hamming;
  j["rd"] = std::move(rd);
  const auto& a = c.audit;
  j["audit"] = {{"instances", a.instances},
                {"min_alphabet", a.model.min_alphabet},
                {"max_alphabet", a.model.max_alphabet},
                {"distortion_range", a.model.range == DistortionRange::kUnit ? "unit" : "signed"},
                {"distortion_form", a.model.form == DistortionForm::kReduced ? "reduced" : "full"},
                {"rate_ratio", a.model.rate_ratio}};
  j["counterexample"] = {{"resolution", c.counterexample_resolution}};
  ojson out;
  if (c.output_path) out["path"] = *c.output_path;
  out["format"] = to_string(c.output_format);
  j["output"] = std::move(out);
  return j;
}

}  // namespace stratcomm

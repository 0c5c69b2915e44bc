#include "qwrca/harness.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>

#include "qwrca/spectral.hpp"
#include "qwrca/state_classes.hpp"
#include "qwrca/verify.hpp"

namespace qwrca {
namespace {

using nlohmann::json;

json cplx_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> cplx_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(std::string(what) + " must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json initial_json(const InitialSpec& initial) {
  if (const auto* q = std::get_if<QubitSpec>(&initial)) {
    return {{"qubit", json::array({cplx_json(q->left), cplx_json(q->right)})}};
  }
  const auto& t = std::get<InitialTriple<double>>(initial);
  return {{"triple",
           json::array({cplx_json(t.alpha), cplx_json(t.beta), cplx_json(t.gamma)})}};
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Config parsing

const std::map<std::string, RunMode>& mode_names() {
  static const std::map<std::string, RunMode> names = {
      {"qw", RunMode::qw},           {"rca", RunMode::rca},
      {"classify", RunMode::classify}, {"norms", RunMode::norms},
      {"limits", RunMode::limits},   {"verify", RunMode::verify}};
  return names;
}

std::string mode_name(RunMode mode) {
  for (const auto& [name, value] : mode_names()) {
    if (value == mode) return name;
  }
  return "?";
}

InitialSpec parse_initial(const json& j) {
  if (j.is_object() && j.contains("qubit")) {
    const auto& q = j.at("qubit");
    if (!q.is_array() || q.size() != 2) {
      throw ConfigError("initial.qubit must hold two [re, im] pairs");
    }
    return QubitSpec{cplx_from_json(q[0], "qubit amplitude"),
                     cplx_from_json(q[1], "qubit amplitude")};
  }
  if (j.is_object() && j.contains("triple")) {
    const auto& t = j.at("triple");
    if (!t.is_array() || t.size() != 3) {
      throw ConfigError("initial.triple must hold three [re, im] pairs");
    }
    return InitialTriple<double>{cplx_from_json(t[0], "triple entry"),
                                 cplx_from_json(t[1], "triple entry"),
                                 cplx_from_json(t[2], "triple entry")};
  }
  throw ConfigError("initial must be {\"qubit\": ...} or {\"triple\": ...}");
}

Chirality parse_chirality(const std::string& name) {
  if (name == "left") return Chirality::left;
  if (name == "right") return Chirality::right;
  throw ConfigError("chirality must be \"left\" or \"right\"");
}

template <std::size_t N>
std::array<std::complex<double>, N> parse_complex_array(const json& j,
                                                        const char* what) {
  if (!j.is_array() || j.size() != N) {
    throw ConfigError(std::string(what) + " must hold " + std::to_string(N) +
                      " [re, im] pairs");
  }
  std::array<std::complex<double>, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = cplx_from_json(j[i], what);
  return out;
}

}  // namespace

RunMode parse_mode(const std::string& name) {
  const auto it = mode_names().find(name);
  if (it == mode_names().end()) throw ConfigError("unknown mode: " + name);
  return it->second;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("format must be \"csv\" or \"json\"");
}

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig config;
  config.mode = parse_mode(doc.value("mode", "qw"));
  if (doc.contains("theta")) {
    if (!doc.at("theta").is_number()) throw ConfigError("theta must be a number");
    config.theta = doc.at("theta").get<double>();
  }
  if (doc.contains("coin")) {
    config.coin = parse_complex_array<4>(doc.at("coin"), "coin");
  }
  if (doc.contains("coefficients")) {
    config.coeffs = parse_complex_array<3>(doc.at("coefficients"), "coefficients");
  }
  if (doc.contains("initial")) config.initial = parse_initial(doc.at("initial"));
  if (doc.contains("chirality")) {
    config.chirality = parse_chirality(doc.at("chirality").get<std::string>());
  }
  if (doc.contains("steps")) {
    if (!doc.at("steps").is_number_integer()) {
      throw ConfigError("steps must be an integer");
    }
    config.steps = doc.at("steps").get<std::int64_t>();
  }
  if (doc.contains("c")) {
    if (!doc.at("c").is_number()) throw ConfigError("c must be a number");
    config.c = doc.at("c").get<double>();
  }
  if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("quick")) config.quick = doc.at("quick").get<bool>();
  if (doc.contains("out")) config.output_path = doc.at("out").get<std::string>();
  if (doc.contains("format")) {
    config.format = parse_format(doc.at("format").get<std::string>());
  }
  return config;
}

SweepConfig parse_sweep_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  SweepConfig config;
  config.mode = parse_mode(doc.value("submode", "limits"));
  if (config.mode == RunMode::classify || config.mode == RunMode::verify) {
    throw ConfigError("sweep submode must be qw, rca, norms or limits");
  }
  if (doc.contains("thetas")) {
    for (const auto& v : doc.at("thetas")) {
      if (!v.is_number()) throw ConfigError("thetas must be numbers");
      config.thetas.push_back(v.get<double>());
    }
  }
  if (doc.contains("initials")) {
    for (const auto& v : doc.at("initials")) {
      config.initials.push_back(parse_initial(v));
    }
  }
  if (doc.contains("chirality")) {
    config.chirality = parse_chirality(doc.at("chirality").get<std::string>());
  }
  if (doc.contains("steps")) config.steps = doc.at("steps").get<std::int64_t>();
  if (doc.contains("c")) config.c = doc.at("c").get<double>();
  if (doc.contains("out")) config.output_path = doc.at("out").get<std::string>();
  if (doc.contains("format")) {
    config.format = parse_format(doc.at("format").get<std::string>());
  }
  return config;
}

namespace {

// ---------------------------------------------------------------------------
// Mode plumbing

ThetaParam<double> require_theta(const std::optional<double>& theta,
                                 const char* mode) {
  if (!theta) throw ConfigError(std::string(mode) + " requires theta");
  try {
    return ThetaParam<double>(*theta);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

UnitaryCoin<double> build_coin(const RunConfig& config, const char* mode) {
  if (config.coin && config.theta) {
    throw ConfigError("give either theta or an explicit coin, not both");
  }
  try {
    if (config.coin) {
      const auto& m = *config.coin;
      return UnitaryCoin<double>(m[0], m[1], m[2], m[3]);
    }
    return make_theta_coin(require_theta(config.theta, mode));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Qubit<double> require_qubit(const RunConfig& config, const char* mode) {
  if (!config.initial || !std::holds_alternative<QubitSpec>(*config.initial)) {
    throw ConfigError(std::string(mode) + " requires a qubit initial state");
  }
  const auto& q = std::get<QubitSpec>(*config.initial);
  try {
    return Qubit<double>(q.left, q.right);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

/// Triple directly, or converted from a qubit via the coin and chirality.
InitialTriple<double> require_triple(const RunConfig& config, const char* mode) {
  if (!config.initial) {
    throw ConfigError(std::string(mode) + " requires an initial state");
  }
  if (const auto* t = std::get_if<InitialTriple<double>>(&*config.initial)) {
    return *t;
  }
  if (!config.chirality) {
    throw ConfigError(std::string(mode) +
                      ": qubit initial state needs a chirality to convert");
  }
  return qw_to_rca_triple(require_qubit(config, mode), build_coin(config, mode),
                          *config.chirality);
}

void require_steps(const RunConfig& config) {
  if (config.steps < 0) throw ConfigError("steps must be >= 0");
}

void append_row_records(json& records, const AmplitudeRow<double>& row,
                        std::int64_t n, const char* component) {
  for (std::int64_t k = row.first_site(); k <= row.last_site(); ++k) {
    const auto v = row.at(k);
    if (v == std::complex<double>{}) continue;
    records.push_back({{"n", n},
                       {"k", k},
                       {"component", component},
                       {"re", v.real()},
                       {"im", v.imag()},
                       {"sq", std::norm(v)}});
  }
}

json run_qw(const RunConfig& config) {
  require_steps(config);
  const auto coin = build_coin(config, "qw");
  const auto qubit = require_qubit(config, "qw");

  json records = json::array();
  json summary = json::array();
  auto state = qw_initial(qubit);
  for (std::int64_t n = 0;; ++n) {
    append_row_records(records, state.left, n, "L");
    append_row_records(records, state.right, n, "R");
    const auto norms = chirality_norms(state);
    summary.push_back({{"n", n},
                       {"left_sq", norms.left_sq},
                       {"right_sq", norms.right_sq},
                       {"total", norms.left_sq + norms.right_sq}});
    if (n == config.steps) break;
    state = qw_step(state, coin);
  }
  json doc = {{"mode", "qw"},
              {"coin", json::array({cplx_json(coin.a()), cplx_json(coin.b()),
                                    cplx_json(coin.c()), cplx_json(coin.d())})},
              {"initial", initial_json(*config.initial)},
              {"steps", config.steps},
              {"records", records},
              {"summary", summary}};
  if (config.theta) doc["theta"] = *config.theta;
  return doc;
}

json run_rca(const RunConfig& config) {
  require_steps(config);
  int sources = 0;
  sources += config.theta.has_value();
  sources += config.coin.has_value();
  sources += config.coeffs.has_value();
  if (sources != 1) {
    throw ConfigError("rca needs exactly one of theta, coin or coefficients");
  }

  RcaCoefficients<double> coeffs{};
  if (config.coeffs) {
    coeffs = {(*config.coeffs)[0], (*config.coeffs)[1], (*config.coeffs)[2]};
  } else if (config.coin) {
    coeffs = RcaCoefficients<double>::from_coin(build_coin(config, "rca"));
  } else {
    coeffs = RcaCoefficients<double>::from_theta(require_theta(config.theta, "rca"));
  }
  const auto triple = require_triple(config, "rca");

  json records = json::array();
  json summary = json::array();
  auto state = rca_initial(triple);
  auto emit = [&](const AmplitudeRow<double>& row, std::int64_t n) {
    append_row_records(records, row, n, "X");
    const auto report = moment_report(row, n);
    summary.push_back({{"n", report.n},
                       {"norm_sq", report.norm_sq},
                       {"first_moment", report.first_moment}});
  };
  emit(state.row_n, 0);
  for (std::int64_t n = 1; n <= config.steps; ++n) {
    emit(state.row_np1, n);
    if (n == config.steps) break;
    state = rca_step_general(state, coeffs);
  }
  json doc = {{"mode", "rca"},
              {"initial", initial_json(*config.initial)},
              {"steps", config.steps},
              {"records", records},
              {"summary", summary}};
  if (config.theta) doc["theta"] = *config.theta;
  doc["coefficients"] = json::array(
      {cplx_json(coeffs.a), cplx_json(coeffs.d), cplx_json(coeffs.delta)});
  return doc;
}

json run_classify(const RunConfig& config) {
  require_steps(config);
  const auto theta = require_theta(config.theta, "classify");
  theta.require_interior("classify");
  const auto triple = require_triple(config, "classify");
  const double c = config.c.value_or(std::norm(triple.alpha));
  if (!(c >= 0)) throw ConfigError("c must be >= 0");

  const auto perp = phi_perp_residuals(triple);
  const auto star = phi_star_residuals(triple, c, theta);
  const auto sym = empirical_symmetric(triple, theta, config.steps);
  const auto mom = empirical_zero_moment(triple, theta, config.steps);
  const auto cons = empirical_conserved(triple, theta, c, config.steps);

  return {{"mode", "classify"},
          {"theta", theta.radians()},
          {"c", c},
          {"steps", config.steps},
          {"initial", initial_json(*config.initial)},
          {"triple", json::array({cplx_json(triple.alpha), cplx_json(triple.beta),
                                  cplx_json(triple.gamma)})},
          {"phi_perp",
           {{"member", in_phi_perp(triple)},
            {"residuals",
             {{"beta_plus_gamma", perp.beta_plus_gamma},
              {"modulus_mismatch", perp.modulus_mismatch},
              {"alpha_modulus", perp.alpha_modulus},
              {"phase_offset", std::isnan(perp.phase_offset)
                                   ? json()
                                   : json(perp.phase_offset)}}}}},
          {"phi_star",
           {{"member", in_phi_star(triple, c, theta)},
            {"residuals",
             {{"alpha_norm", star.alpha_norm},
              {"beta_gamma_norm", star.beta_gamma_norm},
              {"cross_term", star.cross_term},
              {"phase_term", star.phase_term}}}}},
          {"empirical",
           {{"symmetric",
             {{"member", sym.member}, {"max_violation", sym.max_violation}}},
            {"zero_moment",
             {{"member", mom.member}, {"max_violation", mom.max_violation}}},
            {"conserved", {{"member", cons.member},
                           {"max_violation", cons.max_violation},
                           {"c", c}}}}}};
}

json run_norms(const RunConfig& config) {
  require_steps(config);
  const auto theta = require_theta(config.theta, "norms");
  theta.require_interior("norms");
  const auto triple = require_triple(config, "norms");

  const auto rows = rca_evolve(triple, theta, config.steps);
  json out_rows = json::array();
  for (std::int64_t n = 0; n <= config.steps; ++n) {
    const auto decomp = closed_form_norm(triple, theta, n);
    out_rows.push_back({{"n", n},
                        {"direct", squared_norm(rows[static_cast<std::size_t>(n)])},
                        {"parseval", parseval_norm(triple, theta, n)},
                        {"closed_total", decomp.total()},
                        {"steady", decomp.steady},
                        {"oscillatory", decomp.oscillatory},
                        {"quad_error", decomp.quad_error}});
  }
  return {{"mode", "norms"},
          {"theta", theta.radians()},
          {"steps", config.steps},
          {"initial", initial_json(*config.initial)},
          {"rows", out_rows}};
}

json run_limits(const RunConfig& config) {
  const auto theta = require_theta(config.theta, "limits");
  theta.require_interior("limits");
  if (!config.initial) throw ConfigError("limits requires an initial state");

  json doc = {{"mode", "limits"},
              {"theta", theta.radians()},
              {"initial", initial_json(*config.initial)}};
  if (const auto* q = std::get_if<QubitSpec>(&*config.initial)) {
    Qubit<double> qubit = [&] {
      try {
        return Qubit<double>(q->left, q->right);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }();
    const auto limits = chirality_limits(qubit, theta);
    doc["left_limit"] = limits.left_sq;
    doc["right_limit"] = limits.right_sq;
  } else {
    doc["norm_limit"] =
        norm_limit(std::get<InitialTriple<double>>(*config.initial), theta);
  }
  return doc;
}

json run_verify(const RunConfig& config) {
  const auto results = run_verification({config.seed, config.quick});
  json checks = json::array();
  for (const auto& r : results) {
    checks.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"worst", r.worst},
                      {"tolerance", r.tolerance},
                      {"detail", r.detail}});
  }
  return {{"mode", "verify"},
          {"seed", config.seed},
          {"quick", config.quick},
          {"checks", checks},
          {"all_pass", all_pass(results)}};
}

// ---------------------------------------------------------------------------
// Emission

std::string derive_path(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string text;
  for (std::size_t i = 0; i < header.size(); ++i) {
    text += header[i];
    text += i + 1 < header.size() ? ',' : '\n';
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      text += row[i];
      text += i + 1 < row.size() ? ',' : '\n';
    }
  }
  return text;
}

std::vector<std::vector<std::string>> record_rows(const json& records) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : records) {
    rows.push_back({std::to_string(r.at("n").get<std::int64_t>()),
                    std::to_string(r.at("k").get<std::int64_t>()),
                    r.at("component").get<std::string>(),
                    format_double(r.at("re").get<double>()),
                    format_double(r.at("im").get<double>()),
                    format_double(r.at("sq").get<double>())});
  }
  return rows;
}

std::vector<std::vector<std::string>> field_rows(
    const json& items, const std::vector<std::string>& fields) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& item : items) {
    std::vector<std::string> row;
    for (const auto& field : fields) {
      const auto& v = item.at(field);
      if (v.is_number_integer()) {
        row.push_back(std::to_string(v.get<std::int64_t>()));
      } else if (v.is_boolean()) {
        row.push_back(v.get<bool>() ? "true" : "false");
      } else if (v.is_string()) {
        row.push_back(v.get<std::string>());
      } else {
        row.push_back(format_double(v.get<double>()));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_csv(const RunConfig& config, const json& doc) {
  switch (config.mode) {
    case RunMode::qw:
    case RunMode::rca: {
      if (config.output_path.empty()) {
        throw ConfigError("csv output for qw/rca needs --out (two tables)");
      }
      write_text(config.output_path,
                 csv_table({"n", "k", "component", "re", "im", "sq"},
                           record_rows(doc.at("records"))));
      const bool is_qw = config.mode == RunMode::qw;
      const std::vector<std::string> fields =
          is_qw ? std::vector<std::string>{"n", "left_sq", "right_sq", "total"}
                : std::vector<std::string>{"n", "norm_sq", "first_moment"};
      write_text(derive_path(config.output_path, "_summary"),
                 csv_table(fields, field_rows(doc.at("summary"), fields)));
      break;
    }
    case RunMode::norms: {
      const std::vector<std::string> fields = {
          "n",      "direct",      "parseval",  "closed_total",
          "steady", "oscillatory", "quad_error"};
      write_text(config.output_path,
                 csv_table(fields, field_rows(doc.at("rows"), fields)));
      break;
    }
    case RunMode::classify: {
      const std::vector<std::string> header = {
          "phi_perp_member",     "phi_star_member",     "c",
          "symmetric_member",    "symmetric_violation", "zero_moment_member",
          "zero_moment_violation", "conserved_member",  "conserved_violation"};
      const auto& emp = doc.at("empirical");
      std::vector<std::string> row = {
          doc.at("phi_perp").at("member").get<bool>() ? "true" : "false",
          doc.at("phi_star").at("member").get<bool>() ? "true" : "false",
          format_double(doc.at("c").get<double>()),
          emp.at("symmetric").at("member").get<bool>() ? "true" : "false",
          format_double(emp.at("symmetric").at("max_violation").get<double>()),
          emp.at("zero_moment").at("member").get<bool>() ? "true" : "false",
          format_double(emp.at("zero_moment").at("max_violation").get<double>()),
          emp.at("conserved").at("member").get<bool>() ? "true" : "false",
          format_double(emp.at("conserved").at("max_violation").get<double>())};
      write_text(config.output_path, csv_table(header, {row}));
      break;
    }
    case RunMode::limits: {
      if (doc.contains("norm_limit")) {
        write_text(config.output_path,
                   csv_table({"theta", "norm_limit"},
                             {{format_double(doc.at("theta").get<double>()),
                               format_double(doc.at("norm_limit").get<double>())}}));
      } else {
        write_text(
            config.output_path,
            csv_table({"theta", "left_limit", "right_limit"},
                      {{format_double(doc.at("theta").get<double>()),
                        format_double(doc.at("left_limit").get<double>()),
                        format_double(doc.at("right_limit").get<double>())}}));
      }
      break;
    }
    case RunMode::verify: {
      const std::vector<std::string> fields = {"name", "pass", "worst",
                                               "tolerance", "detail"};
      write_text(config.output_path,
                 csv_table(fields, field_rows(doc.at("checks"), fields)));
      break;
    }
  }
}

}  // namespace

json run_to_json(const RunConfig& config) {
  switch (config.mode) {
    case RunMode::qw:
      return run_qw(config);
    case RunMode::rca:
      return run_rca(config);
    case RunMode::classify:
      return run_classify(config);
    case RunMode::norms:
      return run_norms(config);
    case RunMode::limits:
      return run_limits(config);
    case RunMode::verify:
      return run_verify(config);
  }
  throw ConfigError("unknown mode");
}

int run(const RunConfig& config) {
  const json doc = run_to_json(config);
  if (config.format == OutputFormat::json) {
    write_text(config.output_path, doc.dump(2) + "\n");
  } else {
    emit_csv(config, doc);
  }
  if (config.mode == RunMode::verify && !doc.at("all_pass").get<bool>()) {
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

json sweep_cell(const SweepConfig& sweep_config, double theta,
                const InitialSpec& initial) {
  RunConfig cell;
  cell.mode = sweep_config.mode;
  cell.theta = theta;
  cell.initial = initial;
  cell.chirality = sweep_config.chirality;
  cell.steps = sweep_config.steps;
  cell.c = sweep_config.c;
  return run_to_json(cell);
}

std::vector<std::vector<std::string>> sweep_csv_rows(const RunMode mode,
                                                     const json& cells,
                                                     std::vector<std::string>& header) {
  std::vector<std::string> fields;
  switch (mode) {
    case RunMode::qw:
      fields = {"n", "left_sq", "right_sq", "total"};
      break;
    case RunMode::rca:
      fields = {"n", "norm_sq", "first_moment"};
      break;
    case RunMode::norms:
      fields = {"n",      "direct",      "parseval",  "closed_total",
                "steady", "oscillatory", "quad_error"};
      break;
    default:
      fields = {};
      break;
  }
  header = {"theta", "initial_index", "status"};
  if (mode == RunMode::limits) {
    header.insert(header.end(), {"left_limit", "right_limit", "norm_limit"});
  } else {
    header.insert(header.end(), fields.begin(), fields.end());
  }

  std::vector<std::vector<std::string>> rows;
  for (const auto& cell : cells) {
    const std::string theta = format_double(cell.at("theta").get<double>());
    const std::string index =
        std::to_string(cell.at("initial_index").get<std::int64_t>());
    if (cell.at("status").get<std::string>() != "ok") {
      rows.push_back({theta, index, cell.at("status").get<std::string>()});
      continue;
    }
    const auto& result = cell.at("result");
    if (mode == RunMode::limits) {
      const bool has_norm = result.contains("norm_limit");
      rows.push_back(
          {theta, index, "ok",
           has_norm ? "" : format_double(result.at("left_limit").get<double>()),
           has_norm ? "" : format_double(result.at("right_limit").get<double>()),
           has_norm ? format_double(result.at("norm_limit").get<double>()) : ""});
      continue;
    }
    const char* key = mode == RunMode::norms ? "rows" : "summary";
    for (auto row : field_rows(result.at(key), fields)) {
      std::vector<std::string> full = {theta, index, "ok"};
      full.insert(full.end(), row.begin(), row.end());
      rows.push_back(std::move(full));
    }
  }
  return rows;
}

}  // namespace

json sweep_to_json(const SweepConfig& config) {
  if (config.thetas.empty()) throw ConfigError("sweep needs a nonempty theta list");
  if (config.initials.empty()) {
    throw ConfigError("sweep needs a nonempty initial-state list");
  }
  if (config.mode == RunMode::classify || config.mode == RunMode::verify) {
    throw ConfigError("sweep submode must be qw, rca, norms or limits");
  }

  // Cells are independent; run them concurrently and collect in index order.
  std::vector<std::future<json>> futures;
  futures.reserve(config.thetas.size() * config.initials.size());
  for (const double theta : config.thetas) {
    for (const auto& initial : config.initials) {
      futures.push_back(std::async(std::launch::async, sweep_cell,
                                   std::cref(config), theta, std::cref(initial)));
    }
  }

  json cells = json::array();
  bool all_ok = true;
  std::size_t index = 0;
  for (std::size_t ti = 0; ti < config.thetas.size(); ++ti) {
    for (std::size_t ii = 0; ii < config.initials.size(); ++ii, ++index) {
      json cell = {{"theta", config.thetas[ti]},
                   {"theta_index", ti},
                   {"initial_index", static_cast<std::int64_t>(ii)},
                   {"initial", initial_json(config.initials[ii])}};
      try {
        cell["result"] = futures[index].get();
        cell["status"] = "ok";
      } catch (const std::exception& e) {
        cell["status"] = std::string("error: ") + e.what();
        all_ok = false;
      }
      cells.push_back(std::move(cell));
    }
  }
  return {{"mode", "sweep"},
          {"submode", mode_name(config.mode)},
          {"steps", config.steps},
          {"cells", cells},
          {"all_ok", all_ok}};
}

int sweep(const SweepConfig& config) {
  const json doc = sweep_to_json(config);
  if (config.format == OutputFormat::json) {
    write_text(config.output_path, doc.dump(2) + "\n");
  } else {
    std::vector<std::string> header;
    const auto rows = sweep_csv_rows(config.mode, doc.at("cells"), header);
    write_text(config.output_path, csv_table(header, rows));
  }
  return doc.at("all_ok").get<bool>() ? 0 : 1;
}

std::vector<TrajectoryRecord> records_from_json(const json& report) {
  std::vector<TrajectoryRecord> records;
  for (const auto& r : report.at("records")) {
    records.push_back({r.at("n").get<std::int64_t>(), r.at("k").get<std::int64_t>(),
                       r.at("component").get<std::string>(),
                       r.at("re").get<double>(), r.at("im").get<double>(),
                       r.at("sq").get<double>()});
  }
  return records;
}

}  // namespace qwrca

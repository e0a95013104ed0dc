#include "zlap/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zlap/bottleneck.hpp"
#include "zlap/dynamics.hpp"
#include "zlap/error.hpp"
#include "zlap/operators.hpp"
#include "zlap/spectral.hpp"

namespace zlap {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << contents;
}

namespace {

std::string double_string(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int parse_int(const std::string& token, int line) {
  int value = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw input_error("line " + std::to_string(line) + ": '" + token + "' is not an integer");
  return value;
}

double parse_double(const std::string& token, int line) {
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
    throw input_error("line " + std::to_string(line) + ": '" + token + "' is not a number");
  return value;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  std::string t;
  while (ss >> t) tokens.push_back(t);
  return tokens;
}

}  // namespace

Graph parse_edge_list(const std::string& text, std::optional<bool> directed) {
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  int header_n = 0;
  bool header_directed = false;
  std::vector<Edge> edges;
  int max_index = -1;
  bool first_content = true;

  while (std::getline(stream, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;

    if (first_content && tokens[0] == "n") {
      if (tokens.size() != 4 || tokens[2] != "directed")
        throw input_error("line " + std::to_string(lineno) +
                          ": header must read 'n <int> directed <0|1>'");
      header_n = parse_int(tokens[1], lineno);
      const int flag = parse_int(tokens[3], lineno);
      if (flag != 0 && flag != 1)
        throw input_error("line " + std::to_string(lineno) + ": directed flag must be 0 or 1");
      header_directed = flag == 1;
      saw_header = true;
      first_content = false;
      continue;
    }
    first_content = false;

    if (tokens.size() != 3)
      throw input_error("line " + std::to_string(lineno) + ": expected 'u v w'");
    Edge e;
    e.u = parse_int(tokens[0], lineno);
    e.v = parse_int(tokens[1], lineno);
    e.w = parse_double(tokens[2], lineno);
    max_index = std::max({max_index, e.u, e.v});
    edges.push_back(e);
  }

  int n = header_n;
  if (!saw_header) {
    if (max_index < 0) throw input_error("edge list is empty and has no header");
    n = max_index + 1;
  }
  const bool dir = directed.value_or(saw_header ? header_directed : false);
  return Graph(n, edges, dir);
}

std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.size() << " directed " << (g.directed() ? 1 : 0) << "\n";
  for (int u = 0; u < g.size(); ++u) {
    const int start = g.directed() ? 0 : u;
    for (int v = start; v < g.size(); ++v) {
      const double w = g.weights()(u, v);
      if (w != 0.0) out << u << " " << v << " " << double_string(w) << "\n";
    }
  }
  return out.str();
}

Scenario scenario_from_json(const json& j, const std::string& command,
                            const std::string& base_dir) {
  if (!j.is_object()) throw input_error("scenario must be a JSON object");
  Scenario s;
  s.command = command;
  if (j.contains("command") || j.contains("params") || j.contains("graph")) {
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (key != "command" && key != "params" && key != "graph" && key != "directed")
        throw input_error("unknown scenario key '" + key + "'");
    }
    if (j.contains("command")) {
      const std::string file_command = j.at("command").get<std::string>();
      if (!command.empty() && file_command != command)
        throw input_error("scenario command '" + file_command + "' does not match invoked '" +
                          command + "'");
      s.command = file_command;
    }
    if (j.contains("graph")) s.graph_path = j.at("graph").get<std::string>();
    if (j.contains("directed")) {
      if (!j.at("directed").is_boolean()) throw input_error("'directed' must be a boolean");
      s.directed = j.at("directed").get<bool>();
    }
    if (j.contains("params")) {
      if (!j.at("params").is_object()) throw input_error("'params' must be an object");
      s.params = j.at("params");
    }
  } else {
    s.params = j;
  }
  if (!base_dir.empty() && !s.graph_path.empty()) {
    const std::filesystem::path p(s.graph_path);
    if (p.is_relative()) s.graph_path = (std::filesystem::path(base_dir) / p).string();
  }
  return s;
}

namespace {

void require_keys(const json& params, std::initializer_list<const char*> allowed,
                  const std::string& command) {
  for (const auto& [key, value] : params.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw input_error("unknown parameter '" + key + "' for command " + command);
  }
}

double param_number(const json& p, const char* key, std::optional<double> fallback = {}) {
  if (!p.contains(key)) {
    if (fallback) return *fallback;
    throw input_error(std::string("missing required parameter '") + key + "'");
  }
  if (!p.at(key).is_number()) throw input_error(std::string("parameter '") + key + "' must be a number");
  return p.at(key).get<double>();
}

int param_int(const json& p, const char* key, std::optional<int> fallback = {}) {
  if (!p.contains(key)) {
    if (fallback) return *fallback;
    throw input_error(std::string("missing required parameter '") + key + "'");
  }
  if (!p.at(key).is_number_integer())
    throw input_error(std::string("parameter '") + key + "' must be an integer");
  return p.at(key).get<int>();
}

bool param_bool(const json& p, const char* key, bool fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_boolean())
    throw input_error(std::string("parameter '") + key + "' must be a boolean");
  return p.at(key).get<bool>();
}

std::string param_string(const json& p, const char* key, std::optional<std::string> fallback = {}) {
  if (!p.contains(key)) {
    if (fallback) return *fallback;
    throw input_error(std::string("missing required parameter '") + key + "'");
  }
  if (!p.at(key).is_string())
    throw input_error(std::string("parameter '") + key + "' must be a string");
  return p.at(key).get<std::string>();
}

// Scalars broadcast to length n; arrays must match n exactly.
Vec param_diag(const json& p, const char* key, int n, double fallback) {
  if (!p.contains(key)) return Vec(static_cast<size_t>(n), fallback);
  const json& v = p.at(key);
  if (v.is_number()) return Vec(static_cast<size_t>(n), v.get<double>());
  if (v.is_array()) {
    if (static_cast<int>(v.size()) != n)
      throw input_error(std::string("parameter '") + key + "' must have length " +
                        std::to_string(n));
    Vec out;
    out.reserve(v.size());
    for (const json& el : v) {
      if (!el.is_number())
        throw input_error(std::string("parameter '") + key + "' must contain numbers");
      out.push_back(el.get<double>());
    }
    return out;
  }
  throw input_error(std::string("parameter '") + key + "' must be a number or array");
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json int_vec_json(const std::vector<int>& v) {
  json out = json::array();
  for (int x : v) out.push_back(x);
  return out;
}

json cut_json(const CutResult& r) {
  json out;
  out["conductance"] = r.conductance;
  out["cut"] = r.cut;
  out["subset"] = int_vec_json(r.subset);
  out["vol_rest"] = r.vol_rest;
  out["vol_s"] = r.vol_s;
  return out;
}

CandidateKind candidate_from_name(const std::string& name) {
  if (name == "L0") return CandidateKind::L0;
  if (name == "L1") return CandidateKind::L1;
  if (name == "L2") return CandidateKind::L2;
  throw input_error("unknown Laplacian '" + name + "' (expected L0, L1 or L2)");
}

ShiftOperator build_shift(const Graph& g, const json& p) {
  const std::string op = param_string(p, "op", std::string("random_walk"));
  const int n = g.size();
  if (op == "random_walk") return random_walk_operator(g);
  if (op == "consensus") return consensus_operator(g);
  if (op == "replicator") return replicator_operator(g);
  if (op == "sis") return sis_filter(g, param_number(p, "mu"), param_number(p, "beta"));
  if (op == "nonnegative") return nonnegative_filter(g, param_diag(p, "Z", n, 1.0));
  if (op == "dual") return dual_consensus_filter(g, param_diag(p, "Z", n, 1.0));
  throw input_error("unknown shift operator '" + op + "'");
}

json run_transform(const Graph& g, const json& p) {
  require_keys(p, {"op", "B", "T", "Z", "rho", "mu", "beta"}, "transform");
  const std::string op = param_string(p, "op");
  const int n = g.size();
  json out;
  auto graph_output = [&out](const Graph& w) {
    out["kind"] = "graph";
    out["directed"] = w.directed();
    out["traffic"] = w.total_traffic();
    out["weights"] = matrix_json(w.weights());
  };
  auto operator_output = [&out](const ShiftOperator& s) {
    out["kind"] = "operator";
    out["recipe"] = recipe_name(s.recipe);
    if (s.rho) out["rho"] = *s.rho;
    out["matrix"] = matrix_json(s.matrix);
  };
  auto laplacian_output = [&out](const ZLaplacian& l) {
    out["kind"] = "laplacian";
    out["matrix"] = matrix_json(l.matrix);
  };

  if (op == "bias") {
    graph_output(bias_transform(g, param_diag(p, "B", n, 1.0)));
  } else if (op == "delay") {
    graph_output(delay_transform(g, param_diag(p, "T", n, 1.0)));
  } else if (op == "parameterized") {
    laplacian_output(
        parameterized_laplacian(g, param_diag(p, "B", n, 1.0), param_diag(p, "T", n, 1.0)));
  } else if (op == "zlaplacian") {
    laplacian_output(z_laplacian(g, param_diag(p, "Z", n, 1.0), param_diag(p, "T", n, 1.0)));
  } else if (op == "similarity") {
    laplacian_output(
        similarity_transform(g, param_diag(p, "T", n, 1.0), param_number(p, "rho", 0.5)));
  } else if (op == "replicator") {
    operator_output(replicator_operator(g));
    out["lambda_max"] = perron_eigenpair(g).value;
  } else {
    operator_output(build_shift(g, p));
  }
  return out;
}

json run_evolve(const Graph& g, const json& p) {
  require_keys(p, {"mode", "theta0", "steps", "t", "op", "Z", "T", "mu", "beta", "coeffs",
                   "epsilon"},
               "evolve");
  const int n = g.size();
  if (!p.contains("theta0")) throw input_error("evolve requires 'theta0'");
  const Vec theta0 = param_diag(p, "theta0", n, 0.0);
  json out;

  if (p.contains("coeffs")) {
    const Vec coeffs = param_diag(p, "coeffs", static_cast<int>(p.at("coeffs").size()), 1.0);
    const Signal result = apply_polynomial_filter({theta0, 0.0}, build_shift(g, p), coeffs);
    out["kind"] = "signal";
    out["signal"] = vec_json(result.values);
    out["time"] = result.time;
    return out;
  }

  std::string mode = param_string(p, "mode", std::string(""));
  if (mode.empty()) {
    if (p.contains("steps") && !p.contains("t")) mode = "discrete";
    else if (p.contains("t") && !p.contains("steps")) mode = "continuous";
    else
      throw input_error("evolve needs 'mode', or exactly one of 'steps'/'t'");
  }

  if (mode == "discrete") {
    const int steps = param_int(p, "steps");
    const EvolutionReport report = evolve_discrete({theta0, 0.0}, build_shift(g, p), steps);
    out["kind"] = "trajectory";
    out["classification"] = growth_name(report.classification);
    out["growth"] = report.growth;
    json traj = json::array();
    json times = json::array();
    for (const Signal& s : report.trajectory) {
      traj.push_back(vec_json(s.values));
      times.push_back(s.time);
    }
    out["times"] = std::move(times);
    out["trajectory"] = std::move(traj);
    return out;
  }
  if (mode == "continuous") {
    const double t = param_number(p, "t");
    const double epsilon = param_number(p, "epsilon", 1e-12);
    const ZLaplacian l =
        z_laplacian(g, param_diag(p, "Z", n, 1.0), param_diag(p, "T", n, 1.0));
    const Signal result = evolve_continuous({theta0, 0.0}, l, t, epsilon);
    out["kind"] = "signal";
    out["signal"] = vec_json(result.values);
    out["time"] = result.time;
    return out;
  }
  throw input_error("unknown evolve mode '" + mode + "' (expected discrete or continuous)");
}

json run_spectrum(const Graph& g, const json& p) {
  require_keys(p, {"which", "Z", "vectors"}, "spectrum");
  const CandidateKind which = candidate_from_name(param_string(p, "which", std::string("L0")));
  const Vec z = param_diag(p, "Z", g.size(), 1.0);
  const SpectralDecomposition dec = sym_eig(candidate_laplacian(g, which, z));
  json out;
  out["eigenvalues"] = vec_json(dec.eigenvalues);
  out["which"] = candidate_name(which);
  if (param_bool(p, "vectors", false)) out["eigenvectors"] = matrix_json(dec.eigenvectors);
  return out;
}

json run_filter(const Graph& g, const json& p) {
  require_keys(p, {"which", "Z", "k", "band", "x"}, "filter");
  const CandidateKind which = candidate_from_name(param_string(p, "which", std::string("L0")));
  const Vec z = param_diag(p, "Z", g.size(), 1.0);
  const int k = param_int(p, "k");
  const std::string band = param_string(p, "band", std::string("low"));
  if (band != "low" && band != "high")
    throw input_error("band must be 'low' or 'high'");

  const SpectralDecomposition dec = sym_eig(candidate_laplacian(g, which, z));
  const BandMask mask = band == "low" ? low_pass_mask(dec, k) : high_pass_mask(dec, k);
  const Matrix recon = band_reconstruct(g, which, dec, mask, z);

  json out;
  out["band"] = band;
  out["k"] = k;
  out["kept"] = int_vec_json(mask.keep);
  out["reconstruction"] = matrix_json(recon);
  out["which"] = candidate_name(which);
  if (p.contains("x")) {
    const double x = param_number(p, "x");
    json edges = json::array();
    for (const WeightedEdge& e : top_percent_edges(recon, x)) {
      json row = json::array();
      row.push_back(e.u);
      row.push_back(e.v);
      row.push_back(e.w);
      edges.push_back(std::move(row));
    }
    out["edges"] = std::move(edges);
    out["x"] = x;
  }
  return out;
}

json run_bottleneck(const Graph& g, const json& p) {
  require_keys(p, {"method", "protocol", "subset"}, "bottleneck");
  json out;
  const Graph* w = &g;
  std::optional<ProtocolModel> model;
  if (p.contains("protocol")) {
    model = protocol_model(g, protocol_from_name(param_string(p, "protocol")));
    w = &model->transformed;
    out["protocol"] = protocol_name(model->protocol);
    out["traffic"] = model->traffic;
  }
  if (p.contains("subset")) {
    if (!p.at("subset").is_array()) throw input_error("'subset' must be an array of vertices");
    std::vector<int> subset;
    for (const json& el : p.at("subset")) {
      if (!el.is_number_integer()) throw input_error("'subset' must contain integers");
      subset.push_back(el.get<int>());
    }
    out.update(cut_json(conductance(*w, subset)));
    return out;
  }
  const CutMethod method = cut_method_from_name(param_string(p, "method", std::string("sweep")));
  out["method"] = cut_method_name(method);
  out.update(cut_json(min_conductance(*w, method)));
  return out;
}

json run_heal(const Graph& g, const json& p) {
  require_keys(p, {"protocol", "candidates", "bandwidth", "delay_update", "method"}, "heal");
  if (!p.contains("candidates") || !p.at("candidates").is_array())
    throw input_error("heal requires 'candidates' as an array of [u, v] pairs");
  std::vector<std::pair<int, int>> candidates;
  for (const json& el : p.at("candidates")) {
    if (!el.is_array() || el.size() != 2 || !el[0].is_number_integer() ||
        !el[1].is_number_integer())
      throw input_error("each heal candidate must be a [u, v] pair of integers");
    candidates.emplace_back(el[0].get<int>(), el[1].get<int>());
  }
  const Protocol protocol = protocol_from_name(param_string(p, "protocol", std::string("base")));
  const double bandwidth = param_number(p, "bandwidth", 1.0);
  const bool delay_update = param_bool(p, "delay_update", false);
  const CutMethod method = cut_method_from_name(param_string(p, "method", std::string("brute")));

  json ranking = json::array();
  for (const HealOutcome& o : heal_rank(g, protocol, candidates, bandwidth, delay_update, method)) {
    json row = cut_json(o.cut);
    row["phi_star"] = o.phi_star;
    row["u"] = o.u;
    row["v"] = o.v;
    ranking.push_back(std::move(row));
  }
  json out;
  out["bandwidth"] = bandwidth;
  out["delay_update"] = delay_update;
  out["protocol"] = protocol_name(protocol);
  out["ranking"] = std::move(ranking);
  return out;
}

json run_epidemic(const Graph& g, const json& p) {
  require_keys(p, {"mu", "beta", "z"}, "epidemic");
  std::optional<double> z;
  if (p.contains("z")) z = param_number(p, "z");
  const EpidemicReport report =
      classify_epidemic(g, param_number(p, "mu"), param_number(p, "beta"), z);
  json out;
  out["classification"] = epidemic_name(report.classification);
  out["lambda_max"] = report.lambda_max;
  out["threshold"] = report.threshold;
  out["transmissibility"] = report.transmissibility;
  if (report.generalized_threshold) out["generalized_threshold"] = *report.generalized_threshold;
  if (report.generalized_transmissibility)
    out["generalized_transmissibility"] = *report.generalized_transmissibility;
  return out;
}

}  // namespace

Report run_scenario(const Scenario& s) {
  if (s.graph_path.empty()) throw input_error("no graph file specified");
  const Graph g = parse_edge_list(read_file(s.graph_path), s.directed);

  Report r;
  r.command = s.command;
  r.inputs["directed"] = g.directed();
  r.inputs["graph"] = s.graph_path;
  r.inputs["n"] = g.size();
  r.inputs["params"] = s.params;
  r.inputs["traffic"] = g.total_traffic();

  try {
    if (s.command == "transform")
      r.outputs = run_transform(g, s.params);
    else if (s.command == "evolve")
      r.outputs = run_evolve(g, s.params);
    else if (s.command == "spectrum")
      r.outputs = run_spectrum(g, s.params);
    else if (s.command == "filter")
      r.outputs = run_filter(g, s.params);
    else if (s.command == "bottleneck")
      r.outputs = run_bottleneck(g, s.params);
    else if (s.command == "heal")
      r.outputs = run_heal(g, s.params);
    else if (s.command == "epidemic")
      r.outputs = run_epidemic(g, s.params);
    else
      throw input_error("unknown command '" + s.command + "'");
  } catch (const input_error& e) {
    throw input_error(s.command + ": " + e.what());
  } catch (const numerical_error& e) {
    throw numerical_error(s.command + ": " + e.what());
  }
  return r;
}

ReportFormat format_from_name(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw input_error("unknown format '" + name + "' (expected json or csv)");
}

namespace {

std::string csv_indexed_vector(const json& values) {
  std::string out = "index,value\n";
  int i = 0;
  for (const json& v : values)
    out += std::to_string(i++) + "," + double_string(v.get<double>()) + "\n";
  return out;
}

}  // namespace

std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["outputs"] = r.outputs;
    j["version"] = r.version;
    return j.dump(2) + "\n";
  }

  // CSV: vector- and edge-list-valued outputs only
  if (r.command == "spectrum") return csv_indexed_vector(r.outputs.at("eigenvalues"));
  if (r.command == "evolve" && r.outputs.contains("signal"))
    return csv_indexed_vector(r.outputs.at("signal"));
  if (r.command == "filter" && r.outputs.contains("edges")) {
    std::string out = "u,v,w\n";
    for (const json& e : r.outputs.at("edges"))
      out += std::to_string(e[0].get<int>()) + "," + std::to_string(e[1].get<int>()) + "," +
             double_string(e[2].get<double>()) + "\n";
    return out;
  }
  if (r.command == "heal") {
    std::string out = "u,v,phi_star\n";
    for (const json& row : r.outputs.at("ranking"))
      out += std::to_string(row.at("u").get<int>()) + "," +
             std::to_string(row.at("v").get<int>()) + "," +
             double_string(row.at("phi_star").get<double>()) + "\n";
    return out;
  }
  throw input_error("CSV output covers vectors and edge lists only; use --format json");
}

}  // namespace zlap

// Copyright 2026 The blindeep Authors.
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

#include "blindeep/io.h"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "blindeep/error.h"

namespace blindeep::io {

using nlohmann::json;

std::string format_number(double x) {
  std::array<char, 32> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string num(double x) { return format_number(x); }

std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return in;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

template <typename T>
T get_field(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what(), 0);
  }
}

std::vector<std::vector<int>> cells_from_json(const json& j, int n) {
  if (!j.is_array()) throw ParseError("partition must be a list of lists", 0);
  std::vector<std::vector<int>> cells;
  for (const auto& cell : j) {
    if (!cell.is_array()) throw ParseError("partition cell must be a list", 0);
    std::vector<int> c;
    for (const auto& v : cell) {
      if (!v.is_number_integer()) throw ParseError("vertex ids must be integers", 0);
      const int id = v.get<int>();
      if (id < 1 || id > n) {
        throw ParseError("vertex " + std::to_string(id) + " outside 1.." + std::to_string(n), 0);
      }
      c.push_back(id - 1);
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

}  // namespace

json parse_json(std::istream& in) {
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(e.what(), line);
  }
}

json load_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_json(in);
}

Graph read_edge_list(std::istream& in, std::optional<int> n) {
  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  int max_id = 0;
  std::set<Edge> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    long long u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) throw ParseError("expected \"u v\"", lineno);
    if (u < 1 || v < 1 || u > (1 << 30) || v > (1 << 30)) {
      throw ParseError("vertex ids are 1-based positive integers", lineno);
    }
    if (u == v) throw ParseError("self loop", lineno);
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) throw ParseError("duplicate edge", lineno);
    max_id = std::max<int>(max_id, static_cast<int>(std::max(u, v)));
    edges.emplace_back(static_cast<int>(u) - 1, static_cast<int>(v) - 1);
  }
  const int count = n.value_or(max_id);
  if (count < max_id) throw ParseError("edge endpoint exceeds n", 0);
  return Graph(count, std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

InstanceFile read_instance_json(std::istream& in) {
  const json j = parse_json(in);
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw ParseError("instance JSON needs \"n\" and \"edges\"", 0);
  }
  const int n = get_field<int>(j, "n", 0);
  if (n < 1) throw ParseError("\"n\" must be positive", 0);
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be [u, v]", 0);
    const int u = e[0].get<int>();
    const int v = e[1].get<int>();
    if (u < 1 || v < 1 || u > n || v > n) throw ParseError("edge endpoint outside 1..n", 0);
    edges.emplace_back(u - 1, v - 1);
  }
  InstanceFile out{Graph(n, std::move(edges)), std::nullopt};
  if (j.contains("cells")) out.cells = Partition(cells_from_json(j.at("cells"), n), n);
  return out;
}

void write_instance_json(std::ostream& out, const Graph& g, const Partition* cells) {
  json j;
  j["n"] = g.n();
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  j["edges"] = std::move(edges);
  if (cells != nullptr) j["cells"] = partition_to_json(*cells);
  out << j.dump() << '\n';
}

InstanceFile load_instance(const std::filesystem::path& path) {
  auto in = open_in(path);
  if (path.extension() == ".json") return read_instance_json(in);
  return {read_edge_list(in), std::nullopt};
}

Partition read_partition_json(std::istream& in, int n) {
  return Partition(cells_from_json(parse_json(in), n), n);
}

json partition_to_json(const Partition& p) {
  json cells = json::array();
  for (const auto& cell : p.cells()) {
    json c = json::array();
    for (int v : cell) c.push_back(v + 1);
    cells.push_back(std::move(c));
  }
  return cells;
}

Partition load_partition(const std::filesystem::path& path, int n) {
  auto in = open_in(path);
  return read_partition_json(in, n);
}

SignalBatch read_signals_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ls(t);
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      double x = 0.0;
      if (!parse_double(trim(tok), x)) throw ParseError("bad number '" + tok + "'", lineno);
      row.push_back(x);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("expected " + std::to_string(rows.front().size()) + " values, got " +
                           std::to_string(row.size()),
                       lineno);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no samples", 0);
  SignalBatch batch;
  batch.samples.resize(static_cast<Eigen::Index>(rows.front().size()),
                       static_cast<Eigen::Index>(rows.size()));
  for (std::size_t l = 0; l < rows.size(); ++l) {
    for (std::size_t i = 0; i < rows[l].size(); ++i) batch.samples(i, l) = rows[l][i];
  }
  return batch;
}

void write_signals_csv(std::ostream& out, const SignalBatch& batch) {
  for (int l = 0; l < batch.m(); ++l) {
    for (int i = 0; i < batch.n(); ++i) out << (i ? "," : "") << num(batch.samples(i, l));
    out << '\n';
  }
}

namespace {

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

template <typename T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::istream& in) {
  T v;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw ParseError("binary signals file is truncated", 0);
  }
  return to_little(v);
}

}  // namespace

SignalBatch read_signals_binary(std::istream& in) {
  const auto n = take<std::uint32_t>(in);
  const auto m = take<std::uint32_t>(in);
  if (n == 0 || m == 0) throw ParseError("binary signals header has a zero dimension", 0);
  SignalBatch batch;
  batch.samples.resize(n, m);
  for (std::uint32_t l = 0; l < m; ++l) {
    for (std::uint32_t i = 0; i < n; ++i) batch.samples(i, l) = take<double>(in);
  }
  return batch;
}

void write_signals_binary(std::ostream& out, const SignalBatch& batch) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(batch.n()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(batch.m()));
  for (int l = 0; l < batch.m(); ++l) {
    for (int i = 0; i < batch.n(); ++i) put<double>(out, batch.samples(i, l));
  }
}

SignalBatch load_signals(const std::filesystem::path& path) {
  if (path.extension() == ".bin") {
    auto in = open_in(path, true);
    return read_signals_binary(in);
  }
  auto in = open_in(path);
  if (path.extension() == ".json") {
    const json j = parse_json(in);
    const auto rows = j.is_object() ? j.at("samples") : j;
    if (!rows.is_array() || rows.empty()) throw ParseError("signals JSON needs a list of samples", 0);
    SignalBatch batch;
    const std::size_t n = rows.front().size();
    batch.samples.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t l = 0; l < rows.size(); ++l) {
      if (rows[l].size() != n) throw ParseError("ragged sample " + std::to_string(l + 1), 0);
      for (std::size_t i = 0; i < n; ++i) batch.samples(i, l) = rows[l][i].get<double>();
    }
    if (j.is_object()) {
      batch.noise_var = get_field<double>(j, "noise_var", 0.0);
      batch.seed = get_field<std::uint64_t>(j, "seed", 0);
      batch.filter = get_field<std::string>(j, "filter", "");
    }
    return batch;
  }
  return read_signals_csv(in);
}

FilterSetting filter_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("filter must be an object", 0);
  const std::string kind = get_field<std::string>(j, "kind", "");
  FilterSetting s;
  if (kind == "heat") {
    s.filter = GraphFilter::heat(get_field<double>(j, "sigma", 1.0));
  } else if (kind == "iir") {
    s.filter = GraphFilter::iir(get_field<double>(j, "alpha", 1.0));
  } else if (kind == "poly") {
    s.filter = GraphFilter::polynomial(get_field<std::vector<double>>(j, "coeffs", {1.0}));
  } else {
    throw ParseError("filter kind must be heat, iir or poly (got '" + kind + "')", 0);
  }
  const std::string scale = get_field<std::string>(j, "scale", "none");
  if (scale != "none" && scale != "dmax") throw ParseError("filter scale must be none or dmax", 0);
  s.scale_by_dmax = scale == "dmax";
  s.name = get_field<std::string>(j, "name", kind);
  return s;
}

SolverConfig solver_from_json(const json& j) {
  SolverConfig c;
  if (j.is_string()) {
    c.kind = parse_solver_kind(j.get<std::string>());
    return c;
  }
  if (!j.is_object()) throw ParseError("solver config must be an object or a name", 0);
  c.kind = parse_solver_kind(get_field<std::string>(j, "solver", "kmeans"));
  if (j.contains("restarts")) c.restarts = get_field<int>(j, "restarts", 0);
  if (j.contains("max_iter")) c.max_iter = get_field<int>(j, "max_iter", 0);
  if (j.contains("tol")) c.tol = get_field<double>(j, "tol", 0.0);
  c.seed = get_field<std::uint64_t>(j, "seed", 0);
  if (j.contains("rho_schedule")) {
    c.rho_schedule = get_field<std::vector<double>>(j, "rho_schedule", {});
  }
  return c;
}

PlantedSpec planted_from_json(const json& j) {
  PlantedSpec spec;
  spec.sizes = get_field<std::vector<int>>(j, "sizes", {});
  const int r = static_cast<int>(spec.sizes.size());
  const auto b = get_field<std::vector<std::vector<int>>>(j, "b", {});
  if (static_cast<int>(b.size()) != r) throw ParseError("\"b\" must be r x r", 0);
  spec.cross_degrees.resize(r, r);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(b[i].size()) != r) throw ParseError("\"b\" must be r x r", 0);
    for (int k = 0; k < r; ++k) spec.cross_degrees(i, k) = b[i][k];
  }
  if (j.contains("p_intra") && j.at("p_intra").is_array()) {
    spec.p_intra = get_field<std::vector<double>>(j, "p_intra", {});
  } else {
    spec.p_intra.assign(r, get_field<double>(j, "p_intra", 0.0));
  }
  validate_planted_spec(spec);
  return spec;
}

ExperimentConfig experiment_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("experiment config must be an object", 0);
  ExperimentConfig cfg;
  if (!j.contains("instance")) throw ParseError("experiment config needs \"instance\"", 0);
  cfg.instance = planted_from_json(j.at("instance"));
  if (j.contains("filters")) {
    for (const auto& f : j.at("filters")) cfg.filters.push_back(filter_from_json(f));
  } else if (j.contains("filter")) {
    cfg.filters.push_back(filter_from_json(j.at("filter")));
  }
  cfg.noise_var = get_field<double>(j, "noise_var", cfg.noise_var);
  cfg.r = get_field<int>(j, "r", static_cast<int>(cfg.instance.sizes.size()));
  cfg.m_list = get_field<std::vector<int>>(j, "m_list", {});
  cfg.trials = get_field<int>(j, "trials", cfg.trials);
  if (j.contains("solvers")) {
    for (const auto& s : j.at("solvers")) cfg.solvers.push_back(solver_from_json(s));
  } else {
    for (const char* s : {"kmeans", "psnmf", "penalty"}) cfg.solvers.push_back(solver_from_json(s));
  }
  cfg.seed = get_field<std::uint64_t>(j, "seed", 0);
  cfg.fixed_instance = get_field<bool>(j, "fixed_instance", false);
  cfg.threads = get_field<int>(j, "threads", 0);
  cfg.validate();
  return cfg;
}

json eval_to_json(const EvalReport& rep) {
  json cells = json::array();
  for (const auto& c : rep.per_cell) cells.push_back({{"correct", c.correct}, {"incorrect", c.incorrect}});
  return {{"F_c", rep.cost_fc},
          {"gamma", rep.group_accuracy},
          {"matched_acc", rep.matched_accuracy},
          {"per_cell", std::move(cells)}};
}

json extraction_to_json(const ExtractionResult& res) {
  json j;
  j["solver"] = res.solver.solver_id;
  j["partition"] = partition_to_json(res.partition);
  j["objective"] = res.solver.objective;
  j["iterations"] = res.solver.iterations;
  j["converged"] = res.solver.converged;
  j["eigenvalues"] = std::vector<double>(res.eigenspace.values.data(),
                                         res.eigenspace.values.data() + res.eigenspace.values.size());
  j["next_eigenvalue"] = res.eigenspace.next_value;
  j["notes"] = res.solver.notes;
  j["warnings"] = res.warnings;
  if (res.eval) j["eval"] = eval_to_json(*res.eval);
  return j;
}

void write_trials_csv(std::ostream& out, const BenchmarkTable& table) {
  out << "solver,filter,m,seed,F_c,gamma,matched_acc,iters,objective\n";
  for (const auto& row : table.trials) {
    out << row.solver << ',' << row.filter << ',' << row.m << ',' << row.seed << ','
        << num(row.eval.cost_fc) << ',' << num(row.eval.group_accuracy) << ','
        << num(row.eval.matched_accuracy) << ',' << row.iterations << ',' << num(row.objective)
        << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const BenchmarkTable& table) {
  const std::size_t cells = table.rows.empty() ? 0 : table.rows.front().mean_correct.size();
  out << "solver,filter,m,count,mean_F_c,mean_gamma,mean_matched_acc";
  for (std::size_t k = 0; k < cells; ++k) {
    out << ",cell" << k + 1 << "_correct,cell" << k + 1 << "_incorrect";
  }
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.solver << ',' << row.filter << ',' << row.m << ',' << row.count << ','
        << num(row.mean_fc) << ',' << num(row.mean_gamma) << ',' << num(row.mean_matched);
    for (std::size_t k = 0; k < cells; ++k) {
      out << ',' << num(row.mean_correct[k]) << ',' << num(row.mean_incorrect[k]);
    }
    out << '\n';
  }
}

void write_plot_csv(std::ostream& out, const BenchmarkTable& table, const std::string& filter) {
  out << "m,solver,metric,mean,stderr\n";
  for (const auto& row : table.rows) {
    if (row.filter != filter) continue;
    out << row.m << ',' << row.solver << ",F_c," << num(row.mean_fc) << ',' << num(row.stderr_fc) << '\n';
    out << row.m << ',' << row.solver << ",gamma," << num(row.mean_gamma) << ','
        << num(row.stderr_gamma) << '\n';
    out << row.m << ',' << row.solver << ",matched_acc," << num(row.mean_matched) << ','
        << num(row.stderr_matched) << '\n';
  }
}

json benchmark_to_json(const BenchmarkTable& table) {
  json trials = json::array();
  for (const auto& row : table.trials) {
    json t = eval_to_json(row.eval);
    t["solver"] = row.solver;
    t["filter"] = row.filter;
    t["m"] = row.m;
    t["trial"] = row.trial;
    t["seed"] = row.seed;
    t["iters"] = row.iterations;
    t["objective"] = row.objective;
    trials.push_back(std::move(t));
  }
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"solver", row.solver},
                    {"filter", row.filter},
                    {"m", row.m},
                    {"count", row.count},
                    {"mean_F_c", row.mean_fc},
                    {"mean_gamma", row.mean_gamma},
                    {"mean_matched_acc", row.mean_matched},
                    {"stderr_F_c", row.stderr_fc},
                    {"stderr_gamma", row.stderr_gamma},
                    {"stderr_matched_acc", row.stderr_matched},
                    {"mean_correct", row.mean_correct},
                    {"mean_incorrect", row.mean_incorrect}});
  }
  return {{"trials", std::move(trials)},
          {"aggregate", std::move(rows)},
          {"failed_trials", table.failed_trials},
          {"failures", table.failures}};
}

}  // namespace blindeep::io

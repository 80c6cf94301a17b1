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

#include "cli.h"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "blindeep/error.h"
#include "blindeep/io.h"
#include "blindeep/pipeline.h"

namespace blindeep::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string config;
  std::string out;
  std::string format;
};

struct GenerateArgs {
  std::vector<int> sizes;
  std::string b;
  std::vector<double> p_intra;
};

struct SignalsArgs {
  std::string instance;
  int m = 0;
  double noise = 0.01;
  std::string kind;
  double sigma = 1.0;
  double alpha = 1.0;
  std::vector<double> coeffs;
  bool scale_dmax = false;
  std::string encoding = "csv";
};

struct ExtractArgs {
  std::string signals;
  std::optional<int> r;
  std::string solver;
  std::string instance;
  std::string partition;
};

struct VerifyArgs {
  std::string instance;
  std::string partition;
};

struct BenchmarkArgs {
  std::optional<int> trials;
  std::optional<int> threads;
};

std::ofstream open_out(const fs::path& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw InvalidArgument("cannot write " + path.string());
  return f;
}

fs::path out_dir(const Globals& g) {
  fs::create_directories(g.out);
  return fs::path(g.out);
}

// "0,1,0;1,0,1;0,1,0" -> 3 x 3
Eigen::MatrixXi parse_matrix(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::stringstream ss(text);
  for (std::string row; std::getline(ss, row, ';');) {
    std::vector<int> values;
    std::stringstream rs(row);
    for (std::string tok; std::getline(rs, tok, ',');) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoi(tok, &used));
        if (tok.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InvalidArgument("--b: bad entry '" + tok + "'");
      }
    }
    rows.push_back(std::move(values));
  }
  const int r = static_cast<int>(rows.size());
  Eigen::MatrixXi b(r, r);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != r) throw InvalidArgument("--b must be a square matrix");
    for (int j = 0; j < r; ++j) b(i, j) = rows[i][j];
  }
  return b;
}

int cmd_generate(const Globals& g, const GenerateArgs& a, std::ostream& out) {
  PlantedSpec spec;
  if (!g.config.empty()) {
    json j = io::load_json(g.config);
    if (j.contains("instance")) j = j.at("instance");
    spec = io::planted_from_json(j);
  } else if (a.sizes.empty()) {
    throw InvalidArgument("generate needs --config or --sizes");
  }
  if (!a.sizes.empty()) {
    spec.sizes = a.sizes;
    spec.cross_degrees = Eigen::MatrixXi::Zero(a.sizes.size(), a.sizes.size());
    spec.p_intra.assign(a.sizes.size(), 0.0);
  }
  if (!a.b.empty()) spec.cross_degrees = parse_matrix(a.b);
  if (a.p_intra.size() == 1) {
    spec.p_intra.assign(spec.sizes.size(), a.p_intra[0]);
  } else if (!a.p_intra.empty()) {
    spec.p_intra = a.p_intra;
  }
  validate_planted_spec(spec);
  const PlantedInstance inst = generate_planted_eep(spec, g.seed);
  if (g.out.empty()) {
    io::write_instance_json(out, inst.graph, &inst.truth);
    return kOk;
  }
  const fs::path dir = out_dir(g);
  auto f = open_out(dir / "instance.json");
  io::write_instance_json(f, inst.graph, &inst.truth);
  auto e = open_out(dir / "edges.txt");
  io::write_edge_list(e, inst.graph);
  auto p = open_out(dir / "partition.json");
  p << io::partition_to_json(inst.truth).dump() << '\n';
  return kOk;
}

FilterSetting filter_from_flags(const SignalsArgs& a) {
  json j = {{"kind", a.kind.empty() ? "heat" : a.kind}, {"sigma", a.sigma}, {"alpha", a.alpha}};
  if (!a.coeffs.empty()) j["coeffs"] = a.coeffs;
  if (a.scale_dmax) j["scale"] = "dmax";
  return io::filter_from_json(j);
}

int cmd_signals(const Globals& g, const SignalsArgs& a, std::ostream& out) {
  const io::InstanceFile inst = io::load_instance(a.instance);
  const FilterSetting setting = g.config.empty() ? filter_from_flags(a) : io::filter_from_json(io::load_json(g.config));
  const GraphFilter f = setting.resolve(inst.graph.max_degree());
  const FilterMatrix fm = build_filter_matrix(f, inst.graph);
  const SignalBatch batch = sample_observations(fm, a.m, a.noise, g.seed, f.describe());
  if (g.out.empty()) {
    if (a.encoding == "bin") throw InvalidArgument("binary signals need --out");
    io::write_signals_csv(out, batch);
    return kOk;
  }
  const fs::path dir = out_dir(g);
  if (a.encoding == "bin") {
    auto file = open_out(dir / "signals.bin", true);
    io::write_signals_binary(file, batch);
  } else {
    auto file = open_out(dir / "signals.csv");
    io::write_signals_csv(file, batch);
  }
  return kOk;
}

void write_extract_csv(std::ostream& os, const ExtractionResult& res, const SignalBatch& batch,
                       std::uint64_t seed) {
  os << "solver,filter,m,seed,F_c,gamma,matched_acc,iters,objective\n";
  os << res.solver.solver_id << ',' << batch.filter << ',' << batch.m() << ',' << seed << ',';
  if (res.eval) {
    os << io::format_number(res.eval->cost_fc) << ',' << io::format_number(res.eval->group_accuracy) << ','
       << io::format_number(res.eval->matched_accuracy);
  } else {
    os << ",,";
  }
  os << ',' << res.solver.iterations << ',' << io::format_number(res.solver.objective) << '\n';
}

int cmd_extract(const Globals& g, const ExtractArgs& a, std::ostream& out, std::ostream& err) {
  const SignalBatch batch = io::load_signals(a.signals);
  SolverConfig sc;
  if (!g.config.empty()) sc = io::solver_from_json(io::load_json(g.config));
  if (!a.solver.empty()) sc.kind = parse_solver_kind(a.solver);
  if (g.seed_given) sc.seed = g.seed;

  std::optional<GroundTruth> truth;
  if (!a.instance.empty()) {
    const io::InstanceFile inst = io::load_instance(a.instance);
    if (inst.graph.n() != batch.n()) {
      throw InvalidArgument("instance has " + std::to_string(inst.graph.n()) + " vertices, signals have " +
                            std::to_string(batch.n()));
    }
    std::optional<Partition> cells = inst.cells;
    if (!a.partition.empty()) cells = io::load_partition(a.partition, inst.graph.n());
    if (cells) truth = GroundTruth::from_instance(inst.graph, *cells);
  } else if (!a.partition.empty()) {
    throw InvalidArgument("--partition needs --instance");
  }
  int r = 0;
  if (a.r) {
    r = *a.r;
  } else if (truth) {
    r = truth->truth.r();
  } else {
    throw InvalidArgument("extract needs --r or an instance with cells");
  }
  if (r < 1) throw InvalidArgument("--r must be positive");

  const ExtractionResult res = be_eeps(batch, r, sc, truth ? &*truth : nullptr);
  for (const std::string& w : res.warnings) err << "warning: " << w << '\n';

  const bool as_json = g.format == "json";
  if (g.out.empty()) {
    if (as_json) {
      out << io::extraction_to_json(res).dump(2) << '\n';
    } else {
      write_extract_csv(out, res, batch, sc.seed);
    }
    return kOk;
  }
  const fs::path dir = out_dir(g);
  auto p = open_out(dir / "partition.json");
  p << io::partition_to_json(res.partition).dump() << '\n';
  if (as_json) {
    auto f = open_out(dir / "report.json");
    f << io::extraction_to_json(res).dump(2) << '\n';
  } else {
    auto f = open_out(dir / "report.csv");
    write_extract_csv(f, res, batch, sc.seed);
  }
  return kOk;
}

json verify_to_json(const VerifyReport& rep) {
  json j;
  j["eep"] = rep.check.is_eep;
  if (rep.quotient) {
    const Eigen::MatrixXi& l = rep.quotient->laplacian;
    json rows = json::array();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < l.cols(); ++k) row.push_back(l(i, k));
      rows.push_back(row);
    }
    j["quotient_laplacian"] = rows;
  }
  if (rep.check.witness) {
    const EepWitness& w = *rep.check.witness;
    j["witness"] = {{"from_cell", w.from_cell + 1}, {"to_cell", w.to_cell + 1},
                    {"vertex_a", w.vertex_a + 1},   {"count_a", w.count_a},
                    {"vertex_b", w.vertex_b + 1},   {"count_b", w.count_b}};
  }
  return j;
}

int cmd_verify(const Globals& g, const VerifyArgs& a, std::ostream& out) {
  const io::InstanceFile inst = io::load_instance(a.instance);
  std::optional<Partition> cells = inst.cells;
  if (!a.partition.empty()) cells = io::load_partition(a.partition, inst.graph.n());
  if (!cells) throw InvalidArgument("verify needs a partition file or an instance with cells");
  const VerifyReport rep = verify(inst.graph, *cells);
  if (g.format == "json") {
    out << verify_to_json(rep).dump(2) << '\n';
  } else {
    out << format_verify(rep);
  }
  return rep.check.is_eep ? kOk : kNotEep;
}

int cmd_benchmark(const Globals& g, const BenchmarkArgs& a, std::ostream& out, std::ostream& err) {
  if (g.config.empty()) throw InvalidArgument("benchmark needs --config");
  ExperimentConfig cfg = io::experiment_from_json(io::load_json(g.config));
  if (a.trials) cfg.trials = *a.trials;
  if (a.threads) cfg.threads = *a.threads;
  if (g.seed_given) cfg.seed = g.seed;
  cfg.validate();
  const BenchmarkTable table = run_benchmark(cfg);
  for (const std::string& f : table.failures) err << "trial failed: " << f << '\n';
  if (table.trials.empty()) {
    err << "error: every trial failed\n";
    return kNumeric;
  }
  const bool as_json = g.format == "json";
  if (g.out.empty()) {
    if (as_json) {
      out << io::benchmark_to_json(table).dump(2) << '\n';
    } else {
      io::write_trials_csv(out, table);
    }
    return kOk;
  }
  const fs::path dir = out_dir(g);
  if (as_json) {
    auto f = open_out(dir / "benchmark.json");
    f << io::benchmark_to_json(table).dump(2) << '\n';
    return kOk;
  }
  auto trials = open_out(dir / "trials.csv");
  io::write_trials_csv(trials, table);
  auto agg = open_out(dir / "aggregate.csv");
  io::write_aggregate_csv(agg, table);
  for (const FilterSetting& s : cfg.filters) {
    auto plot = open_out(dir / ("plot_" + s.name + ".csv"));
    io::write_plot_csv(plot, table, s.name);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blind extraction of external equitable partitions from low-pass graph signals", "blindeep"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--config", g.config, "JSON configuration for the subcommand");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Sample a planted instance with a known EEP");
  generate->add_option("--sizes", gen.sizes, "Cell sizes")->delimiter(',');
  generate->add_option("--b", gen.b, "Cross-cell degrees, rows separated by ';'");
  generate->add_option("--p-intra", gen.p_intra, "Intra-cell edge probability (one or per cell)")->delimiter(',');

  SignalsArgs sig;
  CLI::App* signals = app.add_subcommand("signals", "Sample filtered graph signals on an instance");
  signals->add_option("--instance,instance", sig.instance, "Instance JSON or edge list")->required();
  signals->add_option("--m", sig.m, "Number of samples")->required()->check(CLI::PositiveNumber);
  signals->add_option("--noise", sig.noise, "Noise variance")->check(CLI::NonNegativeNumber);
  signals->add_option("--kind", sig.kind, "Filter kind")->check(CLI::IsMember({"heat", "iir", "poly"}));
  signals->add_option("--sigma", sig.sigma, "Heat filter strength");
  signals->add_option("--alpha", sig.alpha, "IIR filter strength");
  signals->add_option("--coeffs", sig.coeffs, "Polynomial coefficients, constant first")->delimiter(',');
  signals->add_flag("--scale-dmax", sig.scale_dmax, "Divide the filter strength by the maximum degree");
  signals->add_option("--encoding", sig.encoding, "Signal file encoding")->check(CLI::IsMember({"csv", "bin"}));

  ExtractArgs ext;
  CLI::App* extract = app.add_subcommand("extract", "Recover a partition from observed signals");
  extract->add_option("--signals,signals", ext.signals, "Signals file (.csv, .bin or .json)")->required();
  extract->add_option("--r", ext.r, "Number of cells");
  extract->add_option("--solver", ext.solver, "kmeans, psnmf or penalty");
  extract->add_option("--instance", ext.instance, "Instance with ground-truth cells");
  extract->add_option("--partition", ext.partition, "Ground-truth partition JSON");

  VerifyArgs ver;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check whether a partition is an EEP");
  verify_cmd->add_option("--instance,instance", ver.instance, "Instance JSON or edge list")->required();
  verify_cmd->add_option("--partition,partition", ver.partition, "Partition JSON");

  BenchmarkArgs bench;
  CLI::App* benchmark = app.add_subcommand("benchmark", "Run a repeated extraction experiment");
  benchmark->add_option("--trials", bench.trials, "Override the number of trials")->check(CLI::PositiveNumber);
  benchmark->add_option("--threads", bench.threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  g.seed_given = app.count("--seed") > 0;

  try {
    if (*generate) return cmd_generate(g, gen, out);
    if (*signals) return cmd_signals(g, sig, out);
    if (*extract) return cmd_extract(g, ext, out, err);
    if (*verify_cmd) return cmd_verify(g, ver, out);
    if (*benchmark) return cmd_benchmark(g, bench, out, err);
  } catch (const NumericFailure& e) {
    err << "blindeep: numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const ParseError& e) {
    err << "blindeep: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "blindeep: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "blindeep: " << e.what() << '\n';
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    err << "blindeep: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "blindeep: numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}

}  // namespace blindeep::cli

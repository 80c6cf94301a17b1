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

#include "blindeep/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "blindeep/error.h"
#include "blindeep/rng.h"

namespace blindeep {

GroundTruth GroundTruth::from_instance(const Graph& g, const Partition& truth) {
  GroundTruth gt;
  gt.truth = truth;
  gt.structural_vectors = structural_eigenvectors(quotient(g, truth), truth).vectors;
  return gt;
}

ExtractionResult be_eeps_from_covariance(const Eigen::MatrixXd& covariance, int r,
                                         const SolverConfig& solver, const GroundTruth* truth) {
  if (r >= covariance.rows()) throw InvalidArgument("be_eeps: need r < n");
  ExtractionResult out;
  out.eigenspace = top_r(eig_sym(covariance), r);
  if (out.eigenspace.boundary_tie) {
    out.warnings.push_back("degenerate eigengap: xi_r and xi_{r+1} coincide within 1e-12");
  }
  out.solver = solve(ProblemInstance::from_vectors(out.eigenspace.vectors), solver);
  for (const auto& note : out.solver.notes) {
    if (note.find("stalled") != std::string::npos) out.warnings.push_back(note);
  }
  out.h_hat = out.solver.h_hat;
  out.partition = partition_from_indicator(out.h_hat.binary);
  if (truth != nullptr) out.eval = evaluate(out.partition, truth->truth, truth->structural_vectors);
  return out;
}

ExtractionResult be_eeps(const SignalBatch& signals, int r, const SolverConfig& solver,
                         const GroundTruth* truth) {
  return be_eeps_from_covariance(sample_covariance(signals).matrix, r, solver, truth);
}

GraphFilter FilterSetting::resolve(int max_degree) const {
  if (!scale_by_dmax) return filter;
  if (max_degree <= 0) throw InvalidArgument("filter scaling needs a graph with edges");
  const double d = static_cast<double>(max_degree);
  switch (filter.kind) {
    case GraphFilter::Kind::kHeat:
      return GraphFilter::heat(filter.sigma_f / d);
    case GraphFilter::Kind::kIir:
      return GraphFilter::iir(filter.alpha / d);
    case GraphFilter::Kind::kPolynomial:
      break;
  }
  return filter;
}

void ExperimentConfig::validate() const {
  validate_planted_spec(instance);
  if (trials < 1) throw InvalidArgument("experiment: trials must be >= 1");
  if (r < 2) throw InvalidArgument("experiment: r must be >= 2");
  if (filters.empty()) throw InvalidArgument("experiment: no filters");
  if (m_list.empty()) throw InvalidArgument("experiment: empty m_list");
  if (solvers.empty()) throw InvalidArgument("experiment: no solvers");
  for (int m : m_list) {
    if (m < 1) throw InvalidArgument("experiment: sample sizes must be >= 1");
  }
  if (noise_var < 0.0) throw InvalidArgument("experiment: negative noise variance");
}

namespace {

std::vector<TrialRow> run_trial(const ExperimentConfig& cfg, int trial, const BenchmarkHooks& hooks) {
  const std::uint64_t instance_seed = cfg.fixed_instance
                                          ? derive_seed({cfg.seed, 1})
                                          : derive_seed({cfg.seed, 1, static_cast<std::uint64_t>(trial)});
  const PlantedInstance inst = generate_planted_eep(cfg.instance, instance_seed);
  const GroundTruth truth = GroundTruth::from_instance(inst.graph, inst.truth);
  const EigenDecomposition lap = eig_sym(laplacian(inst.graph));
  const int dmax = inst.graph.max_degree();

  std::vector<TrialRow> rows;
  for (std::size_t fi = 0; fi < cfg.filters.size(); ++fi) {
    const FilterSetting& setting = cfg.filters[fi];
    const FilterMatrix fm = build_filter_matrix(setting.resolve(dmax), lap);
    for (int m : cfg.m_list) {
      const std::uint64_t signal_seed =
          derive_seed({cfg.seed, 2, static_cast<std::uint64_t>(trial), fi,
                       static_cast<std::uint64_t>(m)});
      const SignalBatch batch = sample_observations(fm, m, cfg.noise_var, signal_seed, setting.name);
      const TopREigenspace space = top_r(eig_sym(sample_covariance(batch).matrix), cfg.r);
      const ProblemInstance problem = ProblemInstance::from_vectors(space.vectors);
      for (std::size_t si = 0; si < cfg.solvers.size(); ++si) {
        SolverConfig sc = cfg.solvers[si];
        sc.seed = derive_seed({cfg.seed, 3, sc.seed, static_cast<std::uint64_t>(trial), fi,
                               static_cast<std::uint64_t>(m), si});
        const SolverResult res = solve(problem, sc);
        if (hooks.on_result) hooks.on_result(res);
        TrialRow row;
        row.solver = res.solver_id;
        row.filter = setting.name;
        row.m = m;
        row.trial = trial;
        row.seed = signal_seed;
        row.eval = evaluate(res.partition(), truth.truth, truth.structural_vectors);
        row.iterations = res.iterations;
        row.objective = res.objective;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace

BenchmarkTable run_benchmark(const ExperimentConfig& cfg, const BenchmarkHooks& hooks) {
  cfg.validate();
  std::vector<std::vector<TrialRow>> per_trial(cfg.trials);
  std::vector<std::string> errors(cfg.trials);
  std::vector<bool> failed(cfg.trials, false);

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < cfg.trials; t = next++) {
      try {
        per_trial[t] = run_trial(cfg, t, hooks);
      } catch (const std::exception& e) {
        failed[t] = true;
        errors[t] = "trial " + std::to_string(t) + ": " + e.what();
      }
    }
  };
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int threads = std::clamp(cfg.threads > 0 ? cfg.threads : hw, 1, cfg.trials);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  BenchmarkTable table;
  for (int t = 0; t < cfg.trials; ++t) {
    if (failed[t]) {
      ++table.failed_trials;
      table.failures.push_back(errors[t]);
      continue;
    }
    for (auto& row : per_trial[t]) table.trials.push_back(std::move(row));
  }

  const int r_true = static_cast<int>(cfg.instance.sizes.size());
  for (const auto& setting : cfg.filters) {
    for (int m : cfg.m_list) {
      for (const auto& sc : cfg.solvers) {
        AggregateRow agg;
        agg.solver = solver_name(sc.kind);
        agg.filter = setting.name;
        agg.m = m;
        std::vector<double> fc, gamma, matched;
        agg.mean_correct.assign(r_true, 0.0);
        agg.mean_incorrect.assign(r_true, 0.0);
        for (const auto& row : table.trials) {
          if (row.solver != agg.solver || row.filter != agg.filter || row.m != m) continue;
          fc.push_back(row.eval.cost_fc);
          gamma.push_back(row.eval.group_accuracy);
          matched.push_back(row.eval.matched_accuracy);
          for (int k = 0; k < r_true; ++k) {
            agg.mean_correct[k] += row.eval.per_cell[k].correct;
            agg.mean_incorrect[k] += row.eval.per_cell[k].incorrect;
          }
        }
        agg.count = static_cast<int>(fc.size());
        if (agg.count > 0) {
          agg.mean_fc = mean_of(fc);
          agg.mean_gamma = mean_of(gamma);
          agg.mean_matched = mean_of(matched);
          agg.stderr_fc = stderr_of(fc);
          agg.stderr_gamma = stderr_of(gamma);
          agg.stderr_matched = stderr_of(matched);
          for (int k = 0; k < r_true; ++k) {
            agg.mean_correct[k] /= agg.count;
            agg.mean_incorrect[k] /= agg.count;
          }
        }
        table.rows.push_back(std::move(agg));
      }
    }
  }
  return table;
}

VerifyReport verify(const Graph& g, const Partition& p) {
  VerifyReport rep;
  rep.check = is_eep(g, p);
  if (rep.check.is_eep) rep.quotient = quotient(g, p);
  return rep;
}

std::string format_verify(const VerifyReport& report) {
  std::ostringstream os;
  if (report.check.is_eep) {
    os << "EEP: yes\n";
    const Eigen::MatrixXi& l = report.quotient->laplacian;
    os << "quotient Laplacian:\n[";
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      os << (i == 0 ? "[" : " [");
      for (Eigen::Index j = 0; j < l.cols(); ++j) os << (j == 0 ? "" : ", ") << l(i, j);
      os << "]" << (i + 1 < l.rows() ? ",\n" : "");
    }
    os << "]\n";
  } else {
    const EepWitness& w = *report.check.witness;
    os << "EEP: no\n"
       << "witness: cell " << w.from_cell + 1 << " -> cell " << w.to_cell + 1 << ": vertex "
       << w.vertex_a + 1 << " has " << w.count_a << " neighbors, vertex " << w.vertex_b + 1
       << " has " << w.count_b << "\n";
  }
  return os.str();
}

}  // namespace blindeep

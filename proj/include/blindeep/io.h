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

#ifndef BLINDEEP_IO_H_
#define BLINDEEP_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "blindeep/graph.h"
#include "blindeep/pipeline.h"
#include "blindeep/signals.h"
#include "blindeep/solvers.h"

// File formats. Vertices are 1-indexed in every external format.
//
//   edge list      "u v" per line; blank lines and lines starting with '#'
//                  are skipped. n is the largest index unless given.
//   instance JSON  {"n": 11, "edges": [[1, 3], ...], "cells": [[1, 2], ...]}
//                  ("cells" optional)
//   partition JSON [[1, 2], [3, 4, 5], ...]
//   signals CSV    one sample y^l per row, n comma-separated values
//   signals binary u32 n, u32 m (little endian), then n*m float64 little
//                  endian, column-major (sample after sample)
namespace blindeep::io {

// Shortest decimal form that parses back to the same double.
std::string format_number(double x);

struct InstanceFile {
  Graph graph;
  std::optional<Partition> cells;
};

Graph read_edge_list(std::istream& in, std::optional<int> n = std::nullopt);
void write_edge_list(std::ostream& out, const Graph& g);

InstanceFile read_instance_json(std::istream& in);
void write_instance_json(std::ostream& out, const Graph& g, const Partition* cells = nullptr);
// Dispatches on the extension: ".json" is an instance, anything else an edge list.
InstanceFile load_instance(const std::filesystem::path& path);

Partition read_partition_json(std::istream& in, int n);
nlohmann::json partition_to_json(const Partition& p);
Partition load_partition(const std::filesystem::path& path, int n);

SignalBatch read_signals_csv(std::istream& in);
void write_signals_csv(std::ostream& out, const SignalBatch& batch);
SignalBatch read_signals_binary(std::istream& in);
void write_signals_binary(std::ostream& out, const SignalBatch& batch);
// ".bin" is binary, ".json" a list of samples, anything else CSV.
SignalBatch load_signals(const std::filesystem::path& path);

// {"kind": "heat"|"iir"|"poly", "sigma": .., "alpha": .., "coeffs": [..]},
// optionally "name" and "scale": "dmax".
FilterSetting filter_from_json(const nlohmann::json& j);
// {"solver": "kmeans"|"psnmf"|"penalty", "restarts", "max_iter", "tol",
//  "seed", "rho_schedule": [..]}; a bare string names the solver.
SolverConfig solver_from_json(const nlohmann::json& j);
PlantedSpec planted_from_json(const nlohmann::json& j);
ExperimentConfig experiment_from_json(const nlohmann::json& j);

// Parses JSON text, reporting syntax errors with their line number.
nlohmann::json parse_json(std::istream& in);
nlohmann::json load_json(const std::filesystem::path& path);

nlohmann::json eval_to_json(const EvalReport& rep);
nlohmann::json extraction_to_json(const ExtractionResult& res);

// Per-trial rows: solver,filter,m,seed,F_c,gamma,matched_acc,iters,objective
void write_trials_csv(std::ostream& out, const BenchmarkTable& table);
// Aggregates with per-cell correct/incorrect means.
void write_aggregate_csv(std::ostream& out, const BenchmarkTable& table);
// Plot-ready long format for one filter: m,solver,metric,mean,stderr
void write_plot_csv(std::ostream& out, const BenchmarkTable& table, const std::string& filter);
nlohmann::json benchmark_to_json(const BenchmarkTable& table);

}  // namespace blindeep::io

#endif  // BLINDEEP_IO_H_

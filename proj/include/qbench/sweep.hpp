#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbench/circuit.hpp"
#include "qbench/metrics.hpp"
#include "qbench/noise.hpp"
#include "qbench/target.hpp"
#include "qbench/transpiler.hpp"

namespace qbench {

struct SweepConfig {
  std::vector<Family> families{Family::QFT, Family::GHZ, Family::W};
  int n_min = 4;
  int n_max = 10;
  long long shots = 4096;
  std::vector<std::uint64_t> seeds{0};
  NoiseModel noise;
  HardwareTarget target;
  std::string output_dir;  // empty: keep rows in memory only
  bool dd = false;
};

struct SweepRow {
  Family family = Family::GHZ;
  int n = 0;
  std::uint64_t seed = 0;
  CircuitStats base;
  CircuitStats transpiled;
  MetricReport metrics;  // ideal vs noisy
  bool ok = false;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int failures = 0;
};

// build -> stats -> transpile -> stats -> ideal vs noisy -> metrics, one
// row per (family, n, seed). A failing row is recorded and the sweep
// continues. With an output_dir set, writes sweep.csv, sweep.json and one
// histogram JSON per row.
SweepResult run_sweep(const SweepConfig& cfg);

std::string sweep_csv(const std::vector<SweepRow>& rows);

enum class ReportKind { MetricsPlot, GateBreakdown, Tables };
void emit_report(const std::vector<SweepRow>& rows, ReportKind kind,
                 const std::string& out_dir);

struct CostRow {
  int n = 0;
  std::uint64_t classical_vectors = 0;   // 2^n
  std::uint64_t classical_fft_ops = 0;   // n * 2^n
  std::uint64_t classical_memory_bytes = 0;
  int quantum_qubits = 0;
  int quantum_qft_gates = 0;  // n + n(n-1)/2 + floor(n/2)
};

std::vector<CostRow> cost_table(int n_min, int n_max);
std::string cost_table_csv(const std::vector<CostRow>& rows);

}  // namespace qbench

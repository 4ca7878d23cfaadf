#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qbench/metrics.hpp"
#include "qbench/noise.hpp"
#include "qbench/sweep.hpp"

using namespace qbench;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << content;
  }
}

HardwareTarget resolve_target(const std::string& spec) {
  if (spec.empty() || spec == "eagle127") return eagle127();
  if (spec.rfind("heavyhex:", 0) == 0)
    return heavy_hex_lattice(std::stoi(spec.substr(9)));
  return load_target(spec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-circuit benchmarking toolkit"};
  app.require_subcommand(1);

  std::string family_s = "ghz", out_path, target_s, noise_path, layout_path;
  std::string opt_s = "fuse", eps_s;
  int n = 4, nmin = 1, nmax = 30;
  long long shots = 4096;
  std::uint64_t seed = 0;
  bool decompose = false, no_swaps = false, unboxed = false, add_measures = false;
  bool dd = false;
  std::vector<std::string> positional;

  auto* build = app.add_subcommand("build", "build a qft/ghz/w circuit");
  build->add_option("family", family_s, "qft | ghz | w")->required();
  build->add_option("n", n, "qubit count")->required();
  build->add_flag("--no-swaps", no_swaps, "omit the final qft swaps");
  build->add_flag("--unboxed", unboxed, "emit the raw qft gate body");
  build->add_flag("--measure", add_measures, "append barrier + measurements (w)");
  build->add_option("--out", out_path, "output circuit file");

  auto* stats = app.add_subcommand("stats", "structural statistics of a circuit");
  stats->add_option("circuit", positional, "circuit text file")->required();
  stats->add_flag("--decompose", decompose, "count composite bodies");

  auto* simulate_cmd = app.add_subcommand("simulate", "exact statevector");
  simulate_cmd->add_option("circuit", positional, "circuit text file")->required();
  simulate_cmd->add_option("--out", out_path, "output CSV file");

  auto* transpile_cmd =
      app.add_subcommand("transpile", "compile to the heavy-hex ISA");
  transpile_cmd->add_option("circuit", positional, "circuit text file")->required();
  transpile_cmd->add_option("--target", target_s,
                            "eagle127 | heavyhex:<d> | target json file");
  transpile_cmd->add_option("--seed", seed, "layout/routing seed");
  transpile_cmd->add_option("--opt", opt_s, "none | fuse");
  transpile_cmd->add_flag("--dd", dd, "insert dynamical-decoupling X-X pairs");
  transpile_cmd->add_option("--out", out_path,
                            "output circuit file (+ .layout.json sidecar)");

  auto* sample_cmd = app.add_subcommand("sample", "shot sampling");
  sample_cmd->add_option("circuit", positional, "circuit text file")->required();
  sample_cmd->add_option("--shots", shots, "shot count");
  sample_cmd->add_option("--seed", seed, "sampling seed");
  sample_cmd->add_option("--noise", noise_path,
                         "noise json; input must be a transpiled circuit");
  sample_cmd->add_option("--layout", layout_path, "layout sidecar json");
  sample_cmd->add_option("--out", out_path, "output counts json");

  auto* compare_cmd = app.add_subcommand("compare", "distribution metrics");
  compare_cmd->add_option("counts", positional, "two counts json files")
      ->expected(2)
      ->required();
  compare_cmd->add_option("--eps", eps_s, "kl smoothing epsilon");
  compare_cmd->add_option("--out", out_path, "output json file");

  auto* sweep_cmd = app.add_subcommand("sweep", "full benchmark sweep");
  std::string families_s = "qft,ghz,w", seeds_s = "0";
  sweep_cmd->add_option("--families", families_s, "comma-separated subset");
  sweep_cmd->add_option("--nmin", nmin, "lowest qubit count")->default_val(4);
  sweep_cmd->add_option("--nmax", nmax, "highest qubit count")->default_val(10);
  sweep_cmd->add_option("--shots", shots, "shots per run");
  sweep_cmd->add_option("--seeds", seeds_s, "comma-separated seed list");
  sweep_cmd->add_option("--noise", noise_path, "noise json file");
  sweep_cmd->add_option("--target", target_s, "target spec");
  sweep_cmd->add_flag("--dd", dd, "apply dynamical decoupling");
  sweep_cmd->add_option("--out", out_path, "output directory")->required();

  auto* cost_cmd = app.add_subcommand("cost", "classical vs quantum cost table");
  cost_cmd->add_option("--nmin", nmin, "lowest qubit count");
  cost_cmd->add_option("--nmax", nmax, "highest qubit count");
  cost_cmd->add_option("--out", out_path, "output CSV file");

  auto* mem_cmd = app.add_subcommand("mem", "statevector memory model");
  mem_cmd->add_option("n", n, "qubit count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) {
      const Family f = family_from_name(family_s);
      Circuit c;
      if (f == Family::QFT) {
        c = build_qft(n, !no_swaps, !unboxed);
      } else if (f == Family::GHZ) {
        c = build_ghz(n);
      } else {
        c = build_w(n);
        if (add_measures) c.measure_all();
      }
      emit(out_path, to_text(c));
    } else if (stats->parsed()) {
      const Circuit c = from_text(slurp(positional[0]));
      const CircuitStats st = circuit_stats(c, decompose);
      std::printf("depth %d\nwidth %d\ngates %d\nmeasurements %d\nbarriers %d\n",
                  st.depth, st.width, st.gates, st.measurements, st.barriers);
      for (const auto& [g, cnt] : st.gate_histogram)
        std::printf("gate %s %d\n", g.c_str(), cnt);
    } else if (simulate_cmd->parsed()) {
      const Circuit c = from_text(slurp(positional[0]));
      emit(out_path, statevector_to_csv(simulate(c)));
    } else if (transpile_cmd->parsed()) {
      const Circuit c = from_text(slurp(positional[0]));
      TranspileOptions opts;
      opts.seed = seed;
      opts.dd = dd;
      if (opt_s == "none")
        opts.optimization = OneQubitOpt::None;
      else if (opt_s != "fuse")
        throw std::runtime_error("unknown optimization level: " + opt_s);
      const TranspiledCircuit tc = transpile(c, resolve_target(target_s), opts);
      emit(out_path, to_text(tc.circuit));
      emit(out_path.empty() ? "" : out_path + ".layout.json",
           layout_to_json(tc.layout));
      const auto& st = tc.stats;
      std::fprintf(stderr,
                   "transpiled: depth %d width %d gates %d measurements %d\n",
                   st.depth, st.width, st.gates, st.measurements);
    } else if (sample_cmd->parsed()) {
      const Circuit c = from_text(slurp(positional[0]));
      if (noise_path.empty()) {
        emit(out_path, counts_to_json(sample_counts(simulate(c), shots, seed)));
      } else {
        NoiseModel nm = load_noise(noise_path);
        nm.seed = seed ? seed : nm.seed;
        TranspiledCircuit tc;
        tc.circuit = c;
        if (!layout_path.empty())
          tc.layout = layout_from_json(slurp(layout_path));
        emit(out_path, counts_to_json(noisy_sample(tc, nm, shots)));
      }
    } else if (compare_cmd->parsed()) {
      const CountsDistribution p = counts_from_json(slurp(positional[0]));
      const CountsDistribution q = counts_from_json(slurp(positional[1]));
      const double eps = eps_s.empty() ? -1 : std::stod(eps_s);
      const MetricReport r = compare(p, q, eps);
      char buf[320];
      std::snprintf(buf, sizeof buf,
                    "{\n  \"tvd\": %.12g,\n  \"kl\": %.12g,\n  \"js\": %.12g,\n"
                    "  \"hellinger\": %.12g,\n  \"support_union_size\": %d,\n"
                    "  \"smoothing_epsilon\": %.12g\n}\n",
                    r.tvd, r.kl, r.js, r.hellinger, r.support_union_size,
                    r.smoothing_epsilon);
      emit(out_path, buf);
    } else if (sweep_cmd->parsed()) {
      SweepConfig cfg;
      cfg.families.clear();
      std::stringstream fs(families_s);
      std::string item;
      while (std::getline(fs, item, ','))
        if (!item.empty()) cfg.families.push_back(family_from_name(item));
      cfg.n_min = nmin;
      cfg.n_max = nmax;
      cfg.shots = shots;
      cfg.seeds.clear();
      std::stringstream ss(seeds_s);
      while (std::getline(ss, item, ','))
        if (!item.empty()) cfg.seeds.push_back(std::stoull(item));
      if (!noise_path.empty()) cfg.noise = load_noise(noise_path);
      cfg.target = resolve_target(target_s);
      cfg.output_dir = out_path;
      cfg.dd = dd;
      const SweepResult res = run_sweep(cfg);
      if (!res.rows.empty()) {
        emit_report(res.rows, ReportKind::Tables, out_path);
        emit_report(res.rows, ReportKind::GateBreakdown, out_path);
        emit_report(res.rows, ReportKind::MetricsPlot, out_path);
      }
      std::printf("sweep: %zu rows, %d failed\n", res.rows.size(), res.failures);
      return res.failures > 0 ? 1 : 0;
    } else if (cost_cmd->parsed()) {
      emit(out_path, cost_table_csv(cost_table(nmin, nmax)));
    } else if (mem_cmd->parsed()) {
      std::printf("%llu bytes (%s)\n",
                  (unsigned long long)memory_required(n),
                  memory_gb_label(n).c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

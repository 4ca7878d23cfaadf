#include "qbench/sweep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace qbench {

namespace {

Circuit build_family(Family f, int n) {
  switch (f) {
    case Family::QFT: return build_qft(n, true, true);
    case Family::GHZ: return build_ghz(n);
    case Family::W: {
      Circuit c = build_w(n);
      c.measure_all();
      return c;
    }
  }
  throw std::logic_error("unknown family");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  if (cfg.shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (cfg.seeds.empty()) throw std::invalid_argument("need at least one seed");

  SweepResult res;
  const bool write = !cfg.output_dir.empty();
  if (write) std::filesystem::create_directories(cfg.output_dir);

  for (Family f : cfg.families) {
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
      for (std::uint64_t seed : cfg.seeds) {
        SweepRow row;
        row.family = f;
        row.n = n;
        row.seed = seed;
        try {
          const Circuit c = build_family(f, n);
          row.base = circuit_stats(c);
          TranspileOptions opts;
          opts.seed = seed;
          opts.dd = cfg.dd;
          const TranspiledCircuit tc = transpile(c, cfg.target, opts);
          row.transpiled = tc.stats;
          const CountsDistribution ideal = ideal_distribution(f, n);
          NoiseModel nm = cfg.noise;
          nm.seed = cfg.noise.seed ^ (seed * 0x9e3779b97f4a7c15ULL);
          const CountsDistribution noisy = noisy_sample(tc, nm, cfg.shots);
          row.metrics = compare(ideal, noisy);
          row.ok = true;
          if (write) {
            nlohmann::ordered_json h;
            h["family"] = family_name(f);
            h["n"] = n;
            h["seed"] = seed;
            h["ideal"] = nlohmann::json::parse(counts_to_json(ideal));
            h["noisy"] = nlohmann::json::parse(counts_to_json(noisy));
            char name[96];
            std::snprintf(name, sizeof name, "hist_%s_%d_seed%llu.json",
                          family_name(f), n, (unsigned long long)seed);
            write_file(cfg.output_dir + "/" + name, h.dump(2) + "\n");
          }
        } catch (const std::exception& e) {
          row.ok = false;
          row.error = e.what();
          res.failures++;
          std::fprintf(stderr, "sweep row %s n=%d seed=%llu failed: %s\n",
                       family_name(f), n, (unsigned long long)seed, e.what());
        }
        res.rows.push_back(std::move(row));
      }
    }
  }

  if (write) {
    write_file(cfg.output_dir + "/sweep.csv", sweep_csv(res.rows));
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : res.rows) {
      nlohmann::ordered_json o;
      o["family"] = family_name(r.family);
      o["n"] = r.n;
      o["seed"] = r.seed;
      o["ok"] = r.ok;
      if (!r.ok) {
        o["error"] = r.error;
      } else {
        o["base"] = {{"depth", r.base.depth}, {"width", r.base.width},
                     {"gates", r.base.gates}, {"measurements", r.base.measurements},
                     {"barriers", r.base.barriers}};
        o["transpiled"] = {{"depth", r.transpiled.depth},
                           {"width", r.transpiled.width},
                           {"gates", r.transpiled.gates},
                           {"measurements", r.transpiled.measurements},
                           {"barriers", r.transpiled.barriers},
                           {"gate_histogram", r.transpiled.gate_histogram}};
        o["metrics"] = {{"tvd", r.metrics.tvd}, {"kl", r.metrics.kl},
                        {"js", r.metrics.js}, {"hellinger", r.metrics.hellinger},
                        {"support_union_size", r.metrics.support_union_size},
                        {"smoothing_epsilon", r.metrics.smoothing_epsilon}};
      }
      j.push_back(std::move(o));
    }
    write_file(cfg.output_dir + "/sweep.json", j.dump(2) + "\n");
  }
  return res;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "family,n,seed,base_depth,base_width,base_gates,"
      "transp_depth,transp_width,transp_gates,tvd,kl,js,hellinger\n";
  for (const auto& r : rows) {
    if (!r.ok) continue;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s,%d,%llu,%d,%d,%d,%d,%d,%d,",
                  family_name(r.family), r.n, (unsigned long long)r.seed,
                  r.base.depth, r.base.width, r.base.gates, r.transpiled.depth,
                  r.transpiled.width, r.transpiled.gates);
    out += buf;
    out += fmt(r.metrics.tvd) + "," + fmt(r.metrics.kl) + "," +
           fmt(r.metrics.js) + "," + fmt(r.metrics.hellinger) + "\n";
  }
  return out;
}

namespace {

struct SvgPlot {
  std::string body;
  double width = 760, height = 480;
  double mleft = 70, mright = 170, mtop = 30, mbottom = 45;

  double px(double frac) const { return mleft + frac * (width - mleft - mright); }
  double py(double frac) const {
    return height - mbottom - frac * (height - mtop - mbottom);
  }
  std::string finish(const std::string& title) const {
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      fmt(width) + "\" height=\"" + fmt(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt(width / 2) +
           "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + title +
           "</text>\n";
    svg += body;
    svg += "</svg>\n";
    return svg;
  }
};

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf", "#aec7e8", "#ffbb78"};

}  // namespace

void emit_report(const std::vector<SweepRow>& rows, ReportKind kind,
                 const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<SweepRow> ok_rows;
  for (const auto& r : rows)
    if (r.ok) ok_rows.push_back(r);

  if (kind == ReportKind::Tables) {
    std::set<Family> fams;
    for (const auto& r : ok_rows) fams.insert(r.family);
    for (Family f : fams) {
      std::string csv =
          "circuit,depth,width,measurements,gates,barriers,n_qubits\n";
      std::set<int> seen;
      csv += "Quantum circuit,,,,,,\n";
      for (const auto& r : ok_rows)
        if (r.family == f && seen.insert(r.n).second) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%d,%d\n", r.n,
                        r.base.depth, r.base.width, r.base.measurements,
                        r.base.gates, r.base.barriers, r.n);
          csv += buf;
        }
      seen.clear();
      csv += "Transpiled quantum circuit,,,,,,\n";
      for (const auto& r : ok_rows)
        if (r.family == f && seen.insert(r.n).second) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%d,%d\n", r.n,
                        r.transpiled.depth, r.transpiled.width,
                        r.transpiled.measurements, r.transpiled.gates,
                        r.transpiled.barriers, r.transpiled.width - r.n);
          csv += buf;
        }
      std::ofstream(out_dir + "/table_" + family_name(f) + ".csv") << csv;
    }
    return;
  }

  if (ok_rows.empty())
    throw std::invalid_argument("report needs at least one successful row");

  if (kind == ReportKind::GateBreakdown) {
    // counts per family per gate type, summed over n and seeds
    std::map<Family, std::map<std::string, long long>> counts;
    for (const auto& r : ok_rows)
      for (const auto& [g, c] : r.transpiled.gate_histogram)
        counts[r.family][g] += c;
    std::set<std::string> gate_names;
    for (const auto& [f, m] : counts)
      for (const auto& [g, c] : m) gate_names.insert(g);

    std::string csv = "family";
    for (const auto& g : gate_names) csv += "," + g;
    csv += ",total\n";
    long long grand_max = 1;
    for (const auto& [f, m] : counts) {
      csv += family_name(f);
      long long total = 0;
      for (const auto& g : gate_names) {
        const long long c = m.count(g) ? m.at(g) : 0;
        csv += "," + std::to_string(c);
        total += c;
        grand_max = std::max(grand_max, c);
      }
      csv += "," + std::to_string(total) + "\n";
    }
    std::ofstream(out_dir + "/gate_breakdown.csv") << csv;

    SvgPlot plot;
    const int n_f = int(counts.size()), n_g = int(gate_names.size());
    int fi = 0;
    for (const auto& [f, m] : counts) {
      int gi = 0;
      for (const auto& g : gate_names) {
        const long long c = m.count(g) ? m.at(g) : 0;
        const double x0 = plot.px((fi * (n_g + 1) + gi) / double(n_f * (n_g + 1)));
        const double w = (plot.width - plot.mleft - plot.mright) /
                         double(n_f * (n_g + 1)) * 0.85;
        const double h = (c / double(grand_max)) *
                         (plot.height - plot.mtop - plot.mbottom);
        plot.body += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(plot.py(0) - h) +
                     "\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
                     "\" fill=\"" + kPalette[gi % 12] + "\"/>\n";
        if (fi == 0)
          plot.body += "<text x=\"" + fmt(plot.width - plot.mright + 10) +
                       "\" y=\"" + fmt(plot.mtop + 16 * (gi + 1)) +
                       "\" font-size=\"12\" fill=\"" + kPalette[gi % 12] +
                       "\">" + g + "</text>\n";
        ++gi;
      }
      plot.body += "<text x=\"" +
                   fmt(plot.px((fi * (n_g + 1) + n_g / 2.0) /
                               double(n_f * (n_g + 1)))) +
                   "\" y=\"" + fmt(plot.height - 20) +
                   "\" font-size=\"12\" text-anchor=\"middle\">" +
                   family_name(f) + "</text>\n";
      ++fi;
    }
    std::ofstream(out_dir + "/gate_breakdown.svg")
        << plot.finish("Transpiled gate-type breakdown");
    return;
  }

  // MetricsPlot: mean metric value per (family, n) over seeds, log-scale y
  std::map<std::pair<Family, int>, std::array<double, 4>> sums;
  std::map<std::pair<Family, int>, int> cnt;
  for (const auto& r : ok_rows) {
    auto& s = sums[{r.family, r.n}];
    s[0] += r.metrics.tvd;
    s[1] += r.metrics.kl;
    s[2] += r.metrics.js;
    s[3] += r.metrics.hellinger;
    cnt[{r.family, r.n}]++;
  }
  const char* metric_names[4] = {"tvd", "kl", "js", "hellinger"};
  const double floor_v = 1e-6, ceil_v = 10.0;
  auto yfrac = [&](double v) {
    v = std::clamp(v, floor_v, ceil_v);
    return (std::log10(v) - std::log10(floor_v)) /
           (std::log10(ceil_v) - std::log10(floor_v));
  };
  int n_lo = 1 << 30, n_hi = 0;
  std::set<Family> fams;
  for (const auto& [key, s] : sums) {
    fams.insert(key.first);
    n_lo = std::min(n_lo, key.second);
    n_hi = std::max(n_hi, key.second);
  }
  SvgPlot plot;
  // axes
  plot.body += "<line x1=\"" + fmt(plot.px(0)) + "\" y1=\"" + fmt(plot.py(0)) +
               "\" x2=\"" + fmt(plot.px(1)) + "\" y2=\"" + fmt(plot.py(0)) +
               "\" stroke=\"black\"/>\n";
  plot.body += "<line x1=\"" + fmt(plot.px(0)) + "\" y1=\"" + fmt(plot.py(0)) +
               "\" x2=\"" + fmt(plot.px(0)) + "\" y2=\"" + fmt(plot.py(1)) +
               "\" stroke=\"black\"/>\n";
  for (int e = -6; e <= 1; ++e) {
    const double fracy = yfrac(std::pow(10.0, e));
    plot.body += "<text x=\"" + fmt(plot.px(0) - 8) + "\" y=\"" +
                 fmt(plot.py(fracy) + 4) +
                 "\" font-size=\"10\" text-anchor=\"end\">1e" +
                 std::to_string(e) + "</text>\n";
  }
  for (int n = n_lo; n <= n_hi; ++n) {
    const double fx = n_hi > n_lo ? double(n - n_lo) / (n_hi - n_lo) : 0.5;
    plot.body += "<text x=\"" + fmt(plot.px(fx)) + "\" y=\"" +
                 fmt(plot.py(0) + 16) +
                 "\" font-size=\"10\" text-anchor=\"middle\">" +
                 std::to_string(n) + "</text>\n";
  }
  int series = 0;
  for (Family f : fams) {
    for (int mi = 0; mi < 4; ++mi) {
      std::string pts;
      for (int n = n_lo; n <= n_hi; ++n) {
        auto it = sums.find({f, n});
        if (it == sums.end()) continue;
        const double v = it->second[mi] / cnt[{f, n}];
        const double fx = n_hi > n_lo ? double(n - n_lo) / (n_hi - n_lo) : 0.5;
        pts += fmt(plot.px(fx)) + "," + fmt(plot.py(yfrac(v))) + " ";
      }
      plot.body += "<polyline fill=\"none\" stroke=\"" +
                   std::string(kPalette[series % 12]) + "\" points=\"" + pts +
                   "\"/>\n";
      plot.body += "<text x=\"" + fmt(plot.width - plot.mright + 10) +
                   "\" y=\"" + fmt(plot.mtop + 14 * (series + 1)) +
                   "\" font-size=\"11\" fill=\"" + kPalette[series % 12] +
                   "\">" + family_name(f) + " " + metric_names[mi] +
                   "</text>\n";
      ++series;
    }
  }
  std::ofstream(out_dir + "/metrics_plot.svg")
      << plot.finish("Simulator vs noisy-emulation divergence (log scale)");
}

std::vector<CostRow> cost_table(int n_min, int n_max) {
  if (n_min < 1 || n_max > 50 || n_min > n_max)
    throw std::out_of_range("cost table covers n in [1, 50]");
  std::vector<CostRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    CostRow r;
    r.n = n;
    r.classical_vectors = std::uint64_t(1) << n;
    r.classical_fft_ops = std::uint64_t(n) << n;
    r.classical_memory_bytes = std::uint64_t(16) << n;
    r.quantum_qubits = n;
    r.quantum_qft_gates = n + n * (n - 1) / 2 + n / 2;
    rows.push_back(r);
  }
  return rows;
}

std::string cost_table_csv(const std::vector<CostRow>& rows) {
  std::string out =
      "n,classical_vectors,classical_fft_ops,classical_memory_bytes,"
      "quantum_qubits,quantum_qft_gates\n";
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%llu,%llu,%llu,%d,%d\n", r.n,
                  (unsigned long long)r.classical_vectors,
                  (unsigned long long)r.classical_fft_ops,
                  (unsigned long long)r.classical_memory_bytes,
                  r.quantum_qubits, r.quantum_qft_gates);
    out += buf;
  }
  return out;
}

}  // namespace qbench

#include "qbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace qbench {

namespace {

// union support as paired probability vectors
void union_probs(const CountsDistribution& p, const CountsDistribution& q,
                 std::vector<double>& pv, std::vector<double>& qv) {
  double psum = 0, qsum = 0;
  for (const auto& [k, v] : p.entries) psum += v;
  for (const auto& [k, v] : q.entries) qsum += v;
  if (psum <= 0 || qsum <= 0)
    throw std::invalid_argument("metrics need nonempty distributions");
  std::map<std::string, std::pair<double, double>> u;
  for (const auto& [k, v] : p.entries) u[k].first = v / psum;
  for (const auto& [k, v] : q.entries) u[k].second = v / qsum;
  pv.clear();
  qv.clear();
  for (const auto& [k, pq] : u) {
    pv.push_back(pq.first);
    qv.push_back(pq.second);
  }
}

double default_eps(const CountsDistribution& p, const CountsDistribution& q) {
  const long long shots = std::max(p.shots, q.shots);
  return 1.0 / (10.0 * double(shots > 0 ? shots : 4096));
}

}  // namespace

double tvd(const CountsDistribution& p, const CountsDistribution& q) {
  std::vector<double> pv, qv;
  union_probs(p, q, pv, qv);
  double s = 0;
  for (size_t i = 0; i < pv.size(); ++i) s += std::abs(pv[i] - qv[i]);
  return 0.5 * s;
}

double kl_divergence(const CountsDistribution& p, const CountsDistribution& q,
                     double eps) {
  std::vector<double> pv, qv;
  union_probs(p, q, pv, qv);
  if (eps < 0) eps = default_eps(p, q);
  double pnorm = 1 + eps * double(pv.size());
  double qnorm = pnorm;
  double s = 0;
  for (size_t i = 0; i < pv.size(); ++i) {
    const double a = (pv[i] + eps) / pnorm;
    const double b = (qv[i] + eps) / qnorm;
    s += a * std::log2(a / b);
  }
  return std::max(0.0, s);
}

double js_divergence(const CountsDistribution& p, const CountsDistribution& q) {
  std::vector<double> pv, qv;
  union_probs(p, q, pv, qv);
  double s = 0;
  for (size_t i = 0; i < pv.size(); ++i) {
    const double m = 0.5 * (pv[i] + qv[i]);
    if (pv[i] > 0) s += 0.5 * pv[i] * std::log2(pv[i] / m);
    if (qv[i] > 0) s += 0.5 * qv[i] * std::log2(qv[i] / m);
  }
  return std::clamp(s, 0.0, 1.0);
}

double hellinger(const CountsDistribution& p, const CountsDistribution& q) {
  std::vector<double> pv, qv;
  union_probs(p, q, pv, qv);
  double bc = 0;
  for (size_t i = 0; i < pv.size(); ++i) bc += std::sqrt(pv[i] * qv[i]);
  return std::sqrt(std::max(0.0, 1.0 - bc));
}

MetricReport compare(const CountsDistribution& p, const CountsDistribution& q,
                     double eps) {
  std::vector<double> pv, qv;
  union_probs(p, q, pv, qv);
  MetricReport r;
  r.support_union_size = int(pv.size());
  r.smoothing_epsilon = eps < 0 ? default_eps(p, q) : eps;
  r.tvd = tvd(p, q);
  r.kl = kl_divergence(p, q, r.smoothing_epsilon);
  r.js = js_divergence(p, q);
  r.hellinger = hellinger(p, q);
  return r;
}

std::string metric_report_csv_row(const std::string& family, int n,
                                  long long shots, std::uint64_t seed,
                                  const MetricReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%d,%lld,%llu,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                family.c_str(), n, shots, (unsigned long long)seed, r.tvd, r.kl,
                r.js, r.hellinger, r.smoothing_epsilon);
  return buf;
}

}  // namespace qbench

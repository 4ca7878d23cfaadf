#pragma once

#include "qbench/statevector.hpp"

namespace qbench {

struct MetricReport {
  double tvd = 0;
  double kl = 0;         // bits
  double js = 0;         // bits, bounded by 1
  double hellinger = 0;
  int support_union_size = 0;
  double smoothing_epsilon = 0;
};

// All metrics normalize both inputs and work over the union support
// (missing keys read as 0). KL smooths every union cell of both sides by
// eps and renormalizes; eps < 0 selects the default 1/(10*shots), taking
// the larger shot count of the two inputs (4096 if both are probability
// views). Logarithms are base 2.

double tvd(const CountsDistribution& p, const CountsDistribution& q);
double kl_divergence(const CountsDistribution& p, const CountsDistribution& q,
                     double eps = -1);
double js_divergence(const CountsDistribution& p, const CountsDistribution& q);
double hellinger(const CountsDistribution& p, const CountsDistribution& q);
MetricReport compare(const CountsDistribution& p, const CountsDistribution& q,
                     double eps = -1);

std::string metric_report_csv_row(const std::string& family, int n,
                                  long long shots, std::uint64_t seed,
                                  const MetricReport& r);

}  // namespace qbench

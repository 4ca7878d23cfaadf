#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "qbench/metrics.hpp"

using namespace qbench;

namespace {

// Independent long-double oracle over the union support. Mirrors the
// documented semantics with its own arithmetic path: normalize, union,
// smooth (kl), base-2 logs.
struct Oracle {
  double tvd = 0, kl = 0, js = 0, hellinger = 0;
};

Oracle brute_force(const CountsDistribution& p, const CountsDistribution& q,
                   double eps) {
  std::map<std::string, std::pair<long double, long double>> u;
  long double ps = 0, qs = 0;
  for (const auto& [k, v] : p.entries) ps += v;
  for (const auto& [k, v] : q.entries) qs += v;
  for (const auto& [k, v] : p.entries) u[k].first = (long double)v / ps;
  for (const auto& [k, v] : q.entries) u[k].second = (long double)v / qs;

  Oracle o;
  long double tv = 0, bc = 0, js = 0, kl = 0;
  const long double norm = 1.0L + (long double)eps * u.size();
  for (const auto& [k, pq] : u) {
    const long double a = pq.first, b = pq.second;
    tv += std::abs(a - b);
    bc += std::sqrt(a * b);
    const long double m = (a + b) / 2;
    if (a > 0) js += a / 2 * std::log2(a / m);
    if (b > 0) js += b / 2 * std::log2(b / m);
    const long double as = (a + eps) / norm, bs = (b + eps) / norm;
    kl += as * std::log2(as / bs);
  }
  o.tvd = double(tv / 2);
  o.hellinger = double(std::sqrt(std::max(0.0L, 1.0L - bc)));
  o.js = double(js);
  o.kl = double(std::max(0.0L, kl));
  return o;
}

CountsDistribution random_dist(std::mt19937_64& rng, int universe,
                               bool as_counts) {
  CountsDistribution d;
  d.shots = 0;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double total = 0;
  for (int k = 0; k < universe; ++k) {
    if (uni(rng) < 0.35) continue;  // sparse support
    const double w = as_counts ? double(1 + rng() % 500) : uni(rng) + 1e-3;
    d.entries["k" + std::to_string(k)] = w;
    total += w;
  }
  if (d.entries.empty()) d.entries["k0"] = 1;
  if (as_counts) {
    d.shots = 0;
    for (const auto& [k, v] : d.entries) d.shots += (long long)v;
  }
  return d;
}

}  // namespace

TEST_CASE("all four metrics match a brute-force oracle on random pairs") {
  std::mt19937_64 rng(314159);
  for (int trial = 0; trial < 100; ++trial) {
    const bool counts = trial % 2 == 0;
    const CountsDistribution p = random_dist(rng, 12, counts);
    const CountsDistribution q = random_dist(rng, 12, counts);
    const double eps = 1e-4;
    const Oracle o = brute_force(p, q, eps);
    CAPTURE(trial);
    CHECK(std::abs(tvd(p, q) - o.tvd) < 1e-12);
    CHECK(std::abs(kl_divergence(p, q, eps) - o.kl) < 1e-12);
    CHECK(std::abs(js_divergence(p, q) - o.js) < 1e-12);
    CHECK(std::abs(hellinger(p, q) - o.hellinger) < 1e-12);
    const MetricReport r = compare(p, q, eps);
    CHECK(r.tvd == tvd(p, q));
    CHECK(r.kl == kl_divergence(p, q, eps));
    CHECK(r.js == js_divergence(p, q));
    CHECK(r.hellinger == hellinger(p, q));
    CHECK(r.smoothing_epsilon == eps);
  }
}

TEST_CASE("identical distributions sit at zero") {
  CountsDistribution p;
  p.entries = {{"00", 0.25}, {"01", 0.25}, {"10", 0.5}};
  CHECK(tvd(p, p) == 0.0);
  CHECK(js_divergence(p, p) < 1e-9);
  CHECK(hellinger(p, p) < 1e-9);
  CHECK(kl_divergence(p, p, 1e-6) < 1e-9);
}

TEST_CASE("disjoint distributions sit at the upper boundary") {
  CountsDistribution p, q;
  p.entries = {{"00", 0.5}, {"01", 0.5}};
  q.entries = {{"10", 0.3}, {"11", 0.7}};
  CHECK(std::abs(tvd(p, q) - 1.0) < 1e-9);
  CHECK(std::abs(hellinger(p, q) - 1.0) < 1e-9);
  CHECK(std::abs(js_divergence(p, q) - 1.0) < 1e-9);
}

TEST_CASE("hand-computed values") {
  CountsDistribution uniform4, point, uniform2;
  uniform4.entries = {{"00", 1}, {"01", 1}, {"10", 1}, {"11", 1}};
  point.entries = {{"00", 1}};
  uniform2.entries = {{"0", 1}, {"1", 1}};
  CountsDistribution point1;
  point1.entries = {{"0", 1}};

  CHECK(tvd(uniform4, point) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(hellinger(uniform2, point1) ==
        doctest::Approx(std::sqrt(1.0 - std::sqrt(0.5))).epsilon(1e-12));
  // KL(point || uniform2) -> 1 bit as the smoothing vanishes
  CHECK(kl_divergence(point1, uniform2, 1e-13) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("counts and probability views of the same histogram agree") {
  CountsDistribution counts, probs, other;
  counts.shots = 100;
  counts.entries = {{"0", 75}, {"1", 25}};
  probs.entries = {{"0", 0.75}, {"1", 0.25}};
  other.entries = {{"0", 0.5}, {"1", 0.5}};
  CHECK(std::abs(tvd(counts, other) - tvd(probs, other)) < 1e-15);
  CHECK(std::abs(hellinger(counts, other) - hellinger(probs, other)) < 1e-15);
}

TEST_CASE("kl is asymmetric, js is symmetric") {
  CountsDistribution p, q;
  p.entries = {{"a", 0.9}, {"b", 0.1}};
  q.entries = {{"a", 0.5}, {"b", 0.5}};
  CHECK(std::abs(kl_divergence(p, q, 1e-6) - kl_divergence(q, p, 1e-6)) > 1e-3);
  CHECK(std::abs(js_divergence(p, q) - js_divergence(q, p)) < 1e-15);
  CHECK(std::abs(tvd(p, q) - tvd(q, p)) < 1e-15);
  CHECK(std::abs(hellinger(p, q) - hellinger(q, p)) < 1e-15);
}

TEST_CASE("tvd, hellinger and sqrt(js) satisfy the triangle inequality") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const CountsDistribution a = random_dist(rng, 8, false);
    const CountsDistribution b = random_dist(rng, 8, false);
    const CountsDistribution c = random_dist(rng, 8, false);
    CAPTURE(trial);
    CHECK(tvd(a, c) <= tvd(a, b) + tvd(b, c) + 1e-9);
    CHECK(hellinger(a, c) <= hellinger(a, b) + hellinger(b, c) + 1e-9);
    CHECK(std::sqrt(js_divergence(a, c)) <=
          std::sqrt(js_divergence(a, b)) + std::sqrt(js_divergence(b, c)) + 1e-9);
  }
}

TEST_CASE("hellinger squared lower-bounds tvd; everything stays in range") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    const CountsDistribution p = random_dist(rng, 10, trial % 2 == 0);
    const CountsDistribution q = random_dist(rng, 10, trial % 2 == 0);
    const double h = hellinger(p, q);
    const double t = tvd(p, q);
    const double j = js_divergence(p, q);
    CAPTURE(trial);
    CHECK(h * h <= t + 1e-9);
    CHECK(t >= 0);
    CHECK(t <= 1);
    CHECK(h >= 0);
    CHECK(h <= 1);
    CHECK(j >= 0);
    CHECK(j <= 1);
    CHECK(kl_divergence(p, q) >= 0);
  }
}

TEST_CASE("the default smoothing follows the larger shot count") {
  CountsDistribution p, q;
  p.shots = 1000;
  p.entries = {{"0", 600}, {"1", 400}};
  q.shots = 4000;
  q.entries = {{"0", 2000}, {"1", 2000}};
  CHECK(compare(p, q).smoothing_epsilon ==
        doctest::Approx(1.0 / 40000.0).epsilon(1e-12));
  CountsDistribution pp, qq;
  pp.entries = {{"0", 0.5}, {"1", 0.5}};
  qq.entries = {{"0", 0.25}, {"1", 0.75}};
  CHECK(compare(pp, qq).smoothing_epsilon ==
        doctest::Approx(1.0 / 40960.0).epsilon(1e-12));
}

TEST_CASE("empty distributions are rejected") {
  CountsDistribution ok, empty;
  ok.entries = {{"0", 1}};
  CHECK_THROWS_AS(tvd(ok, empty), std::invalid_argument);
  CHECK_THROWS_AS(hellinger(empty, ok), std::invalid_argument);
  CHECK_THROWS_AS(kl_divergence(empty, empty), std::invalid_argument);
}

TEST_CASE("csv row formatting is stable") {
  MetricReport r;
  r.tvd = 0.25;
  r.kl = 0.5;
  r.js = 0.125;
  r.hellinger = 0.375;
  r.smoothing_epsilon = 1e-5;
  const std::string row = metric_report_csv_row("ghz", 4, 4096, 7, r);
  CHECK(row == "ghz,4,4096,7,0.25,0.5,0.125,0.375,1e-05\n");
}

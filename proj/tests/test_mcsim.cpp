#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rel/mcsim.hpp"
#include "rel/metrics.hpp"
#include "rel/rbd.hpp"
#include "rel/rng.hpp"

using namespace rel;

namespace {

SystemModel fading_series() {
  return SystemModel({{"pathloss", Exponential{1.0}},
                      {"shadowing", LogNormal{1.0, 2.0}},
                      {"multipath", Rayleigh{2.0}}},
                     RbdNode::series({RbdNode::leaf("pathloss"), RbdNode::leaf("shadowing"),
                                      RbdNode::leaf("multipath")}));
}

}  // namespace

TEST_CASE("one trial draws per component in declaration order and folds min/max") {
  const SystemModel nested({{"a", Exponential{1.0}},
                            {"b", Exponential{2.0}},
                            {"c", Rayleigh{1.0}},
                            {"d", LogNormal{0.0, 1.0}}},
                           RbdNode::parallel({
                               RbdNode::series({RbdNode::leaf("a"), RbdNode::leaf("b")}),
                               RbdNode::series({RbdNode::leaf("c"), RbdNode::leaf("d")}),
                           }));

  for (std::uint64_t stream = 0; stream < 64; ++stream) {
    CounterRng rng(123, stream);
    CounterRng mirror(123, stream);
    const double ta = nested.components()[0].dist.quantile(mirror.next_unit());
    const double tb = nested.components()[1].dist.quantile(mirror.next_unit());
    const double tc = nested.components()[2].dist.quantile(mirror.next_unit());
    const double td = nested.components()[3].dist.quantile(mirror.next_unit());
    const double expected = std::max(std::min(ta, tb), std::min(tc, td));
    CHECK(sample_system_tttf(nested, rng) == expected);
  }
}

TEST_CASE("series fails at the first component failure, parallel at the last") {
  const SystemModel series({{"a", Exponential{1.0}}, {"b", Rayleigh{2.0}}},
                           RbdNode::series({RbdNode::leaf("a"), RbdNode::leaf("b")}));
  const SystemModel parallel({{"a", Exponential{1.0}}, {"b", Rayleigh{2.0}}},
                             RbdNode::parallel({RbdNode::leaf("a"), RbdNode::leaf("b")}));
  for (std::uint64_t stream = 0; stream < 64; ++stream) {
    CounterRng r1(9, stream);
    CounterRng r2(9, stream);
    CounterRng mirror(9, stream);
    const double ta = series.components()[0].dist.quantile(mirror.next_unit());
    const double tb = series.components()[1].dist.quantile(mirror.next_unit());
    CHECK(sample_system_tttf(series, r1) == std::min(ta, tb));
    CHECK(sample_system_tttf(parallel, r2) == std::max(ta, tb));
  }
}

TEST_CASE("run validates its configuration") {
  const auto m = fading_series();
  const Grid grid(5.0, 10);
  CHECK_THROWS_AS(run(m, {0, 1, 65536}, grid), std::invalid_argument);
  CHECK_THROWS_AS(run(m, {100, 1, 0}, grid), std::invalid_argument);
}

TEST_CASE("a single sample yields zero standard error") {
  const auto m = fading_series();
  const auto r = run(m, {1, 77, 65536}, Grid(5.0, 10));
  CHECK(r.n_samples == 1);
  CHECK(r.std_error == 0.0);
  CounterRng rng(77, 0);
  CHECK(r.mean_tttf == sample_system_tttf(m, rng));
}

TEST_CASE("mean and standard error match a hand reduction") {
  const auto m = fading_series();
  const auto r = run(m, {4, 2024, 65536}, Grid(5.0, 10));

  std::vector<double> samples;
  for (std::uint64_t i = 0; i < 4; ++i) {
    CounterRng rng(2024, i);
    samples.push_back(sample_system_tttf(m, rng));
  }
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= 4.0;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double std_error = std::sqrt(ss / 3.0) / 2.0;

  CHECK(r.mean_tttf == mean);
  CHECK(r.std_error == std_error);
}

TEST_CASE("results are bit-identical across chunk sizes") {
  const auto m = fading_series();
  const Grid grid(5.0, 50);
  const std::uint64_t n = 10000;
  const auto a = run(m, {n, 42, 65536}, grid);
  const auto b = run(m, {n, 42, 7}, grid);
  const auto c = run(m, {n, 42, 1}, grid);
  const auto d = run(m, {n, 42, 10000}, grid);

  CHECK(a.mean_tttf == b.mean_tttf);
  CHECK(a.mean_tttf == c.mean_tttf);
  CHECK(a.mean_tttf == d.mean_tttf);
  CHECK(a.std_error == b.std_error);
  CHECK(a.std_error == c.std_error);
  CHECK(a.empirical_survival.values == b.empirical_survival.values);
  CHECK(a.empirical_survival.values == c.empirical_survival.values);
  CHECK(a.empirical_survival.values == d.empirical_survival.values);

  // and across repeated runs with the same seed
  const auto again = run(m, {n, 42, 65536}, grid);
  CHECK(a.mean_tttf == again.mean_tttf);
  CHECK(a.empirical_survival.values == again.empirical_survival.values);

  // a different seed must actually change the draw
  const auto other = run(m, {n, 43, 65536}, grid);
  CHECK(a.mean_tttf != other.mean_tttf);
}

TEST_CASE("empirical survival is a curve in [0,1], non-increasing") {
  const auto r = run(fading_series(), {5000, 7, 512}, Grid(6.0, 60));
  CHECK(r.empirical_survival.values.front() == 1.0);
  double prev = 1.0;
  for (double v : r.empirical_survival.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("simulation agrees with the analytic mean and curve") {
  const auto m = fading_series();
  const Grid grid(5.0, 100);
  const std::uint64_t n = 200000;
  const auto r = run(m, {n, 20240814, 65536}, grid);

  const auto analytic = mean_tttf(m);
  CHECK(std::abs(r.mean_tttf - analytic.value) < 3.0 * r.std_error);

  // pointwise binomial band at z = 3.89 (two-sided 1e-4), generous slack for
  // the multiplicity of 101 points
  int outside = 0;
  for (std::size_t i = 0; i < grid.points().size(); ++i) {
    const double p = m.survival(grid.points()[i]);
    const double band = 3.89 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    if (std::abs(r.empirical_survival.values[i] - p) > band + 1.0 / static_cast<double>(n)) {
      ++outside;
    }
  }
  CHECK(outside <= 1);
}

TEST_CASE("two-leaf folds reproduce the survival algebra") {
  const SystemModel series({{"a", Exponential{1.0}}, {"b", Rayleigh{2.0}}},
                           RbdNode::series({RbdNode::leaf("a"), RbdNode::leaf("b")}));
  const SystemModel parallel({{"a", Exponential{1.0}}, {"b", Rayleigh{2.0}}},
                             RbdNode::parallel({RbdNode::leaf("a"), RbdNode::leaf("b")}));
  const Grid grid(4.0, 40);
  const std::uint64_t n = 100000;
  const auto rs = run(series, {n, 5, 65536}, grid);
  const auto rp = run(parallel, {n, 6, 65536}, grid);

  for (std::size_t i = 0; i < grid.points().size(); ++i) {
    const double t = grid.points()[i];
    const double ra = std::exp(-t);
    const double rb = std::exp(-t * t / 8.0);
    const double p_series = ra * rb;
    const double p_parallel = 1.0 - (1.0 - ra) * (1.0 - rb);
    const double band_s = 4.0 * std::sqrt(p_series * (1.0 - p_series) / n) + 1e-5;
    const double band_p = 4.0 * std::sqrt(p_parallel * (1.0 - p_parallel) / n) + 1e-5;
    CHECK(std::abs(rs.empirical_survival.values[i] - p_series) <= band_s);
    CHECK(std::abs(rp.empirical_survival.values[i] - p_parallel) <= band_p);
  }
}

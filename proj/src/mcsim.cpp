#include "rel/mcsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rel {

namespace {

double fold(const RbdNode& node, const SystemModel& model, const std::vector<double>& times) {
  switch (node.kind()) {
    case RbdNode::Kind::Leaf:
      return times[model.component_index(node.component())];
    case RbdNode::Kind::Series: {
      double t = std::numeric_limits<double>::infinity();
      for (const auto& child : node.children()) {
        t = std::min(t, fold(child, model, times));
      }
      return t;
    }
    case RbdNode::Kind::Parallel: {
      double t = 0.0;
      for (const auto& child : node.children()) {
        t = std::max(t, fold(child, model, times));
      }
      return t;
    }
  }
  return 0.0;  // unreachable
}

}  // namespace

double sample_system_tttf(const SystemModel& model, CounterRng& rng) {
  std::vector<double> times;
  times.reserve(model.components().size());
  for (const auto& c : model.components()) {
    times.push_back(c.dist.sample(rng));
  }
  return fold(model.structure(), model, times);
}

McResult run(const SystemModel& model, const McConfig& cfg, const Grid& grid) {
  if (cfg.n_samples < 1) {
    throw std::invalid_argument("n_samples must be at least 1");
  }
  if (cfg.chunk_size < 1) {
    throw std::invalid_argument("chunk_size must be at least 1");
  }

  std::vector<double> tttf(cfg.n_samples);
  const std::uint64_t n_chunks = (cfg.n_samples + cfg.chunk_size - 1) / cfg.chunk_size;
  std::atomic<std::uint64_t> next_chunk{0};

  // Chunks only partition the index space; sample i is always stream i of
  // the seed, so which thread handles which chunk cannot change a value.
  auto worker = [&] {
    for (;;) {
      const std::uint64_t c = next_chunk.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      const std::uint64_t begin = c * cfg.chunk_size;
      const std::uint64_t end = std::min(begin + cfg.chunk_size, cfg.n_samples);
      for (std::uint64_t i = begin; i < end; ++i) {
        CounterRng rng(cfg.seed, i);
        tttf[i] = sample_system_tttf(model, rng);
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t n_workers = std::min<std::uint64_t>(hw, n_chunks);
  std::vector<std::future<void>> helpers;
  helpers.reserve(n_workers - 1);
  for (std::uint64_t w = 1; w < n_workers; ++w) {
    helpers.push_back(std::async(std::launch::async, worker));
  }
  worker();
  for (auto& h : helpers) h.get();

  // Reductions run sequentially in index order, never per-chunk, so the
  // floating-point sums are reproducible too.
  double sum = 0.0;
  for (double t : tttf) sum += t;
  const double mean = sum / static_cast<double>(cfg.n_samples);

  double std_error = 0.0;
  if (cfg.n_samples > 1) {
    double ss = 0.0;
    for (double t : tttf) ss += (t - mean) * (t - mean);
    std_error = std::sqrt(ss / static_cast<double>(cfg.n_samples - 1)) /
                std::sqrt(static_cast<double>(cfg.n_samples));
  }

  std::sort(tttf.begin(), tttf.end());
  SurvivalCurve curve{grid, {}};
  curve.values.reserve(grid.points().size());
  for (double t : grid.points()) {
    const auto above = tttf.end() - std::upper_bound(tttf.begin(), tttf.end(), t);
    curve.values.push_back(static_cast<double>(above) / static_cast<double>(cfg.n_samples));
  }
  return {mean, std_error, std::move(curve), cfg.n_samples};
}

}  // namespace rel

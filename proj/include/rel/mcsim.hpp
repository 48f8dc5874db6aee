#pragma once

#include <cstdint>

#include "rel/numerics.hpp"
#include "rel/rbd.hpp"
#include "rel/rng.hpp"

namespace rel {

struct McConfig {
  std::uint64_t n_samples;
  std::uint64_t seed;
  std::uint64_t chunk_size = 65536;
};

struct McResult {
  double mean_tttf;
  double std_error;
  SurvivalCurve empirical_survival;
  std::uint64_t n_samples;
};

/// One realized system TTTF: draws one lifetime per component in
/// declaration order (one uniform each), then folds the structure with
/// min over series children and max over parallel children.
double sample_system_tttf(const SystemModel& model, CounterRng& rng);

/// Runs cfg.n_samples independent trials. Sample i always draws from
/// CounterRng(cfg.seed, i), so the result is bit-identical for a fixed
/// seed no matter how the work is chunked across threads. std_error is
/// the sample standard deviation over sqrt(n); it is 0 for n = 1.
/// empirical_survival(t) is the fraction of realized TTTFs exceeding t.
McResult run(const SystemModel& model, const McConfig& cfg, const Grid& grid);

}  // namespace rel

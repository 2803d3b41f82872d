#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "urnlab/rational.hpp"
#include "urnlab/rng.hpp"
#include "urnlab/rule.hpp"

namespace urnlab {

struct SimConfig {
  Rule rule;
  int64_t n = 0;
  uint64_t steps = 0;
  uint64_t seed = 0;
  // Engaged: start from exactly this many black balls. Disengaged: each ball
  // is black with probability 1/2, independently.
  std::optional<int64_t> initial_count;
  uint64_t record_stride = 0;  // 0 = max(1, steps / 2048)
};

struct Trajectory {
  uint64_t record_stride = 1;
  std::vector<std::pair<uint64_t, int64_t>> samples;  // (step, black count)
  int64_t endpoint = 0;
};

// One step of the urn: draw k balls without replacement, recolor per the
// rule; the state is always the integer black count.
int64_t step(int64_t black_count, const Rule& r, int64_t n, SplitMix64& rng);

// Deterministic given the config (the run stream is derived from (seed, 0)).
Trajectory run(const SimConfig& cfg);

// As above with an explicit run index; run j of a batch uses the stream
// derived from (seed, j) and is independent of the other runs.
Trajectory run_indexed(const SimConfig& cfg, uint64_t run_index);

// Runs 0..runs-1 in parallel (capped by URNLAB_THREADS). Reordering or
// resizing the batch never changes an individual trajectory.
std::vector<Trajectory> run_batch(const SimConfig& cfg, uint64_t runs);

struct ConcentrationSummary {
  uint64_t runs = 0;
  uint64_t steps = 0;            // floor(c * n)
  double fraction_within = 0.0;  // endpoints with |X - alpha| <= epsilon
  double mean_endpoint = 0.0;    // mean endpoint proportion
  std::vector<int64_t> endpoints;
};

// Theorem-2-style experiment: `runs` independent simulations of floor(c*n)
// steps each; reports the fraction of endpoint proportions within epsilon of
// the rule's computed number. Runs execute in parallel (capped by
// URNLAB_THREADS); aggregation is order-independent.
ConcentrationSummary concentration_experiment(const Rule& r, int64_t n, const Rational& c,
                                              uint64_t runs, double epsilon, uint64_t seed,
                                              std::optional<int64_t> initial_count = std::nullopt);

// Worker cap used by batch simulation and rule enumeration: URNLAB_THREADS
// when set (>=1), otherwise the hardware concurrency.
unsigned worker_threads();

}  // namespace urnlab

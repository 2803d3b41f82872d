#include "urnlab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

#include "urnlab/drift.hpp"
#include "urnlab/errors.hpp"

namespace urnlab {

unsigned worker_threads() {
  if (const char* env = std::getenv("URNLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace {

void run_parallel(size_t jobs, const std::function<void(size_t)>& body) {
  const unsigned workers = std::min<size_t>(worker_threads(), jobs);
  if (workers <= 1) {
    for (size_t j = 0; j < jobs; ++j) body(j);
    return;
  }
  std::atomic<size_t> counter{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t j = counter.fetch_add(1);
        if (j >= jobs) return;
        body(j);
      }
    });
  }
  for (auto& t : pool) t.join();
}

void validate(const SimConfig& cfg) {
  if (cfg.n < cfg.rule.k)
    throw ValidationError("simulation requires k <= n (k = " + std::to_string(cfg.rule.k) +
                          ", n = " + std::to_string(cfg.n) + ")");
  if (cfg.initial_count && (*cfg.initial_count < 0 || *cfg.initial_count > cfg.n))
    throw ValidationError("initial black count " + std::to_string(*cfg.initial_count) +
                          " outside [0, " + std::to_string(cfg.n) + "]");
}

// Each of the n balls black with probability 1/2: popcount of fair bits.
int64_t random_half_count(int64_t n, SplitMix64& rng) {
  int64_t count = 0;
  int64_t remaining = n;
  while (remaining >= 64) {
    count += std::popcount(rng.next());
    remaining -= 64;
  }
  if (remaining > 0) {
    uint64_t word = rng.next() >> (64 - remaining);
    count += std::popcount(word);
  }
  return count;
}

}  // namespace

int64_t step(int64_t black_count, const Rule& r, int64_t n, SplitMix64& rng) {
  // k sequential draws without replacement; exact, no floating point.
  int64_t blacks = black_count;
  int64_t total = n;
  int drawn_black = 0;
  for (int d = 0; d < r.k; ++d) {
    if (rng.next_below(static_cast<uint64_t>(total)) < static_cast<uint64_t>(blacks)) {
      ++drawn_black;
      --blacks;
    }
    --total;
  }
  return black_count - drawn_black + (r.recolors_black(drawn_black) ? r.k : 0);
}

Trajectory run_indexed(const SimConfig& cfg, uint64_t run_index) {
  validate(cfg);
  SplitMix64 rng = SplitMix64::stream(cfg.seed, run_index);
  int64_t count = cfg.initial_count ? *cfg.initial_count : random_half_count(cfg.n, rng);

  Trajectory traj;
  traj.record_stride = cfg.record_stride ? cfg.record_stride
                                         : std::max<uint64_t>(1, cfg.steps / 2048);
  traj.samples.emplace_back(0, count);
  for (uint64_t s = 1; s <= cfg.steps; ++s) {
    count = step(count, cfg.rule, cfg.n, rng);
    if (s % traj.record_stride == 0 || s == cfg.steps) traj.samples.emplace_back(s, count);
  }
  traj.endpoint = count;
  return traj;
}

Trajectory run(const SimConfig& cfg) { return run_indexed(cfg, 0); }

std::vector<Trajectory> run_batch(const SimConfig& cfg, uint64_t runs) {
  validate(cfg);
  std::vector<Trajectory> out(runs);
  run_parallel(runs, [&](size_t j) { out[j] = run_indexed(cfg, j); });
  return out;
}

ConcentrationSummary concentration_experiment(const Rule& r, int64_t n, const Rational& c,
                                              uint64_t runs, double epsilon, uint64_t seed,
                                              std::optional<int64_t> initial_count) {
  Rational steps_exact = c * Rational(static_cast<long>(n));
  Integer steps_floor = floor(steps_exact);
  if (steps_floor < 0) throw ValidationError("concentration_experiment: negative time");
  const uint64_t steps = steps_floor.get_ui();

  SimConfig cfg;
  cfg.rule = r;
  cfg.n = n;
  cfg.steps = steps;
  cfg.seed = seed;
  cfg.initial_count = initial_count;
  cfg.record_stride = std::max<uint64_t>(1, steps);  // endpoints only

  const double alpha = computed_number(r).to_double();

  ConcentrationSummary summary;
  summary.runs = runs;
  summary.steps = steps;
  summary.endpoints.assign(runs, 0);
  run_parallel(runs, [&](size_t j) {
    summary.endpoints[j] = run_indexed(cfg, j).endpoint;
  });

  uint64_t within = 0;
  double total = 0.0;
  for (int64_t endpoint : summary.endpoints) {
    const double x = static_cast<double>(endpoint) / static_cast<double>(n);
    total += x;
    if (std::abs(x - alpha) <= epsilon) ++within;
  }
  summary.fraction_within = runs ? static_cast<double>(within) / static_cast<double>(runs) : 0.0;
  summary.mean_endpoint = runs ? total / static_cast<double>(runs) : 0.0;
  return summary;
}

}  // namespace urnlab

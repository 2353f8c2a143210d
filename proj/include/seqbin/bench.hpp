#pragma once

#include <algorithm>
#include <chrono>
#include <ctime>
#include <stdexcept>
#include <vector>

#include "engines.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "legacy.hpp"
#include "propagator.hpp"

namespace seqbin {

// What a timing covers: the whole propagate() call, or only the engine's
// cost-set computation on the B-coherent instance.
enum class BenchScope { Propagate, CostSets };

enum class BenchClock { Wall, ThreadCpu };

// CPU time of the calling thread, in seconds. Wall time on shared hosts picks
// up other tenants; thread CPU time mostly does not.
inline double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + 1e-9 * static_cast<double>(ts.tv_nsec);
}

inline double clock_seconds(BenchClock clock) {
  if (clock == BenchClock::ThreadCpu) return thread_cpu_seconds();
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

// How one run condenses its calls: mean time per call, or the fastest single
// call. Interference only ever adds time, so the fastest call is the steadier
// estimate on a shared host.
enum class RunStat { Mean, Fastest };

// Seconds per call of `f`: median over `reps` runs, each run repeating the
// call until it lasts at least `min_run_seconds`.
template <class F>
double median_call_time(F&& f, int reps = 5, BenchClock clock = BenchClock::Wall, double min_run_seconds = 0.02,
                        RunStat stat = RunStat::Mean) {
  auto batch = [&](long calls) {
    const double t0 = clock_seconds(clock);
    for (long c = 0; c < calls; ++c) f();
    return clock_seconds(clock) - t0;
  };
  auto fastest = [&] {
    double best = 1e300, total = 0;
    do {
      const double t = batch(1);
      best = std::min(best, t);
      total += t;
    } while (total < min_run_seconds);
    return best;
  };
  std::vector<double> times;
  if (stat == RunStat::Fastest) {
    for (int r = 0; r < std::max(reps, 1); ++r) times.push_back(fastest());
  } else {
    long calls = 1;
    double t = batch(calls);
    while (t < min_run_seconds) {
      calls = std::max(calls * 2, static_cast<long>(calls * min_run_seconds / std::max(t, 1e-9)) + 1);
      t = batch(calls);
    }
    for (int r = 0; r < std::max(reps, 1); ++r) times.push_back(batch(calls) / static_cast<double>(calls));
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

// Returns a callable running `engine` on `inst` at the given scope. The
// instance is copied in; phase 1 runs once up front for CostSets.
inline auto bench_job(const Instance& inst, Engine engine, BenchScope scope, PropagateOptions opt = {}) {
  if (engine == Engine::Auto) engine = select_engine(inst);
  Instance subject = inst;
  if (scope == BenchScope::CostSets && engine != Engine::Legacy) {
    auto coherent = phase1_b_coherence(inst);
    if (!coherent) throw std::invalid_argument("benchmark instance has no B-coherent values");
    subject = std::move(*coherent);
  }
  return [subject = std::move(subject), engine, scope, opt, sink = 0L]() mutable {
    if (scope == BenchScope::Propagate || engine == Engine::Legacy) {
      sink += propagate(subject, engine, opt).iterations;
      return;
    }
    SweepOptions sweep;
    sweep.memoize = opt.memoize;
    long fallbacks = 0;
    switch (engine) {
      case Engine::Structured: sink += static_cast<long>(phase2_structured(subject, sweep, fallbacks).size()); break;
      case Engine::Convex: sink += static_cast<long>(phase2_convex(subject, sweep, fallbacks).size()); break;
      default: sink += static_cast<long>(pathdp(build_graph(subject)).size()); break;
    }
  };
}

// Median seconds per call of `engine` on `inst`.
inline double time_engine(const Instance& inst, Engine engine, int reps = 5,
                          BenchScope scope = BenchScope::Propagate, PropagateOptions opt = {},
                          BenchClock clock = BenchClock::Wall, RunStat stat = RunStat::Mean) {
  auto job = bench_job(inst, engine, scope, opt);
  return median_call_time(job, reps, clock, 0.02, stat);
}

}  // namespace seqbin

/*
 * Copyright (C) 2026 The DroidTrace Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Benchmarks the data-parallel kernels (per-app feature extraction and
// per-label incidence counting) against their serial reference
// implementations on a generated load-test corpus, and verifies both paths
// agree.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "droidtrace/corpusgen.hpp"
#include "droidtrace/feature_catalog.hpp"
#include "droidtrace/report.hpp"
#include "droidtrace/session.hpp"
#include "droidtrace/sim_device.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

template <typename F>
double time_ms(F&& fn, int repeats) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    auto t0 = Clock::now();
    fn();
    auto t1 = Clock::now();
    best = std::min(best, ms_between(t0, t1));
  }
  return best;
}

void strip_features(std::vector<droidtrace::SessionResult>& results) {
  for (auto& r : results) r.features.reset();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark parallel kernels against the serial reference"};
  std::uint32_t apps = 2000;
  std::uint32_t calls = 200;
  int repeats = 3;
  std::uint64_t seed = 7;
  app.add_option("--apps", apps, "Apps in the load-test corpus");
  app.add_option("--calls", calls, "Monitored calls per app");
  app.add_option("--repeats", repeats, "Timing repeats (best-of)");
  app.add_option("--seed", seed, "Corpus seed");
  CLI11_PARSE(app, argc, argv);

  auto catalog = droidtrace::default_catalog(
      droidtrace::load_signature_list(droidtrace::default_signature_list()));

  auto bundles = droidtrace::build_stress_corpus(apps, calls, catalog, seed);
  droidtrace::SimDevice device;
  auto corpus = droidtrace::stage_corpus(device, bundles);

  droidtrace::BatchConfig config;
  config.event_count = 0;
  config.catalog = nullptr;  // extraction is what we time
  auto t0 = Clock::now();
  auto results = run_batch(device, corpus, config);
  auto t1 = Clock::now();

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("corpus: %u apps x %u calls, %zu features, %d thread(s)\n", apps,
              calls, catalog.size(), threads);
  std::printf("session loop (always serial): %8.1f ms\n", ms_between(t0, t1));

  auto serial_results = results;
  double extract_serial = time_ms(
      [&] {
        strip_features(serial_results);
        droidtrace::attach_features_serial(serial_results, catalog);
      },
      repeats);
  auto parallel_results = results;
  double extract_parallel = time_ms(
      [&] {
        strip_features(parallel_results);
        droidtrace::attach_features(parallel_results, catalog);
      },
      repeats);

  bool extract_equal = true;
  for (std::size_t i = 0; i < serial_results.size(); ++i) {
    if (serial_results[i].features != parallel_results[i].features) {
      extract_equal = false;
      break;
    }
  }

  double incidence_serial = time_ms(
      [&] { droidtrace::incidence_counts_serial(serial_results, catalog); },
      repeats);
  double incidence_parallel = time_ms(
      [&] { droidtrace::incidence_counts(parallel_results, catalog); },
      repeats);
  bool incidence_equal =
      droidtrace::incidence_counts_serial(serial_results, catalog) ==
      droidtrace::incidence_counts(parallel_results, catalog);

  std::printf("extract   serial: %8.1f ms   parallel: %8.1f ms   speedup: %.2fx   equal: %s\n",
              extract_serial, extract_parallel,
              extract_serial / std::max(extract_parallel, 1e-9),
              extract_equal ? "yes" : "NO");
  std::printf("incidence serial: %8.1f ms   parallel: %8.1f ms   speedup: %.2fx   equal: %s\n",
              incidence_serial, incidence_parallel,
              incidence_serial / std::max(incidence_parallel, 1e-9),
              incidence_equal ? "yes" : "NO");

  return (extract_equal && incidence_equal) ? 0 : 1;
}

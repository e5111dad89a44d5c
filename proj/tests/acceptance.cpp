// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure.  Run directly or through `ctest -R acceptance`.

#include <cstdio>
#include <cstdlib>
#include <thread>

#include "gradenorm/suite.hpp"

int main() {
  int threads = 0;
  if (const char* env = std::getenv("GRADENORM_THREADS")) threads = std::atoi(env);
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw ? static_cast<int>(hw) : 1;
  }

  const gradenorm::SuiteReport report = gradenorm::run_acceptance_suite(threads);
  for (const auto& c : report.criteria)
    std::printf("criterion %d [%s] %s — %s (%.2f s)\n", c.id, c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.detail.c_str(), c.seconds);
  const bool ok = report.all_pass();
  std::printf("acceptance: %zu/%zu criteria passed\n",
              static_cast<std::size_t>(
                  std::count_if(report.criteria.begin(), report.criteria.end(),
                                [](const auto& c) { return c.pass; })),
              report.criteria.size());
  return ok ? 0 : 1;
}

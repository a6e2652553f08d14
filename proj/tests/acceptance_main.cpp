// Integration gate: runs every acceptance criterion at its pinned
// tolerance and prints one line per criterion.

#include <cstdio>

#include "smcquad/acceptance.hpp"

int main() {
  const auto results = smcquad::acceptance::run_all();
  int failures = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failures;
    std::printf("[%s] criterion %2d: %s%s%s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.empty() ? "" : " -- ", r.detail.c_str());
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", results.size());
  return 0;
}

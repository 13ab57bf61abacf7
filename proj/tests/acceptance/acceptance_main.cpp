// Runs every reproduction criterion and prints one PASS/FAIL line each.
// Usage: cubepack_acceptance [--details] [--threads N] [ids...]
// Exit status is 1 when any criterion fails.

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include "cubepack/reproduce.hpp"

int main(int argc, char** argv) {
  cubepack::ReproductionOptions opt;
  bool details = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--details") == 0) {
      details = true;
    } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      opt.threads = static_cast<unsigned>(std::atoi(argv[++i]));
    } else {
      opt.only.push_back(std::atoi(argv[i]));
    }
  }

  int failed = 0;
  int passed = 0;
  cubepack::run_reproduction(opt, [&](const cubepack::CriterionResult& r) {
    // Failures always carry their details so the log explains them.
    const bool show = details || r.status == cubepack::CriterionStatus::kFail;
    std::cout << cubepack::format_result(r, show) << std::flush;
    if (r.status == cubepack::CriterionStatus::kFail) ++failed;
    if (r.status == cubepack::CriterionStatus::kPass) ++passed;
  });
  std::cout << passed << " passed, " << failed << " failed of " << cubepack::criterion_count() << "\n";
  return failed == 0 ? 0 : 1;
}

#ifndef CUBEPACK_REPRODUCE_HPP
#define CUBEPACK_REPRODUCE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cubepack {

enum class CriterionStatus { kPass, kFail, kSkip };

struct CriterionResult {
  int id = 0;
  std::string title;
  CriterionStatus status = CriterionStatus::kSkip;
  double seconds = 0;
  // One line per check, "ok ..." / "FAIL ..." / "info ...".
  std::vector<std::string> details;
};

struct ReproductionOptions {
  // Largest enumerated dimension; criteria needing more are skipped.
  int max_dim = 4;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  // Criteria to run (1..13); empty runs all.
  std::vector<int> only;
  int stochastic_seeds = 20;
  std::uint64_t stochastic_iterations = 100000;
  // Called with short progress messages during long steps.
  std::function<void(const std::string&)> progress;
};

int criterion_count();
std::string criterion_title(int id);

// Runs the selected criteria in order, calling on_result as each finishes.
std::vector<CriterionResult> run_reproduction(const ReproductionOptions& options,
                                              const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS  3  <title>  (12.3 s)" followed by indented detail lines.
std::string format_result(const CriterionResult& r, bool with_details = true);

}  // namespace cubepack

#endif  // CUBEPACK_REPRODUCE_HPP

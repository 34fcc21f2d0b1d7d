#include <cstdio>
#include <cstring>
#include <string>

#include "flatfront_acceptance/acceptance.hpp"

// Usage: acceptance [suite]   (paper-examples | sharpness | islands | all)
int main(int argc, char** argv) {
  using namespace flatfront::acceptance;
  Suite suite = Suite::kAll;
  if (argc > 1) {
    try {
      suite = parse_suite(argv[1]);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "%s\n", e.what());
      return 2;
    }
  }
  int failed = 0;
  for (int id : suite_criteria(suite)) {
    const CriterionResult r = run_criterion(id);
    std::printf("%s\n", format_line(r).c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

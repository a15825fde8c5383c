#include <cstdlib>
#include <iostream>

#include "acceptance.hpp"

// Prints one line per acceptance criterion; exits nonzero when any fails.
// Optional arguments restrict the run to the listed criterion ids.
int main(int argc, char** argv) {
  using namespace cmvspec::acceptance;
  SuiteOptions o;
  for (int i = 1; i < argc; ++i) o.criteria.push_back(std::atoi(argv[i]));
  o.on_result = [](const CriterionResult& r) { std::cout << format_line(r) << std::endl; };
  int failed = 0;
  for (const auto& r : run_suite(o)) failed += r.pass ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}

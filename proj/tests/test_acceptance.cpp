// The twelve acceptance criteria, one PASS/FAIL line each.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "ffspace/acceptance.hpp"

int main(int argc, char** argv) {
  ffspace::AcceptanceOptions o;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) o.quick = true;
    if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) o.seed = std::strtoull(argv[++i], nullptr, 10);
  }
  int failed = 0;
  ffspace::run_acceptance(o, [&](const ffspace::CriterionResult& r) {
    std::cout << ffspace::format_line(r) << std::endl;
    failed += !r.pass;
  });
  std::cout << (12 - failed) << " passed, " << failed << " failed" << std::endl;
  return failed == 0 ? 0 : 1;
}

// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>
#include <string>

#include "nonadditive/acceptance.hpp"

int main(int argc, char** argv) {
  namespace acc = nonadditive::acceptance;
  const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  int failed = 0;
  double total = 0.0;
  for (const auto& c : acc::criteria()) {
    const auto r = acc::evaluate(c);
    total += r.seconds;
    failed += !r.passed;
    std::printf("%s criterion %2d %-38s %7.3f s (budget %4.0f s)%s%s\n", r.passed ? "PASS" : "FAIL", r.number, r.title.c_str(), r.seconds,
                r.budget_seconds, (verbose || !r.passed) ? "  " : "", (verbose || !r.passed) ? r.detail.c_str() : "");
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed in %.3f s\n", 10 - failed, total);
  return failed ? 1 : 0;
}

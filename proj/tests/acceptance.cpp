#include <cstdio>
#include <cstdlib>
#include <string>

#include "tightmaps/verify.hpp"

using namespace tightmaps;

int main(int argc, char** argv) {
  VerifyOptions o;
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  for (auto& c : criteria()) {
    if (only && c.id != only) continue;
    CriterionResult r = run_criterion(c, o);
    std::printf("%s criterion %d: %s (%d checks, %.1fs)\n", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(), r.report.checked, r.seconds);
    if (!r.error.empty()) std::printf("  error: %s\n", r.error.c_str());
    for (auto& f : r.report.failures) std::printf("  failed: %s\n", f.c_str());
    std::fflush(stdout);
    all = all && r.pass();
  }
  return all ? 0 : 1;
}

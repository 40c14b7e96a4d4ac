// Runs every acceptance criterion and prints one line per criterion.
// Exit status 1 when any criterion fails; skipped criteria do not fail.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "copnum/verify/criteria.hpp"

int main(int argc, char** argv) {
  using namespace copnum::verify;
  auto options = default_criteria_options();
  std::vector<int> ids = criterion_ids();
  if (argc > 1) {
    ids.clear();
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  }
  int failed = 0;
  for (int id : ids) {
    const auto r = run_criterion(id, options);
    std::printf("%s\n", format_result(r).c_str());
    std::fflush(stdout);
    failed += r.status == Status::Fail;
  }
  std::printf("%d criteria failed\n", failed);
  return failed ? 1 : 0;
}

// Acceptance criteria c01-c06 (exact symbolic checks). One line per
// criterion; exit status is the number of failing checks.
#include <cstdio>

#include "treelab/verify.hpp"

int main() {
  int fails = 0;
  for (const auto& r : treelab::verify_symbolic()) {
    std::printf("%s\n", treelab::format_check_line(r).c_str());
    if (!r.pass) ++fails;
  }
  std::printf("symbolic criteria: %d failing\n", fails);
  return fails;
}

// Acceptance criteria c07-c13 (coalescent Monte Carlo). Seed defaults to 1;
// an optional argv[1] overrides it. Exit status is the number of failing
// checks.
#include <cstdio>
#include <cstdlib>

#include "treelab/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  int fails = 0;
  for (const auto& r : treelab::verify_coalescent(seed)) {
    std::printf("%s\n", treelab::format_check_line(r).c_str());
    if (!r.pass) ++fails;
  }
  std::printf("coalescent criteria (seed %llu): %d failing\n",
              (unsigned long long)seed, fails);
  return fails;
}

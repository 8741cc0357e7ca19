// One line per acceptance criterion; exits nonzero if any fails.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "infext/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20240601;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  bool ok = true;
  infext::verify_all(seed, [&](const infext::CriterionResult& r) {
    std::printf("%s criterion %d: %s (%.2fs) %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    ok = ok && r.passed;
  });
  return ok ? 0 : 1;
}

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails. An optional argument overrides the seed.

#include <cstdint>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 1;
    if (argc > 1) seed = std::stoull(argv[1]);
    std::cout << "acceptance seed " << seed << std::endl;
    auto results = oddwidth::acceptance::run_acceptance(seed, &std::cout);
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}

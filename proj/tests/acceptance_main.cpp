// Acceptance suite runner: prints one PASS/FAIL line per criterion and
// exits 0 iff every criterion holds at its stated tolerance.

#include "k3series/acceptance.hpp"

#include <cstdint>
#include <cstring>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    std::uint64_t seed = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::stoull(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--seed N]\n";
            return 2;
        }
    }
    bool ok = k3series::acceptance::run_all(seed, std::cout);
    return ok ? 0 : 1;
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <iomanip>
#include <iostream>

#include "pwh/suite.hpp"

int main() {
    const auto start = std::chrono::steady_clock::now();
    auto results = pwh::run_suite(pwh::acceptance_config(), &std::cerr);
    bool all = true;
    for (const auto& r : results) {
        std::cout << "criterion " << std::setw(2) << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.name
                  << ": " << r.detail << " [" << std::setprecision(3) << r.seconds << " s]\n";
        all = all && r.pass;
    }
    std::cout << "total " << std::setprecision(3)
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
    return all ? 0 : 1;
}

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pwh/verification.hpp"

namespace pwh {

// Which primes and sizes each numbered check runs over.
struct SuiteConfig {
    // exponential-sum oracles (checks 1, 2, 3)
    std::vector<i64> sum_primes{3, 5, 7};
    int gauss_level = 4;
    // Weil bound primes and Salie case-table primes (check 11)
    std::vector<i64> weil_primes{3, 5, 7, 11, 13};
    std::vector<i64> salie_primes{3, 5, 7};
    // stationary engine (check 12)
    std::vector<i64> stationary_primes{3, 5};
    int k_max = 6;
    // representation catalogues: (p, n_max). The first `identity_catalogues`
    // entries also feed the identity, route and Airy checks; the rest only the
    // bound sweeps.
    std::vector<std::pair<i64, int>> catalogues{{3, 6}, {5, 6}, {7, 4}};
    size_t identity_catalogues = 2;
    // sweep the ramified dihedral family over the other ramified extension too
    bool companion = true;
    double tolerance = 1e-8;
};

SuiteConfig acceptance_config();
// every check restricted to one prime and conductors up to n_max
SuiteConfig single_prime_config(i64 p, int n_max);

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// Runs checks 1..13 in order; progress lines go to `progress` when non-null.
std::vector<CheckResult> run_suite(const SuiteConfig& cfg, std::ostream* progress = nullptr);

}  // namespace pwh

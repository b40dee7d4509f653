#pragma once

#include "irqed/fock.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace irqed {

struct FockSuiteConfig {
    int cap = 14;
    int nodes = 3;
    double charge = 0.3;
    std::uint64_t seed = 1;
};

struct SuiteCheck {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct ConvergenceRow {
    int cap;
    double deviation;
};

struct FockSuiteReport {
    std::vector<SuiteCheck> checks;
    std::vector<ConvergenceRow> convergence;
    bool passed() const;
};

// Uniform doubles in [0, 1) from the top 53 bits of mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    Vec3 direction();

private:
    std::mt19937_64 gen_;
};

// Signed CCR, BCH, Weyl relations, displacement closed forms, number
// operator, T-map isometry and null map, and the displacement deviation
// against the cap.
FockSuiteReport run_fock_suite(const FockSuiteConfig& cfg);

}  // namespace irqed

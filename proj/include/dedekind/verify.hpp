#pragma once

#include <string>
#include <vector>

#include "dedekind/lattice.hpp"

namespace dedekind {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
    double seconds = 0.0;
};

struct CheckReport {
    std::vector<CheckResult> checks;
    bool all_ok() const {
        for (const auto& c : checks) {
            if (!c.ok) return false;
        }
        return true;
    }
};

// Runs every rank formula variant applicable to the base, asserts pairwise
// agreement and agreement with the stored reference counts, checks the class
// counts and the precision bound chain. quick allows base <= 4, full <= 5
// (a full base-5 run classifies D5's 7.8M intervals; bring hours).
CheckReport verify(int base, bool full, int jobs = 1);

// Deterministic invariant suite on fixed seeds: lattice axioms, canonical key
// stability under relabelings, the published small-class partitions, and the
// rank +4 oracle equivalence.
CheckReport selftest(int jobs = 1);

}  // namespace dedekind

#pragma once

#include <string_view>

#include "dedekind/bigint.hpp"

namespace dedekind {

// Reference counts d(0)..d(9), OEIS A000372. d(9) is stored as a verification
// constant only; recomputing it is far outside desk scale.
inline constexpr std::string_view kDedekindNumbers[10] = {
    "2",
    "3",
    "6",
    "20",
    "168",
    "7581",
    "7828354",
    "2414682040998",
    "56130437228687557907788",
    "286386577668298411128469151667598498812366",
};

inline BigCounter known_dedekind(int n) {
    if (n < 0 || n > 9) throw std::invalid_argument("known_dedekind: n out of range");
    return BigCounter::from_string(kDedekindNumbers[n]);
}

}  // namespace dedekind

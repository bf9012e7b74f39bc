#pragma once

#include <cstdint>

namespace weyl {

struct Budget {
    // O(K^2) kernel pair evaluations.
    std::uint64_t kernel_pairs = std::uint64_t{1} << 31;
    // Entries of a stored pair spectrum.
    std::uint64_t spectrum_entries = 200'010'000;

    // Defaults, with kernel_pairs taken from WEYL_LAB_BUDGET when set.
    static Budget from_env();
};

void charge(std::uint64_t amount, std::uint64_t limit, const char* what);

}  // namespace weyl

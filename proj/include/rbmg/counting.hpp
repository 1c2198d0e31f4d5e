#pragma once

#include <cstdint>

namespace rbmg {

/// Tally of scalar multiplications (one per nonzero-times-scalar product;
/// a complex multiply or divide counts as one). Index arithmetic and
/// additions are not counted. Kernels accept an optional pointer and leave
/// it untouched when null.
struct MulCounter {
    std::uint64_t value = 0;

    void add(std::uint64_t n) { value += n; }
};

inline void count(MulCounter* counter, std::uint64_t n) {
    if (counter) counter->add(n);
}

} // namespace rbmg

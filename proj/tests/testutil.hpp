#pragma once

#include <cmath>

namespace testutil {

inline double rel_err(double computed, double expected) {
    return std::abs(computed - expected) / std::max(std::abs(expected), 1e-300);
}

} // namespace testutil

#pragma once

#include <algorithm>
#include <cmath>

namespace sssched {

// Tolerance for every equality-style check on times, works and energies.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

// Snap applied before the exact threshold comparisons of the duration allocators.
inline constexpr double kSnap = 1e-12;

inline bool approx_equal(double a, double b, double rel = kRelTol) {
    return std::abs(a - b) <= std::max(kAbsTol, rel * std::max(std::abs(a), std::abs(b)));
}

inline bool approx_le(double a, double b, double rel = kRelTol) { return a <= b || approx_equal(a, b, rel); }

inline bool snapped_equal(double a, double b) {
    return std::abs(a - b) <= kSnap * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool snapped_ge(double a, double b) { return a >= b || snapped_equal(a, b); }

inline bool snapped_le(double a, double b) { return a <= b || snapped_equal(a, b); }

}  // namespace sssched

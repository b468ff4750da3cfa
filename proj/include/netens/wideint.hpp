#pragma once

#include <cmath>
#include <cstdint>

namespace netens {

// 128-bit accumulators keep ensemble statistics exact: integer sums are
// associative, so pooled results cannot depend on worker count or merge
// order. GCC/Clang builtin types.
using uint128 = unsigned __int128;
using int128 = __int128;

inline double to_double(uint128 v) {
    return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(v >> 64)), 64) +
           static_cast<double>(static_cast<std::uint64_t>(v));
}

inline double to_double(int128 v) {
    return v < 0 ? -to_double(static_cast<uint128>(-v)) : to_double(static_cast<uint128>(v));
}

// Fixed-point image of a double in [-1,1] at scale 2^62. ldexp by a power of
// two is exact, so the only rounding is the final llrint (error <= 2^-63 in
// value). Summing these images in int128 is exact integer arithmetic.
inline int128 to_fixed62(double x) {
    return static_cast<int128>(std::llrint(std::ldexp(x, 62)));
}

inline double from_fixed62(int128 v) { return std::ldexp(to_double(v), -62); }

}  // namespace netens

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>

namespace omapf {

using VertexId = int;
using Time = int;
using Cost = int;

// Sentinel for open-ended intervals and unreached costs. Strictly larger
// than any constraint time + |V| + horizon at desk scale; arithmetic on it
// saturates instead of overflowing.
inline constexpr Time kInfTime = std::numeric_limits<int>::max() / 4;
inline constexpr Cost kInfCost = kInfTime;

inline constexpr bool is_inf(Time t) { return t >= kInfTime; }

inline constexpr Time sat_add(Time a, Time b)
{
  return (is_inf(a) || is_inf(b)) ? kInfTime : std::min(a + b, kInfTime);
}

inline constexpr Time sat_dec(Time a) { return is_inf(a) ? kInfTime : a - 1; }

}  // namespace omapf

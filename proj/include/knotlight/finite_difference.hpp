#pragma once

#include "knotlight/spacetime.hpp"

#include <array>
#include <type_traits>

namespace knotlight {

inline constexpr double kDefaultStep = 1e-4;

/// Central difference of `f` along spacetime axis (0 = t, 1..3 = x, y, z).
template <class Fn>
auto central_difference(Fn&& f, const SpacetimePoint& pt, int axis, double h = kDefaultStep) {
  using Value = std::decay_t<decltype(f(pt))>;
  return Value((f(pt.shifted(axis, h)) - f(pt.shifted(axis, -h))) / (2.0 * h));
}

/// All four central differences (d/dt, d/dx, d/dy, d/dz).
template <class Fn>
auto spacetime_gradient(Fn&& f, const SpacetimePoint& pt, double h = kDefaultStep) {
  using Value = std::decay_t<decltype(f(pt))>;
  std::array<Value, 4> out;
  for (int mu = 0; mu < 4; ++mu) out[mu] = central_difference(f, pt, mu, h);
  return out;
}

}  // namespace knotlight

#pragma once

#include "dshock/model.hpp"
#include "dshock/riemann.hpp"

namespace dshock::test {

inline ModelParams sample_params() { return ModelParams(2.0, 1.0); }
inline RiemannData sample_data() { return {{1.9, 1.0}, {1.1, 1.1 / 1.9}}; }

// Exact rational values for the sample data: e0 = 120/361.
inline constexpr double kE0 = 120.0 / 361.0;
inline constexpr double kW1 = -0.04736842105263158;
inline constexpr double kW2L = 0.22299168975069253;
inline constexpr double kW2R = -0.10941828254847645;
inline constexpr double kTau10 = 2.0 * kE0 / 3.0;
inline constexpr double kTau20 = kE0 / 3.0;
inline constexpr double kKappa0 = kE0 / 6.0;

}  // namespace dshock::test

#pragma once

#include <map>

#include "dshock/viscous_profile.hpp"
#include "sample.hpp"

namespace dshock::test {

// Converged sample profiles, shot once per eps and shared across cases.
inline const ProfileResult& sample_profile(double eps) {
  static std::map<double, ProfileResult> cache;
  auto it = cache.find(eps);
  if (it == cache.end()) {
    const ModelParams p = sample_params();
    const RiemannData rd = sample_data();
    it = cache.emplace(eps, shoot(rd, p, eps, default_params(rd, p, eps))).first;
  }
  return it->second;
}

}  // namespace dshock::test

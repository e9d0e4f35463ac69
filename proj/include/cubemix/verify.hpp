#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cubemix {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Structural invariant suite over the cube model, rotation group and
// canonical indexing. Fast (no full enumeration); randomized parts draw from
// the given seed deterministically.
std::vector<CheckResult> model_invariant_checks(std::uint64_t seed = 20240801);

}  // namespace cubemix

#pragma once

#include <string>
#include <vector>

namespace bjlevel {

struct SelfCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The bundled battery of worked examples (l1, l-inf and Euclidean spaces).
std::vector<SelfCheck> run_selftest();

}  // namespace bjlevel

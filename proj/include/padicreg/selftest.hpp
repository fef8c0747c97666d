#pragma once

#include <string>
#include <vector>

namespace padicreg {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick invariant suite (seconds): one representative check per module.
std::vector<SelftestResult> run_selftest(unsigned seed = 20240611);

}  // namespace padicreg

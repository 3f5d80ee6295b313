#pragma once

#include <string>
#include <vector>

namespace tropwave {

struct SelftestCase {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The worked examples on the unit square: the wave step at (1/5, 1/2), the
/// canonical form of min(x, 1-x, y, 1-y, 1/3), the closed form of a wave from
/// zero, the run/render artifacts of the wave step, and the empty run.
std::vector<SelftestCase> run_selftest();

}  // namespace tropwave
